#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace renormalist {

struct LabelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Index set with a fixed-point-free involution *. Labels are declared in dual
// pairs; ids are dense ints, dual(dual(x)) == x and dual(x) != x always.
class LabelSet {
 public:
  int declare_pair(const std::string& name, const std::string& dual_name) {
    if (by_name_.count(name) || by_name_.count(dual_name))
      throw LabelError("label already declared: " + name + " / " + dual_name);
    if (name == dual_name) throw LabelError("involution must be fixed-point free: " + name);
    int a = static_cast<int>(names_.size());
    names_.push_back(name);
    names_.push_back(dual_name);
    dual_.push_back(a + 1);
    dual_.push_back(a);
    by_name_[name] = a;
    by_name_[dual_name] = a + 1;
    return a;
  }

  int id(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw LabelError("unknown label id: " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return by_name_.count(name) != 0; }
  int dual(int l) const { return dual_.at(static_cast<size_t>(l)); }
  const std::string& name(int l) const { return names_.at(static_cast<size_t>(l)); }
  int size() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::vector<int> dual_;
  std::map<std::string, int> by_name_;
};

// Signed multi-index over labels. Negative counts are understood through the
// identification -[l] = [l*]; red_star produces the canonical reduced form.
class MultiIndex {
 public:
  MultiIndex() = default;

  void add(int label, long long count) {
    if (count == 0) return;
    counts_[label] += count;
    if (counts_[label] == 0) counts_.erase(label);
  }
  void add(const MultiIndex& o) {
    for (auto& [l, c] : o.counts_) add(l, c);
  }
  void subtract(const MultiIndex& o) {
    for (auto& [l, c] : o.counts_) add(l, -c);
  }
  long long count(int label) const {
    auto it = counts_.find(label);
    return it == counts_.end() ? 0 : it->second;
  }
  bool empty() const { return counts_.empty(); }
  const std::map<int, long long>& counts() const { return counts_; }

  MultiIndex dual(const LabelSet& labels) const {
    MultiIndex out;
    for (auto& [l, c] : counts_) out.add(labels.dual(l), c);
    return out;
  }

  // red_*: per dual pair (l, l*) the reduced count is the signed net
  // s = c(l) - c(l*) placed on l (s>0) or l* (s<0). Handles signed input and
  // the sigma_l - sigma_l ^ sigma_{l*} reduction in one pass; idempotent.
  MultiIndex red_star(const LabelSet& labels) const {
    MultiIndex out;
    for (auto& [l, c] : counts_) {
      (void)c;
      int d = labels.dual(l);
      int lo = l < d ? l : d;
      int hi = l < d ? d : l;
      if (l != lo && counts_.count(lo)) continue;  // pair handled from lo
      long long net = count(lo) - count(hi);
      if (net > 0) out.add(lo, net);
      else if (net < 0) out.add(hi, -net);
    }
    return out;
  }

  bool is_reduced(const LabelSet& labels) const { return *this == red_star(labels); }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.counts_ == b.counts_; }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.counts_ < b.counts_; }

  std::string str(const LabelSet& labels) const {
    if (counts_.empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (auto& [l, c] : counts_) {
      if (!first) out += ", ";
      first = false;
      out += labels.name(l);
      if (c != 1) out += ":" + std::to_string(c);
    }
    return out + "}";
  }

 private:
  std::map<int, long long> counts_;
};

}  // namespace renormalist
