#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "renormalist/edge_types.hpp"

namespace renormalist {

struct RuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A rule assigns to each plus edge a finite set of admissible node types;
// zero and minus edges always carry {()}.
class Rule {
 public:
  explicit Rule(const EdgeSystem* sys) : sys_(sys), table_(sys->size()) {}

  const EdgeSystem& system() const { return *sys_; }

  void add(int plus_edge, NodeType nu) {
    if (!sys_->is_plus(plus_edge))
      throw RuleError("rule entries only attach to plus edges: " + sys_->edge(plus_edge).id);
    nu.normalize();
    if (plus_edge >= static_cast<int>(table_.size())) table_.resize(plus_edge + 1);
    auto& set = table_[plus_edge];
    if (std::find(set.begin(), set.end(), nu) == set.end()) set.push_back(nu);
  }

  const std::vector<NodeType>& entries(int edge) const {
    static const std::vector<NodeType> kEmpty;
    return edge < static_cast<int>(table_.size()) ? table_[edge] : kEmpty;
  }

  // Rule axioms: R(e)={()} off plus edges (structural here) and ind(nu)=k_+
  // for each entry. Index checking is skipped for scalar systems where the
  // nonlinearity jet edges are suppressed (trivial bundles).
  void validate(bool check_indices = true) const {
    if (!check_indices) return;
    for (int k = 0; k < sys_->size(); ++k) {
      if (!sys_->is_plus(k)) continue;
      MultiIndex want;
      want.add(sys_->edge(k).plus_label, 1);
      want = want.red_star(sys_->labels);
      for (const NodeType& nu : entries(k)) {
        if (nu.ind(*sys_) != want)
          throw RuleError("rule entry " + nu.str(*sys_) + " has ind != k_+ for edge " +
                          sys_->edge(k).id);
      }
    }
  }

  bool same_entries(const Rule& o) const { return sorted() == o.sorted(); }

  std::vector<std::vector<NodeType>> sorted() const {
    auto t = table_;
    t.resize(static_cast<size_t>(sys_->size()));
    for (auto& v : t) std::sort(v.begin(), v.end());
    return t;
  }

 private:
  const EdgeSystem* sys_;
  std::vector<std::vector<NodeType>> table_;
};

struct EquationLikeWitness {
  int edge;
  NodeType node;
};

struct SubcriticalityConfig {
  Homogeneity floor = Homogeneity(Rational(-1000000));
  int step_budget_per_edge = 10;  // budget = this * |E|
};

struct SubcriticalityResult {
  bool subcritical = false;
  int steps = 0;
  std::map<int, Homogeneity> reg;  // per edge index, all classes
};

// Smallest normal rule containing r: closed under replacing any nonempty
// multiset of plus edges in an entry by their iota images.
Rule normalize_rule(const Rule& r);
bool is_normal(const Rule& r);

// True iff every entry has at most one zero edge outside the image of iota.
std::optional<EquationLikeWitness> equation_like_witness(const Rule& r);
inline bool is_equation_like(const Rule& r) { return !equation_like_witness(r).has_value(); }

// Monotone value iteration reg_{n+1}(k) = |k| + min_nu sum reg_n - kappa with
// reg = 0 on zero edges and reg = |e| on minus edges; absent if it drops below
// the floor or fails to stabilise within the step budget.
SubcriticalityResult is_subcritical(const Rule& r, const SubcriticalityConfig& cfg = {});

}  // namespace renormalist
