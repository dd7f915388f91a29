#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "renormalist/homogeneity.hpp"
#include "renormalist/labels.hpp"

namespace renormalist {

struct EdgeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EdgeClass { Plus, Zero, Minus };

inline const char* edge_class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::Plus: return "plus";
    case EdgeClass::Zero: return "zero";
    case EdgeClass::Minus: return "minus";
  }
  return "?";
}

struct EdgeType {
  std::string id;
  EdgeClass cls = EdgeClass::Zero;
  Homogeneity degree;
  int plus_label = -1;        // Plus: ind_+(e)_+
  int minus_label = -1;       // Plus/Minus: ind(e)_-
  MultiIndex zero_index;      // Zero: ind_0(e)
  int iota = -1;              // Plus: index of the Zero edge iota maps to
};

// Fixed alphabet of edge types over a label set, with the indexing maps and
// iota. Owns validation of the sign condition e in E_{sign|e|} and the
// ind_+(e)_- = ind_0(iota(e)) compatibility.
class EdgeSystem {
 public:
  LabelSet labels;

  int add(EdgeType e) {
    if (find(e.id) >= 0) throw EdgeError("duplicate edge type id: " + e.id);
    edges_.push_back(std::move(e));
    return static_cast<int>(edges_.size()) - 1;
  }

  int find(const std::string& id) const {
    for (size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].id == id) return static_cast<int>(i);
    return -1;
  }
  int require(const std::string& id) const {
    int i = find(id);
    if (i < 0) throw EdgeError("unknown edge type: " + id);
    return i;
  }
  const EdgeType& edge(int i) const { return edges_.at(static_cast<size_t>(i)); }
  int size() const { return static_cast<int>(edges_.size()); }

  bool is_plus(int i) const { return edge(i).cls == EdgeClass::Plus; }
  bool is_zero(int i) const { return edge(i).cls == EdgeClass::Zero; }
  bool is_minus(int i) const { return edge(i).cls == EdgeClass::Minus; }

  // Zero edges in the image of iota are the jet placeholders delta^{iota(k)}.
  bool is_iota_image(int i) const {
    for (const auto& e : edges_)
      if (e.cls == EdgeClass::Plus && e.iota == i) return true;
    return false;
  }
  int iota_preimage(int zero_edge) const {
    for (size_t j = 0; j < edges_.size(); ++j)
      if (edges_[j].cls == EdgeClass::Plus && edges_[j].iota == zero_edge)
        return static_cast<int>(j);
    return -1;
  }

  // ind(e)_- as a signed multi-index (Zero edges carry their full index).
  MultiIndex minus_index(int i) const {
    const EdgeType& e = edge(i);
    MultiIndex m;
    switch (e.cls) {
      case EdgeClass::Plus:
      case EdgeClass::Minus:
        m.add(e.minus_label, 1);
        break;
      case EdgeClass::Zero:
        m = e.zero_index;
        break;
    }
    return m;
  }

  void validate() const {
    std::vector<int> iota_targets;
    for (const auto& e : edges_) {
      Homogeneity z;
      switch (e.cls) {
        case EdgeClass::Plus:
          if (!(e.degree > z)) throw EdgeError("plus edge must have positive degree: " + e.id);
          if (e.plus_label < 0 || e.minus_label < 0)
            throw EdgeError("plus edge missing index pair: " + e.id);
          if (e.iota >= 0) {
            if (edge(e.iota).cls != EdgeClass::Zero)
              throw EdgeError("iota image must be a zero edge: " + e.id);
            iota_targets.push_back(e.iota);
            MultiIndex want;
            want.add(e.minus_label, 1);
            if (edge(e.iota).zero_index.red_star(labels) != want.red_star(labels))
              throw EdgeError("ind_+(e)_- != ind_0(iota(e)) for " + e.id);
          }
          break;
        case EdgeClass::Minus:
          if (!(e.degree < z)) throw EdgeError("minus edge must have negative degree: " + e.id);
          if (e.minus_label < 0) throw EdgeError("minus edge missing label: " + e.id);
          break;
        case EdgeClass::Zero:
          if (!(e.degree == z)) throw EdgeError("zero edge must have degree 0: " + e.id);
          break;
      }
    }
    std::sort(iota_targets.begin(), iota_targets.end());
    if (std::adjacent_find(iota_targets.begin(), iota_targets.end()) != iota_targets.end())
      throw EdgeError("iota restricted to plus edges must be injective");
  }

 private:
  std::vector<EdgeType> edges_;
};

// Node type: finite unordered multiset of edge types, kept sorted.
struct NodeType {
  std::vector<int> edges;  // sorted edge indices, repetitions allowed

  NodeType() = default;
  explicit NodeType(std::vector<int> e) : edges(std::move(e)) {
    std::sort(edges.begin(), edges.end());
  }
  void normalize() { std::sort(edges.begin(), edges.end()); }
  bool empty() const { return edges.empty(); }

  MultiIndex ind(const EdgeSystem& sys) const {
    MultiIndex m;
    for (int e : edges) m.add(sys.minus_index(e));
    return m.red_star(sys.labels);
  }

  friend bool operator==(const NodeType& a, const NodeType& b) { return a.edges == b.edges; }
  friend bool operator<(const NodeType& a, const NodeType& b) { return a.edges < b.edges; }

  std::string str(const EdgeSystem& sys) const {
    std::string out = "[";
    for (size_t i = 0; i < edges.size(); ++i) {
      if (i) out += ",";
      out += sys.edge(edges[i]).id;
    }
    return out + "]";
  }
};

}  // namespace renormalist
