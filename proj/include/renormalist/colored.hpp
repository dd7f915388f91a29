#pragma once

#include "renormalist/subforest.hpp"

namespace renormalist {

// Colouring of a host tree by per-edge nesting depths (0 = uncoloured). The
// renormalisation group acts on depth <= 1 colourings; deeper levels appear
// in the potential-depth chains.
struct ColoredTree {
  Tree host;
  std::vector<int> depth;  // indexed by edge upper node; depth[0] ignored

  ColoredTree() = default;
  explicit ColoredTree(Tree h) : host(std::move(h)), depth(host.node_count(), 0) {}
  ColoredTree(Tree h, const EdgeIds& marks) : host(std::move(h)), depth(host.node_count(), 0) {
    for (int e : marks) depth.at(static_cast<size_t>(e)) = 1;
  }

  EdgeIds level_set(int n) const {
    EdgeIds out;
    for (int v = 1; v < host.node_count(); ++v)
      if (depth[v] >= n) out.push_back(v);
    return out;
  }
  EdgeIds marks() const { return level_set(1); }
  int max_depth() const {
    int m = 0;
    for (int v = 1; v < host.node_count(); ++v) m = std::max(m, depth[v]);
    return m;
  }
  bool fully_colored() const {
    for (int v = 1; v < host.node_count(); ++v)
      if (depth[v] < 1) return false;
    return true;
  }
};

// Every level set must be a subforest whose components are negative subtrees
// (all maximal edges of each component minus-type, component = span of them).
bool colored_admissible(const ColoredTree& t, const EdgeSystem& sys);

// Connected components of an edge set, each as a sorted edge list.
std::vector<EdgeIds> edge_components(const Tree& host, const EdgeIds& edges);

// \sqcup_-: increment the colour depth on F; requires marks(t) <= F.
ColoredTree color_union(const ColoredTree& t, const EdgeIds& forest_edges, const EdgeSystem& sys);

// Canonical code of a marked component of the host (component = edge subset
// with a unique top node); marks restricted to the component.
std::string colored_code(const Tree& host, const EdgeIds& component, const EdgeIds& marked);
inline std::string colored_code(const Tree& host, const EdgeIds& marked) {
  EdgeIds all;
  for (int v = 1; v < host.node_count(); ++v) all.push_back(v);
  return colored_code(host, all, marked);
}

// Potential depth of (host, marks): 0 iff fully coloured, else the maximal m
// with a chain marks = F_m << ... << F_0 = all edges inside the negative
// forests of the host, strict component condition relative to marks.
int potential_depth(const Tree& host, const EdgeSystem& sys, const EdgeIds& marks);

}  // namespace renormalist
