#pragma once

#include <vector>

#include "renormalist/tree.hpp"

namespace renormalist {

// An edge of a host tree is identified with its upper node (1..n-1).
using EdgeIds = std::vector<int>;  // sorted, unique

// Embedded subforest: parts are the edge sets of the components, each the
// minimal-subtree closure of a group of host edges; parts vertex-disjoint.
struct SubforestRef {
  std::vector<EdgeIds> parts;  // canonically sorted

  bool empty() const { return parts.empty(); }
  EdgeIds all_edges() const {
    EdgeIds out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  friend bool operator==(const SubforestRef& a, const SubforestRef& b) { return a.parts == b.parts; }
  friend bool operator<(const SubforestRef& a, const SubforestRef& b) { return a.parts < b.parts; }
};

EdgeIds negative_edge_ids(const Tree& host, const EdgeSystem& sys);

// Minimal connected edge set containing `edges` (closure by the connecting
// path edges; in a tree this is the Steiner closure).
EdgeIds minimal_subtree_edges(const Tree& host, const EdgeIds& edges);

// Extract a connected edge set as a standalone tree; `embedding` maps the
// standalone preorder nodes back to host nodes when non-null.
Tree extract_subtree(const Tree& host, const EdgeIds& edges);

struct EmbeddedSubtree {
  Tree tree;
  EdgeIds edges;
};

// All T_E for nonempty E contained in the minus-type edges.
std::vector<EmbeddedSubtree> negative_subtrees(const Tree& host, const EdgeSystem& sys);
// As above but restricted to subtrees containing the host root.
std::vector<EmbeddedSubtree> negative_subtrees_at_root(const Tree& host, const EdgeSystem& sys);
// All vertex-disjoint forests generated by partitions of subsets of the
// minus-type edges; includes the empty forest.
std::vector<SubforestRef> negative_forests(const Tree& host, const EdgeSystem& sys);

MultiIndex dif(const Tree& host, const EdgeSystem& sys, int node);

// C_+(T): antichains of plus/zero edges containing every zero edge.
std::vector<EdgeIds> positive_cuts(const Tree& host, const EdgeSystem& sys);
// T minus T_{>=E}: each cut subtree replaced by a single iota edge.
Tree cut_tree(const Tree& host, const EdgeSystem& sys, const EdgeIds& cut);
// alpha_lower(T) = min over cuts of |T \ F|.
Homogeneity sector_regularity(const Tree& host, const EdgeSystem& sys);

}  // namespace renormalist
