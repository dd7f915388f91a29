#pragma once

#include <string>
#include <vector>

#include "renormalist/edge_types.hpp"

namespace renormalist {

struct TreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Typed rooted tree in canonical (AHU) form. Nodes are 0..n-1 in preorder with
// node 0 the root; edge_type[i] is the type of the edge from parent[i] into i.
// Construction normalises sibling order by (edge type, subtree code), so two
// trees are isomorphic as typed rooted trees iff their codes are equal.
class Tree {
 public:
  Tree();  // the single-node tree
  static Tree single_edge(int edge_type);
  static Tree graft(int edge_type, const Tree& above);
  static Tree product(const std::vector<Tree>& factors);
  static Tree from_links(std::vector<int> parent, std::vector<int> edge_type);

  int node_count() const { return static_cast<int>(parent_.size()); }
  int edge_count() const { return node_count() - 1; }
  int parent(int v) const { return parent_.at(static_cast<size_t>(v)); }
  int edge_type(int v) const { return edge_type_.at(static_cast<size_t>(v)); }
  const std::vector<int>& parents() const { return parent_; }
  std::vector<std::vector<int>> children() const;

  const std::string& code() const { return code_; }
  bool operator==(const Tree& o) const { return code_ == o.code_; }
  bool operator<(const Tree& o) const { return code_ < o.code_; }

  // Root decomposition into (edge type, subtree above that edge).
  std::vector<struct TreeBranch> branches() const;
  Tree subtree(int v) const;  // subtree rooted at v (v's incoming edge dropped)

  bool is_planted() const;

 private:
  void canonicalize();
  std::vector<int> parent_;
  std::vector<int> edge_type_;
  std::string code_;
};

struct TreeBranch {
  int edge;
  Tree child;
};

Homogeneity tree_homogeneity(const Tree& t, const EdgeSystem& sys);
int count_edges_of_class(const Tree& t, const EdgeSystem& sys, EdgeClass cls);

// S_n per node (product of factorials of multiplicities of identical
// (edge type, subtree) pairs above n), aligned with node indices.
std::vector<long long> symmetry_factors_per_node(const Tree& t);
long long symmetry_factor(const Tree& t);
// Number of distinct plane representatives: prod_n deg(n)! / S_n.
long long plane_count(const Tree& t);

// Term syntax: tree := factor ('*' factor)*, factor := EDGEID ['(' tree ')'].
// A bare EDGEID is the single edge of that type.
Tree parse_tree_term(const EdgeSystem& sys, const std::string& term);
std::string tree_term(const Tree& t, const EdgeSystem& sys);

}  // namespace renormalist
