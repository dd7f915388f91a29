#pragma once

#include <vector>

#include "renormalist/rule.hpp"
#include "renormalist/tree.hpp"

namespace renormalist {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateConfig {
  Homogeneity gamma;
  long long node_budget = 200000;
};

// All isomorphism classes with homogeneity < gamma whose root node type is in
// `roots` and whose internal edges conform to `rule`. Deduplicated by
// canonical code, sorted. Throws BudgetError when the node budget is hit
// (non-equation-like or miscalibrated input).
std::vector<Tree> generate_trees(const Rule& rule, const std::vector<NodeType>& roots,
                                 const GenerateConfig& cfg);

// Root types taken from R(target_edge).
std::vector<Tree> generate_trees(const Rule& rule, int target_edge, const GenerateConfig& cfg);

// Planted sector for an edge type: graft(edge, T) for conforming T with
// |graft(edge,T)| < gamma, plus the iota placeholder single edge when defined.
std::vector<Tree> generate_solution_sector(const Rule& rule, int edge, const GenerateConfig& cfg);

// Minimal homogeneity of a planted tree over each edge type (the fixpoint of
// the same iteration subcriticality uses, without slack).
std::vector<Homogeneity> min_planted_degrees(const Rule& rule);

}  // namespace renormalist
