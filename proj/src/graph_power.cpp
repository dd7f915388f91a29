#include "renormalist/graph_power.hpp"

#include <algorithm>
#include <map>

namespace renormalist {

bool LabelledGraph::in_vstar(int v) const {
  return v == 0 || std::find(vstar.begin(), vstar.end(), v) != vstar.end();
}

void LabelledGraph::validate() const {
  if (vertex_count < 1) throw GraphError("graph needs at least the base vertex");
  if (vertex_count > 16) throw GraphError("subset enumeration guard: at most 16 vertices");
  if (!(s_norm > Rational(0))) throw GraphError("scaling norm must be positive");
  for (int v : vstar)
    if (v <= 0 || v >= vertex_count) throw GraphError("vstar vertex out of range");
  std::map<std::pair<int, int>, int> rsum;
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= vertex_count || e.to < 0 || e.to >= vertex_count ||
        e.from == e.to)
      throw GraphError("edge endpoints out of range");
    if (e.r != 0 && e.r != 1) throw GraphError("r labels must be 0 or 1");
    if (e.a < Rational(0)) throw GraphError("a labels must be nonnegative");
    if (e.r == 1 && (in_vstar(e.from) && in_vstar(e.to)))
      throw GraphError("r=1 edges may not connect distinguished vertices");
    if (e.r == 1 && (e.from == 0 || e.to == 0))
      throw GraphError("r=1 edges may not touch the base point");
    rsum[{e.from, e.to}] += e.r;
    if (rsum[{e.from, e.to}] > 1)
      throw GraphError("multiple r=1 edges between one vertex pair are rejected");
  }
}

namespace {

struct MergedEdge {
  int from, to;
  Rational a;
  int r;
};

std::vector<MergedEdge> merge_edges(const LabelledGraph& g) {
  std::map<std::pair<int, int>, MergedEdge> merged;
  for (const auto& e : g.edges) {
    auto key = std::make_pair(e.from, e.to);
    auto it = merged.find(key);
    if (it == merged.end()) merged[key] = {e.from, e.to, e.a, e.r};
    else {
      it->second.a += e.a;
      it->second.r += e.r;
    }
  }
  std::vector<MergedEdge> out;
  for (auto& [k, e] : merged) out.push_back(e);
  return out;
}

}  // namespace

GraphCheckResult check_assumptions(const LabelledGraph& g) {
  g.validate();
  auto edges = merge_edges(g);
  const int n = g.vertex_count;
  const Rational S = g.s_norm;

  auto subset_vertices = [&](unsigned mask) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) out.push_back(v);
    return out;
  };

  // condition-major sweep: report the first violating family
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto in = [&](int v) { return (mask & (1u << v)) != 0; };
    int size = static_cast<int>(subset_vertices(mask).size());
    if (in(0) || size < 2) continue;  // subsets of V_0, |.| >= 2
    Rational internal_a;
    for (const auto& e : edges)
      if (in(e.from) && in(e.to)) internal_a += e.a;
    Rational rhs = Rational(size - 1) * S;
    if (!(internal_a < rhs))
      return {false, GraphViolation{1, subset_vertices(mask), internal_a, rhs}};
  }

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto in = [&](int v) { return (mask & (1u << v)) != 0; };
    int size = static_cast<int>(subset_vertices(mask).size());
    if (!in(0) || size < 2) continue;  // subsets containing the base point
    Rational lhs;
    for (const auto& e : edges) {
      bool fin = in(e.from), tin = in(e.to);
      if (fin && tin) lhs += e.a;
      if (e.r <= 0) continue;
      if (fin && !tin) lhs += e.a + Rational(e.r) - Rational(1);  // outgoing
      if (!fin && tin) lhs -= Rational(e.r);                      // incoming
    }
    Rational rhs = Rational(size - 1) * S;
    if (!(lhs < rhs)) return {false, GraphViolation{2, subset_vertices(mask), lhs, rhs}};
  }

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto in = [&](int v) { return (mask & (1u << v)) != 0; };
    bool meets_star = false;
    for (int v = 0; v < n; ++v)
      if (in(v) && g.in_vstar(v)) meets_star = true;
    if (meets_star) continue;  // nonempty subsets of V \ Vstar
    Rational lhs;
    for (const auto& e : edges) {
      bool fin = in(e.from), tin = in(e.to);
      if (!fin && !tin) continue;
      bool incoming_pos = (!fin && tin) && e.r > 0;
      bool outgoing_pos = (fin && !tin) && e.r > 0;
      if (!incoming_pos) lhs += e.a;
      if (outgoing_pos) lhs += Rational(e.r);
      if (incoming_pos) lhs -= Rational(e.r) - Rational(1);
    }
    Rational rhs = Rational(static_cast<int>(subset_vertices(mask).size())) * S;
    if (!(lhs > rhs)) return {false, GraphViolation{3, subset_vertices(mask), lhs, rhs}};
  }
  return {true, std::nullopt};
}

Rational bound_exponent(const LabelledGraph& g) {
  g.validate();
  int internal = 0;
  for (int v = 0; v < g.vertex_count; ++v)
    if (!g.in_vstar(v)) ++internal;
  Rational sum;
  for (const auto& e : g.edges) sum += e.a;
  return Rational(internal) * g.s_norm - sum;
}

}  // namespace renormalist
