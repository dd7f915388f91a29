#include "renormalist/second_homogeneity.hpp"

#include <set>

namespace renormalist {

namespace {

// planted branches hanging off a root-spanning subtree: every edge outside
// the span whose lower node lies in the span
std::vector<Tree> hanging_branches(const Tree& host, const EdgeIds& span) {
  std::set<int> eset(span.begin(), span.end());
  std::set<int> nodes{0};
  for (int e : span) {
    nodes.insert(e);
    nodes.insert(host.parent(e));
  }
  std::vector<Tree> out;
  for (int e = 1; e < host.node_count(); ++e) {
    if (eset.count(e)) continue;
    if (!nodes.count(host.parent(e))) continue;
    out.push_back(Tree::graft(host.edge_type(e), host.subtree(e)));
  }
  return out;
}

}  // namespace

Homogeneity SecondHomogeneity::alpha_lower(const Tree& t) {
  auto it = alpha_memo_.find(t.code());
  if (it != alpha_memo_.end()) return it->second;
  Homogeneity a = sector_regularity(t, sys_);
  alpha_memo_.emplace(t.code(), a);
  return a;
}

ExtHomogeneity SecondHomogeneity::norm(const Tree& t, const Homogeneity& delta0) {
  std::string key = t.code() + "@" + delta0.rational_part.str() + "|" + delta0.kappa_part.str();
  auto it = norm_memo_.find(key);
  if (it != norm_memo_.end()) return it->second;

  ExtHomogeneity result;
  if (t.edge_count() == 0) {
    result = ExtHomogeneity(Homogeneity::zero());
  } else if (t.edge_count() == 1) {
    EdgeClass c = sys_.edge(t.edge_type(1)).cls;
    if (c == EdgeClass::Zero) result = ExtHomogeneity(Homogeneity(delta0));
    else if (c == EdgeClass::Minus) result = ExtHomogeneity::inf();
    else {
      // planted over a bare node: item (3) with ||.|| of the single node = 0
      Homogeneity k = sys_.edge(t.edge_type(1)).degree;
      result = ExtHomogeneity(k < delta0 ? k : delta0);
    }
  } else if (t.is_planted()) {
    auto branch = t.branches().front();
    const Homogeneity k = sys_.edge(branch.edge).degree;
    ExtHomogeneity inner = norm(branch.child, delta0);
    Homogeneity inner_deg = tree_homogeneity(branch.child, sys_);
    if (inner.infinite && k + inner_deg < Homogeneity::zero()) {
      result = ExtHomogeneity::inf();
    } else if (inner.infinite) {
      result = ExtHomogeneity(delta0);
    } else {
      Homogeneity v = k + inner.value;
      result = ExtHomogeneity(v < delta0 ? v : delta0);
    }
  } else {
    // item (4): min over tau in {bullet} u {root-spanning negative subtrees}
    // of |tau| + sum_i alpha(G_i) + min(0, min_j(||G_j|| - alpha(G_j)))
    bool have = false;
    ExtHomogeneity best;
    auto consider = [&](const Homogeneity& tau_deg, const std::vector<Tree>& branches) {
      Homogeneity alpha_sum;
      for (const Tree& b : branches) alpha_sum += alpha_lower(b);
      ExtHomogeneity base(tau_deg + alpha_sum);
      if (!have || base < best) { best = base; have = true; }
      for (const Tree& b : branches) {
        ExtHomogeneity nb = norm(b, delta0);
        if (nb.infinite) continue;
        ExtHomogeneity cand(tau_deg + alpha_sum - alpha_lower(b) + nb.value);
        if (cand < best) best = cand;
      }
    };
    // tau = bullet: the root branches themselves
    {
      std::vector<Tree> branches;
      for (auto& b : t.branches()) branches.push_back(Tree::graft(b.edge, b.child));
      consider(Homogeneity::zero(), branches);
    }
    for (const EmbeddedSubtree& s : negative_subtrees_at_root(t, sys_)) {
      consider(tree_homogeneity(s.tree, sys_), hanging_branches(t, s.edges));
    }
    result = best;
  }
  norm_memo_.emplace(key, result);
  return result;
}

ExtHomogeneity SecondHomogeneity::norm_limit(const Tree& t) {
  auto it = limit_memo_.find(t.code());
  if (it != limit_memo_.end()) return it->second;

  ExtHomogeneity result;
  if (t.edge_count() == 0) {
    result = ExtHomogeneity(Homogeneity::zero());
  } else if (t.edge_count() == 1) {
    // zero edges grow like delta0, minus edges are literally infinite,
    // bare planted kernels cap at their degree
    EdgeClass c = sys_.edge(t.edge_type(1)).cls;
    if (c == EdgeClass::Plus) result = ExtHomogeneity(sys_.edge(t.edge_type(1)).degree);
    else result = ExtHomogeneity::inf();
  } else if (t.is_planted()) {
    auto branch = t.branches().front();
    ExtHomogeneity inner = norm_limit(branch.child);
    if (inner.infinite) result = ExtHomogeneity::inf();
    else result = ExtHomogeneity(sys_.edge(branch.edge).degree + inner.value);
  } else {
    bool have = false;
    ExtHomogeneity best;
    auto consider = [&](const Homogeneity& tau_deg, const std::vector<Tree>& branches) {
      Homogeneity alphas;
      for (const Tree& b : branches) alphas += alpha_lower(b);
      ExtHomogeneity base(tau_deg + alphas);
      if (!have || base < best) { best = base; have = true; }
      for (const Tree& b : branches) {
        ExtHomogeneity nb = norm_limit(b);
        if (nb.infinite) continue;
        ExtHomogeneity cand(tau_deg + alphas - alpha_lower(b) + nb.value);
        if (cand < best) best = cand;
      }
    };
    {
      std::vector<Tree> branches;
      for (auto& b : t.branches()) branches.push_back(Tree::graft(b.edge, b.child));
      consider(Homogeneity::zero(), branches);
    }
    for (const EmbeddedSubtree& s : negative_subtrees_at_root(t, sys_))
      consider(tree_homogeneity(s.tree, sys_), hanging_branches(t, s.edges));
    result = best;
  }
  limit_memo_.emplace(t.code(), result);
  return result;
}

}  // namespace renormalist
