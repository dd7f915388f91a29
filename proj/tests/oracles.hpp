#pragma once

// Brute-force reference implementations, kept independent of the library's
// algorithmic paths: different enumeration mechanisms, no shared memoisation.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "renormalist/second_homogeneity.hpp"
#include "renormalist/subforest.hpp"
#include "renormalist/tree.hpp"

namespace renormalist::oracle {

// --- isomorphism by explicit bijection search --------------------------------

inline bool iso_search(const Tree& a, int u, const Tree& b, int v,
                       const std::vector<std::vector<int>>& ka,
                       const std::vector<std::vector<int>>& kb) {
  if (u != 0 && a.edge_type(u) != b.edge_type(v)) return false;
  const auto& cu = ka[u];
  const auto& cv = kb[v];
  if (cu.size() != cv.size()) return false;
  std::vector<int> perm(cv.begin(), cv.end());
  std::sort(perm.begin(), perm.end());
  do {
    bool ok = true;
    for (size_t i = 0; i < cu.size() && ok; ++i)
      ok = iso_search(a, cu[i], b, perm[i], ka, kb);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline bool isomorphic(const Tree& a, const Tree& b) {
  if (a.node_count() != b.node_count()) return false;
  return iso_search(a, 0, b, 0, a.children(), b.children());
}

// number of root- and type-preserving automorphisms
inline long long automorphism_count(const Tree& t) {
  auto kids = t.children();
  std::function<long long(int, int)> count = [&](int u, int v) -> long long {
    if (u != 0 && t.edge_type(u) != t.edge_type(v)) return 0;
    const auto& cu = kids[u];
    const auto& cv = kids[v];
    if (cu.size() != cv.size()) return 0;
    std::vector<int> perm(cv.begin(), cv.end());
    std::sort(perm.begin(), perm.end());
    long long total = 0;
    do {
      long long prod = 1;
      for (size_t i = 0; i < cu.size() && prod; ++i) prod *= count(cu[i], perm[i]);
      total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
  };
  return count(0, 0);
}

// --- plane representatives by explicit ordering enumeration ------------------

inline std::set<std::string> ordered_codes(const Tree& t, int u,
                                           const std::vector<std::vector<int>>& kids) {
  std::set<std::string> out;
  std::vector<int> order(kids[u].begin(), kids[u].end());
  std::sort(order.begin(), order.end());
  if (order.empty()) return {"()"};
  do {
    std::vector<std::set<std::string>> parts;
    for (int c : order) parts.push_back(ordered_codes(t, c, kids));
    std::function<void(size_t, std::string)> combine = [&](size_t i, std::string acc) {
      if (i == order.size()) {
        out.insert("(" + acc + ")");
        return;
      }
      for (const std::string& sub : parts[i])
        combine(i + 1, acc + std::to_string(t.edge_type(order[i])) + sub);
    };
    combine(0, "");
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

inline long long plane_count(const Tree& t) {
  return static_cast<long long>(ordered_codes(t, 0, t.children()).size());
}

// --- subforests by independent subset/partition enumeration ------------------

inline bool is_ancestor(const Tree& t, int a, int v) {
  while (v >= 0) {
    if (v == a) return true;
    v = t.parent(v);
  }
  return false;
}

// path-union closure of an edge set (edges named by upper node)
inline EdgeIds span_edges(const Tree& t, const std::vector<int>& edges) {
  std::set<int> nodes;
  for (int e : edges) {
    nodes.insert(e);
    nodes.insert(t.parent(e));
  }
  // pairwise path union over the collected nodes
  std::set<int> out(edges.begin(), edges.end());
  for (int a : nodes)
    for (int b : nodes) {
      // walk both nodes to their meet, adding traversed edges
      std::set<int> aa;
      for (int v = a; v >= 0; v = t.parent(v)) aa.insert(v);
      int meet = b;
      while (!aa.count(meet)) meet = t.parent(meet);
      for (int v = a; v != meet; v = t.parent(v)) out.insert(v);
      for (int v = b; v != meet; v = t.parent(v)) out.insert(v);
    }
  return {out.begin(), out.end()};
}

// all negative forests by recursive part assignment
inline std::set<std::vector<EdgeIds>> negative_forests(const Tree& t, const EdgeSystem& sys) {
  std::vector<int> neg;
  for (int v = 1; v < t.node_count(); ++v)
    if (sys.edge(t.edge_type(v)).cls == EdgeClass::Minus) neg.push_back(v);

  std::set<std::vector<EdgeIds>> out;
  out.insert(std::vector<EdgeIds>{});
  size_t n = neg.size();
  for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
    std::vector<int> chosen;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t(1) << i)) chosen.push_back(neg[i]);
    // assign each chosen edge to a group recursively
    std::vector<std::vector<int>> groups;
    std::function<void(size_t)> assign = [&](size_t i) {
      if (i == chosen.size()) {
        std::vector<EdgeIds> parts;
        std::set<int> verts;
        for (auto& g : groups) {
          EdgeIds span = span_edges(t, g);
          for (int e : span) {
            if (verts.count(e) || verts.count(t.parent(e))) return;
          }
          for (int e : span) {
            verts.insert(e);
            verts.insert(t.parent(e));
          }
          parts.push_back(span);
        }
        // vertex-disjointness double check across parts
        std::sort(parts.begin(), parts.end());
        out.insert(parts);
        return;
      }
      size_t ng = groups.size();
      for (size_t gi = 0; gi < ng; ++gi) {
        groups[gi].push_back(chosen[i]);
        assign(i + 1);
        groups[gi].pop_back();
      }
      groups.push_back({chosen[i]});
      assign(i + 1);
      groups.pop_back();
    };
    assign(0);
  }
  return out;
}

// all positive cut sets by raw subset filtering
inline std::vector<EdgeIds> positive_cuts(const Tree& t, const EdgeSystem& sys) {
  std::vector<int> all;
  EdgeIds zeros;
  for (int v = 1; v < t.node_count(); ++v) {
    EdgeClass c = sys.edge(t.edge_type(v)).cls;
    if (c == EdgeClass::Plus || c == EdgeClass::Zero) all.push_back(v);
    if (c == EdgeClass::Zero) zeros.push_back(v);
  }
  std::vector<EdgeIds> out;
  for (size_t mask = 0; mask < (size_t(1) << all.size()); ++mask) {
    EdgeIds cut;
    for (size_t i = 0; i < all.size(); ++i)
      if (mask & (size_t(1) << i)) cut.push_back(all[i]);
    bool ok = std::includes(cut.begin(), cut.end(), zeros.begin(), zeros.end());
    for (size_t i = 0; i < cut.size() && ok; ++i)
      for (size_t j = i + 1; j < cut.size() && ok; ++j)
        if (is_ancestor(t, cut[i], cut[j]) || is_ancestor(t, cut[j], cut[i])) ok = false;
    if (ok) out.push_back(cut);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// alpha via |T| - sum over cut edges of |T_{>=e}| (never builds the cut tree)
inline Homogeneity alpha_lower(const Tree& t, const EdgeSystem& sys) {
  auto cuts = renormalist::oracle::positive_cuts(t, sys);
  bool first = true;
  Homogeneity best;
  for (const EdgeIds& cut : cuts) {
    Homogeneity h = tree_homogeneity(t, sys);
    for (int e : cut)
      for (int v = 1; v < t.node_count(); ++v)
        if (is_ancestor(t, e, v)) h -= sys.edge(t.edge_type(v)).degree;
    if (first || h < best) {
      best = h;
      first = false;
    }
  }
  return best;
}

// --- second homogeneity by raw subset decomposition --------------------------

inline ExtHomogeneity norm_oracle(const Tree& t, const EdgeSystem& sys, const Homogeneity& delta0) {
  if (t.edge_count() == 0) return ExtHomogeneity(Homogeneity::zero());
  if (t.edge_count() == 1) {
    switch (sys.edge(t.edge_type(1)).cls) {
      case EdgeClass::Zero: return ExtHomogeneity(Homogeneity(delta0));
      case EdgeClass::Minus: return ExtHomogeneity::inf();
      case EdgeClass::Plus: {
        Homogeneity k = sys.edge(t.edge_type(1)).degree;
        return ExtHomogeneity(k < delta0 ? k : delta0);
      }
    }
  }
  if (t.is_planted()) {
    auto b = t.branches().front();
    Homogeneity k = sys.edge(b.edge).degree;
    ExtHomogeneity inner = norm_oracle(b.child, sys, delta0);
    if (inner.infinite && k + tree_homogeneity(b.child, sys) < Homogeneity::zero())
      return ExtHomogeneity::inf();
    if (inner.infinite) return ExtHomogeneity(Homogeneity(delta0));
    Homogeneity v = k + inner.value;
    return ExtHomogeneity(v < delta0 ? v : delta0);
  }
  // enumerate every edge subset; keep valid root decompositions
  ExtHomogeneity best = ExtHomogeneity::inf();
  bool have = false;
  auto consider_branches = [&](const Homogeneity& tau_deg, const std::vector<Tree>& gs) {
    Homogeneity alphas;
    for (const Tree& g : gs) alphas += alpha_lower(g, sys);
    ExtHomogeneity cand(tau_deg + alphas);  // bullet pick
    if (!have || cand < best) {
      best = cand;
      have = true;
    }
    for (const Tree& g : gs) {
      ExtHomogeneity ng = norm_oracle(g, sys, delta0);
      if (ng.infinite) continue;
      ExtHomogeneity c2(tau_deg + alphas - alpha_lower(g, sys) + ng.value);
      if (c2 < best) best = c2;
    }
  };
  {
    std::vector<Tree> gs;
    for (auto& b : t.branches()) gs.push_back(Tree::graft(b.edge, b.child));
    consider_branches(Homogeneity::zero(), gs);
  }
  int m = t.node_count() - 1;
  for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
    EdgeIds sub;
    for (int i = 0; i < m; ++i)
      if (mask & (size_t(1) << i)) sub.push_back(i + 1);
    // tau candidate: connected, contains the root, spanned by its noise edges
    EdgeIds noise;
    bool at_root = false;
    for (int e : sub) {
      if (sys.edge(t.edge_type(e)).cls == EdgeClass::Minus) noise.push_back(e);
      if (t.parent(e) == 0) at_root = true;
    }
    if (noise.empty() || !at_root) continue;
    if (span_edges(t, noise) != sub) continue;
    std::set<int> sset(sub.begin(), sub.end());
    std::set<int> snodes{0};
    for (int e : sub) {
      snodes.insert(e);
      snodes.insert(t.parent(e));
    }
    std::vector<Tree> gs;
    for (int e = 1; e < t.node_count(); ++e) {
      if (sset.count(e) || !snodes.count(t.parent(e))) continue;
      gs.push_back(Tree::graft(t.edge_type(e), t.subtree(e)));
    }
    Homogeneity tau_deg;
    for (int e : sub) tau_deg += sys.edge(t.edge_type(e)).degree;
    consider_branches(tau_deg, gs);
  }
  return best;
}

// --- typed tree enumeration and random generation ----------------------------

inline std::vector<Tree> all_trees(int max_edges, const std::vector<int>& types) {
  std::vector<std::set<Tree>> by_size(max_edges + 1);
  by_size[0].insert(Tree());
  for (int k = 1; k <= max_edges; ++k) {
    // a tree with k edges = smaller tree with one extra planted branch at root
    for (int branch_size = 1; branch_size <= k; ++branch_size) {
      for (const Tree& sub : by_size[branch_size - 1]) {
        for (int et : types) {
          Tree planted = Tree::graft(et, sub);
          for (const Tree& rest : by_size[k - branch_size]) {
            std::vector<Tree> factors{planted, rest};
            by_size[k].insert(Tree::product(factors));
          }
        }
      }
    }
  }
  std::vector<Tree> out;
  for (int k = 0; k <= max_edges; ++k)
    for (const Tree& t : by_size[k]) out.push_back(t);
  return out;
}

inline Tree random_tree(std::mt19937& rng, int edges, const std::vector<int>& types) {
  std::vector<int> parent{-1}, etype{-1};
  for (int v = 1; v <= edges; ++v) {
    parent.push_back(static_cast<int>(rng() % v));
    etype.push_back(types[rng() % types.size()]);
  }
  return Tree::from_links(std::move(parent), std::move(etype));
}

}  // namespace renormalist::oracle

namespace renormalist::oracle {

// structurally conforming: zero and minus edges are leaf edges, as forced by
// R(e) = {()} in any rule-conforming tree
inline bool leaves_ok(const Tree& t, const EdgeSystem& sys) {
  auto kids = t.children();
  for (int v = 1; v < t.node_count(); ++v)
    if (sys.edge(t.edge_type(v)).cls != EdgeClass::Plus && !kids[v].empty()) return false;
  return true;
}

inline Tree random_conforming_tree(std::mt19937& rng, int edges, const std::vector<int>& types,
                                   const EdgeSystem& sys, int max_noise = 1 << 20) {
  while (true) {
    Tree t = random_tree(rng, edges, types);
    if (!leaves_ok(t, sys)) continue;
    if (count_edges_of_class(t, sys, EdgeClass::Minus) > max_noise) continue;
    return t;
  }
}

}  // namespace renormalist::oracle

namespace renormalist::oracle {

// random element of the negative-tree shape class: spanned by its noise
// edges, zero/minus edges at the leaves only
inline Tree random_negative_tree(std::mt19937& rng, int edges, const std::vector<int>& types,
                                 const EdgeSystem& sys, int max_noise) {
  while (true) {
    Tree t = random_conforming_tree(rng, edges, types, sys, max_noise);
    EdgeIds noise = negative_edge_ids(t, sys);
    if (noise.empty()) continue;
    Tree span = extract_subtree(t, minimal_subtree_edges(t, noise));
    if (span.edge_count() >= 1) return span;
  }
}

}  // namespace renormalist::oracle
