#include "renormalist/subforest.hpp"

#include <algorithm>
#include <set>

namespace renormalist {

namespace {

// nodes covered by an edge set: both endpoints of every edge
std::set<int> edge_nodes(const Tree& host, const EdgeIds& edges) {
  std::set<int> out;
  for (int e : edges) {
    out.insert(e);
    out.insert(host.parent(e));
  }
  return out;
}

bool is_ancestor_or_self(const Tree& host, int a, int v) {
  while (v >= 0) {
    if (v == a) return true;
    v = host.parent(v);
  }
  return false;
}

// subsets iterator helper: call f on every subset (as vector) of items
template <typename T, typename F>
void for_each_subset(const std::vector<T>& items, F&& f) {
  size_t n = items.size();
  if (n > 25) throw TreeError("subset enumeration too large");
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    std::vector<T> sub;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t(1) << i)) sub.push_back(items[i]);
    f(sub);
  }
}

// all set partitions via restricted growth strings
template <typename F>
void for_each_partition(int n, F&& f) {
  if (n == 0) {
    f(std::vector<std::vector<int>>{});
    return;
  }
  std::vector<int> a(n, 0);
  std::vector<int> b(n, 0);  // b[i] = max(a[0..i-1]) + 1... maintained below
  while (true) {
    int blocks = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<std::vector<int>> parts(blocks);
    for (int i = 0; i < n; ++i) parts[a[i]].push_back(i);
    f(parts);
    int i = n - 1;
    for (; i > 0; --i) {
      int maxp = 0;
      for (int j = 0; j < i; ++j) maxp = std::max(maxp, a[j]);
      if (a[i] <= maxp) break;
    }
    if (i == 0) break;
    a[i]++;
    for (int j = i + 1; j < n; ++j) a[j] = 0;
  }
  (void)b;
}

}  // namespace

EdgeIds negative_edge_ids(const Tree& host, const EdgeSystem& sys) {
  EdgeIds out;
  for (int v = 1; v < host.node_count(); ++v)
    if (sys.edge(host.edge_type(v)).cls == EdgeClass::Minus) out.push_back(v);
  return out;
}

EdgeIds minimal_subtree_edges(const Tree& host, const EdgeIds& edges) {
  if (edges.empty()) return {};
  // Steiner closure in a tree: removing edge e splits the node set in two;
  // e is needed iff the endpoint set of the targets meets both sides.
  std::set<int> snodes;
  for (int t : edges) {
    snodes.insert(t);
    snodes.insert(host.parent(t));
  }
  EdgeIds out;
  for (int e = 1; e < host.node_count(); ++e) {
    bool below = false, outside = false;
    for (int s : snodes) {
      if (is_ancestor_or_self(host, e, s)) below = true;
      else outside = true;
      if (below && outside) break;
    }
    if (below && outside) out.push_back(e);
  }
  return out;
}

Tree extract_subtree(const Tree& host, const EdgeIds& edges) {
  if (edges.empty()) return Tree();
  auto nodes = edge_nodes(host, edges);
  // root of the component: the node whose parent edge is not in the set
  std::set<int> eset(edges.begin(), edges.end());
  int root = -1;
  for (int v : nodes)
    if (!eset.count(v)) {
      if (root != -1) throw TreeError("edge set is not connected");
      root = v;
    }
  if (root == -1) throw TreeError("edge set has no root");
  std::vector<int> order{root};
  std::vector<int> parent{-1}, etype{-1};
  std::vector<int> map(host.node_count(), -1);
  map[root] = 0;
  // host nodes are in preorder; sweep and keep set members
  for (int v = 0; v < host.node_count(); ++v) {
    if (!eset.count(v)) continue;
    if (map[host.parent(v)] < 0) throw TreeError("edge set is not connected");
    map[v] = static_cast<int>(parent.size());
    parent.push_back(map[host.parent(v)]);
    etype.push_back(host.edge_type(v));
  }
  return Tree::from_links(std::move(parent), std::move(etype));
}

std::vector<EmbeddedSubtree> negative_subtrees(const Tree& host, const EdgeSystem& sys) {
  std::vector<EmbeddedSubtree> out;
  EdgeIds neg = negative_edge_ids(host, sys);
  for_each_subset(neg, [&](const EdgeIds& sub) {
    if (sub.empty()) return;
    EdgeIds span = minimal_subtree_edges(host, sub);
    out.push_back({extract_subtree(host, span), span});
  });
  std::sort(out.begin(), out.end(),
            [](const EmbeddedSubtree& a, const EmbeddedSubtree& b) { return a.edges < b.edges; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const EmbeddedSubtree& a, const EmbeddedSubtree& b) {
                          return a.edges == b.edges;
                        }),
            out.end());
  return out;
}

std::vector<EmbeddedSubtree> negative_subtrees_at_root(const Tree& host, const EdgeSystem& sys) {
  std::vector<EmbeddedSubtree> out;
  for (EmbeddedSubtree& s : negative_subtrees(host, sys)) {
    bool at_root = false;
    for (int e : s.edges)
      if (host.parent(e) == 0) at_root = true;
    if (at_root) out.push_back(std::move(s));
  }
  return out;
}

std::vector<SubforestRef> negative_forests(const Tree& host, const EdgeSystem& sys) {
  std::set<SubforestRef> out;
  out.insert(SubforestRef{});
  EdgeIds neg = negative_edge_ids(host, sys);
  for_each_subset(neg, [&](const EdgeIds& sub) {
    if (sub.empty()) return;
    for_each_partition(static_cast<int>(sub.size()), [&](const std::vector<std::vector<int>>& parts) {
      std::vector<EdgeIds> closed;
      for (auto& part : parts) {
        EdgeIds pe;
        for (int i : part) pe.push_back(sub[i]);
        closed.push_back(minimal_subtree_edges(host, pe));
      }
      // vertex-disjointness
      std::set<int> seen;
      for (auto& part : closed) {
        for (int n : edge_nodes(host, part)) {
          if (!seen.insert(n).second) return;
        }
      }
      std::sort(closed.begin(), closed.end());
      out.insert(SubforestRef{std::move(closed)});
    });
  });
  return {out.begin(), out.end()};
}

MultiIndex dif(const Tree& host, const EdgeSystem& sys, int node) {
  auto kids = host.children();
  if (kids[node].empty()) return {};
  MultiIndex m;
  if (node != 0) {
    const EdgeType& below = sys.edge(host.edge_type(node));
    if (below.cls == EdgeClass::Plus) m.add(below.plus_label, 1);
  }
  for (int c : kids[node]) m.subtract(sys.minus_index(host.edge_type(c)));
  return m.red_star(sys.labels);
}

std::vector<EdgeIds> positive_cuts(const Tree& host, const EdgeSystem& sys) {
  EdgeIds zero, plus;
  for (int v = 1; v < host.node_count(); ++v) {
    EdgeClass c = sys.edge(host.edge_type(v)).cls;
    if (c == EdgeClass::Zero) zero.push_back(v);
    if (c == EdgeClass::Plus) plus.push_back(v);
  }
  auto comparable = [&](int a, int b) {
    return is_ancestor_or_self(host, a, b) || is_ancestor_or_self(host, b, a);
  };
  // zero edges must all be present and pairwise incomparable (always true:
  // nothing sits above a zero edge, and distinct edges into distinct leaves)
  for (size_t i = 0; i < zero.size(); ++i)
    for (size_t j = i + 1; j < zero.size(); ++j)
      if (comparable(zero[i], zero[j])) return {};

  std::vector<EdgeIds> out;
  for_each_subset(plus, [&](const EdgeIds& sub) {
    EdgeIds cut = zero;
    cut.insert(cut.end(), sub.begin(), sub.end());
    std::sort(cut.begin(), cut.end());
    for (size_t i = 0; i < cut.size(); ++i)
      for (size_t j = i + 1; j < cut.size(); ++j)
        if (comparable(cut[i], cut[j])) return;
    out.push_back(cut);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Tree cut_tree(const Tree& host, const EdgeSystem& sys, const EdgeIds& cut) {
  std::set<int> cutset(cut.begin(), cut.end());
  // validate: plus/zero only, incomparable, all zero edges included
  {
    auto all = positive_cuts(host, sys);
    EdgeIds sorted = cut;
    std::sort(sorted.begin(), sorted.end());
    if (std::find(all.begin(), all.end(), sorted) == all.end())
      throw TreeError("edge set is not a positive cut");
  }
  // drop every node whose path to the root crosses a cut edge; replace each
  // cut edge by its iota image
  std::vector<int> parent{-1}, etype{-1};
  std::vector<int> map(host.node_count(), -1);
  map[0] = 0;
  for (int v = 1; v < host.node_count(); ++v) {
    if (map[host.parent(v)] < 0) continue;  // inside a removed subtree
    if (cutset.count(v)) {
      const EdgeType& et = sys.edge(host.edge_type(v));
      int iota = et.cls == EdgeClass::Zero ? host.edge_type(v) : et.iota;
      if (iota < 0) throw TreeError("cut edge has no iota image: " + et.id);
      parent.push_back(map[host.parent(v)]);
      etype.push_back(iota);
      continue;  // children of v stay unmapped and are dropped
    }
    map[v] = static_cast<int>(parent.size());
    parent.push_back(map[host.parent(v)]);
    etype.push_back(host.edge_type(v));
  }
  return Tree::from_links(std::move(parent), std::move(etype));
}

Homogeneity sector_regularity(const Tree& host, const EdgeSystem& sys) {
  auto cuts = positive_cuts(host, sys);
  if (cuts.empty()) throw TreeError("no admissible positive cut (comparable zero edges)");
  bool first = true;
  Homogeneity best;
  for (const EdgeIds& cut : cuts) {
    Homogeneity h = tree_homogeneity(cut_tree(host, sys, cut), sys);
    if (first || h < best) { best = h; first = false; }
  }
  return best;
}

}  // namespace renormalist
