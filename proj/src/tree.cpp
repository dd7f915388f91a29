#include "renormalist/tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace renormalist {

namespace {

struct RecNode {
  int edge = -1;  // incoming edge type, -1 at root
  std::vector<RecNode> kids;
  std::string code;
};

void sort_rec(RecNode& n) {
  for (RecNode& k : n.kids) sort_rec(k);
  std::sort(n.kids.begin(), n.kids.end(), [](const RecNode& a, const RecNode& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.code < b.code;
  });
  n.code = "(";
  for (const RecNode& k : n.kids) {
    n.code += std::to_string(k.edge);
    n.code += k.code;
  }
  n.code += ")";
}

RecNode build_rec(const std::vector<int>& parent, const std::vector<int>& edge_type, int root,
                  const std::vector<std::vector<int>>& kids) {
  RecNode n;
  n.edge = root == 0 ? -1 : edge_type[root];
  for (int c : kids[root]) n.kids.push_back(build_rec(parent, edge_type, c, kids));
  if (root != 0) n.edge = edge_type[root];
  return n;
}

void emit(const RecNode& n, int parent_idx, std::vector<int>& parent, std::vector<int>& edge_type) {
  int me = static_cast<int>(parent.size());
  parent.push_back(parent_idx);
  edge_type.push_back(n.edge);
  for (const RecNode& k : n.kids) emit(k, me, parent, edge_type);
}

}  // namespace

Tree::Tree() : parent_{-1}, edge_type_{-1}, code_("()") {}

Tree Tree::single_edge(int et) {
  Tree t;
  t.parent_ = {-1, 0};
  t.edge_type_ = {-1, et};
  t.canonicalize();
  return t;
}

Tree Tree::graft(int et, const Tree& above) {
  Tree t;
  t.parent_.assign(1, -1);
  t.edge_type_.assign(1, -1);
  int offset = 1;
  for (int v = 0; v < above.node_count(); ++v) {
    t.parent_.push_back(v == 0 ? 0 : above.parent(v) + offset);
    t.edge_type_.push_back(v == 0 ? et : above.edge_type(v));
  }
  t.canonicalize();
  return t;
}

Tree Tree::product(const std::vector<Tree>& factors) {
  Tree t;
  t.parent_.assign(1, -1);
  t.edge_type_.assign(1, -1);
  for (const Tree& f : factors) {
    int offset = t.node_count() - 1;
    for (int v = 1; v < f.node_count(); ++v) {
      t.parent_.push_back(f.parent(v) == 0 ? 0 : f.parent(v) + offset);
      t.edge_type_.push_back(f.edge_type(v));
    }
  }
  t.canonicalize();
  return t;
}

Tree Tree::from_links(std::vector<int> parent, std::vector<int> edge_type) {
  if (parent.empty() || parent[0] != -1 || parent.size() != edge_type.size())
    throw TreeError("malformed tree links");
  Tree t;
  t.parent_ = std::move(parent);
  t.edge_type_ = std::move(edge_type);
  for (int v = 1; v < t.node_count(); ++v)
    if (t.parent_[v] < 0 || t.parent_[v] >= t.node_count())
      throw TreeError("malformed tree links");
  t.canonicalize();
  return t;
}

void Tree::canonicalize() {
  std::vector<std::vector<int>> kids(parent_.size());
  for (size_t v = 1; v < parent_.size(); ++v) kids[parent_[v]].push_back(static_cast<int>(v));
  RecNode root = build_rec(parent_, edge_type_, 0, kids);
  sort_rec(root);
  std::vector<int> p, e;
  emit(root, -1, p, e);
  parent_ = std::move(p);
  edge_type_ = std::move(e);
  code_ = root.code;
}

std::vector<std::vector<int>> Tree::children() const {
  std::vector<std::vector<int>> kids(parent_.size());
  for (size_t v = 1; v < parent_.size(); ++v) kids[parent_[v]].push_back(static_cast<int>(v));
  return kids;
}

std::vector<TreeBranch> Tree::branches() const {
  std::vector<TreeBranch> out;
  auto kids = children();
  for (int c : kids[0]) out.push_back({edge_type_[c], subtree(c)});
  return out;
}

Tree Tree::subtree(int v) const {
  std::vector<int> map(parent_.size(), -1);
  std::vector<int> p, e;
  // nodes are in preorder, so the subtree of v is the contiguous block
  // starting at v whose members have parents inside the block
  p.push_back(-1);
  e.push_back(-1);
  map[v] = 0;
  for (int u = v + 1; u < node_count(); ++u) {
    if (map[parent_[u]] < 0) break;
    map[u] = static_cast<int>(p.size());
    p.push_back(map[parent_[u]]);
    e.push_back(edge_type_[u]);
  }
  Tree t;
  t.parent_ = std::move(p);
  t.edge_type_ = std::move(e);
  t.canonicalize();
  return t;
}

bool Tree::is_planted() const {
  int n = 0;
  for (int v = 1; v < node_count(); ++v)
    if (parent_[v] == 0) ++n;
  return n == 1;
}

Homogeneity tree_homogeneity(const Tree& t, const EdgeSystem& sys) {
  Homogeneity h;
  for (int v = 1; v < t.node_count(); ++v) h += sys.edge(t.edge_type(v)).degree;
  return h;
}

int count_edges_of_class(const Tree& t, const EdgeSystem& sys, EdgeClass cls) {
  int n = 0;
  for (int v = 1; v < t.node_count(); ++v)
    if (sys.edge(t.edge_type(v)).cls == cls) ++n;
  return n;
}

std::vector<long long> symmetry_factors_per_node(const Tree& t) {
  std::vector<long long> s(t.node_count(), 1);
  auto kids = t.children();
  for (int v = 0; v < t.node_count(); ++v) {
    std::map<std::pair<int, std::string>, int> mult;
    for (int c : kids[v]) mult[{t.edge_type(c), t.subtree(c).code()}]++;
    long long f = 1;
    for (auto& [key, m] : mult) {
      (void)key;
      for (int i = 2; i <= m; ++i) f *= i;
    }
    s[v] = f;
  }
  return s;
}

long long symmetry_factor(const Tree& t) {
  long long s = 1;
  for (long long f : symmetry_factors_per_node(t)) s *= f;
  return s;
}

long long plane_count(const Tree& t) {
  auto kids = t.children();
  auto s = symmetry_factors_per_node(t);
  long long out = 1;
  for (int v = 0; v < t.node_count(); ++v) {
    long long deg_fact = 1;
    for (size_t i = 2; i <= kids[v].size(); ++i) deg_fact *= static_cast<long long>(i);
    out *= deg_fact / s[v];
  }
  return out;
}

namespace {

struct TermCursor {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  std::string ident() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    if (i == start) throw TreeError("expected edge id in tree term: '" + s + "'");
    return s.substr(start, i - start);
  }
};

Tree parse_product(const EdgeSystem& sys, TermCursor& c);

Tree parse_factor(const EdgeSystem& sys, TermCursor& c) {
  std::string id = c.ident();
  int et = sys.require(id);
  if (c.eat('(')) {
    Tree sub = parse_product(sys, c);
    if (!c.eat(')')) throw TreeError("missing ')' in tree term: '" + c.s + "'");
    return Tree::graft(et, sub);
  }
  return Tree::single_edge(et);
}

Tree parse_product(const EdgeSystem& sys, TermCursor& c) {
  std::vector<Tree> factors{parse_factor(sys, c)};
  while (c.eat('*')) factors.push_back(parse_factor(sys, c));
  return factors.size() == 1 ? factors[0] : Tree::product(factors);
}

}  // namespace

Tree parse_tree_term(const EdgeSystem& sys, const std::string& term) {
  TermCursor c{term};
  Tree t = parse_product(sys, c);
  c.skip();
  if (c.i != term.size()) throw TreeError("trailing characters in tree term: '" + term + "'");
  return t;
}

std::string tree_term(const Tree& t, const EdgeSystem& sys) {
  if (t.edge_count() == 0) return ".";
  auto branches = t.branches();
  std::string out;
  for (size_t i = 0; i < branches.size(); ++i) {
    if (i) out += "*";
    out += sys.edge(branches[i].edge).id;
    if (branches[i].child.edge_count() > 0) out += "(" + tree_term(branches[i].child, sys) + ")";
  }
  return out;
}

}  // namespace renormalist
