#include "renormalist/character.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>

namespace renormalist {

namespace {

EdgeIds all_edges(const Tree& host) {
  EdgeIds out;
  for (int v = 1; v < host.node_count(); ++v) out.push_back(v);
  return out;
}

EdgeIds intersect(const EdgeIds& a, const EdgeIds& b) {
  EdgeIds out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const EdgeIds& a, const EdgeIds& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Per-host structure reused across all group operations on that host: the
// negative forest lattice with component splits, plus a memo for coloured
// component codes. Concurrent reads after construction; build serialized.
struct HostContext {
  Tree host;
  EdgeIds all;
  std::vector<EdgeIds> forest_edges;                 // sorted unions
  std::vector<std::vector<EdgeIds>> forest_comps;    // aligned components
  std::map<std::pair<EdgeIds, EdgeIds>, std::string> code_memo;
  std::mutex memo_mu;

  const std::string& code(const EdgeIds& comp, const EdgeIds& marks_in_comp) {
    std::lock_guard<std::mutex> lock(memo_mu);
    auto key = std::make_pair(comp, marks_in_comp);
    auto it = code_memo.find(key);
    if (it != code_memo.end()) return it->second;
    return code_memo.emplace(key, colored_code(host, comp, marks_in_comp)).first->second;
  }
};

HostContext& host_context(const Tree& host, const EdgeSystem& sys) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<HostContext>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(host.code());
  if (it != registry.end()) return *it->second;
  auto ctx = std::make_unique<HostContext>();
  ctx->host = host;
  ctx->all = all_edges(host);
  for (const SubforestRef& f : negative_forests(host, sys)) {
    ctx->forest_edges.push_back(f.all_edges());
    ctx->forest_comps.push_back(f.parts);
  }
  return *registry.emplace(host.code(), std::move(ctx)).first->second;
}

}  // namespace

void Character::set(const Tree& host, const EdgeIds& marks, Polynomial v) {
  EdgeIds all = all_edges(host);
  if (marks == all)
    throw TreeError("fully coloured trees carry the identity; their value is fixed to 1");
  if (!colored_admissible(ColoredTree(host, marks), *sys_))
    throw TreeError("character key colouring is not admissible");
  values_[colored_code(host, all, marks)] = std::move(v);
}

Polynomial Character::value(const Tree& host, const EdgeIds& component, const EdgeIds& marks) const {
  EdgeIds sub_marks = intersect(marks, component);
  HostContext& ctx = host_context(host, *sys_);
  auto it = values_.find(ctx.code(component, sub_marks));
  if (it != values_.end()) return it->second;
  if (component.empty() || sub_marks == component) return Polynomial(Rational(1));
  return Polynomial();
}

Polynomial Character::value(const Tree& host, const EdgeIds& marks) const {
  return value(host, all_edges(host), marks);
}

Polynomial Character::forest_value(const Tree& host, const EdgeIds& forest_edges,
                                   const EdgeIds& marks) const {
  Polynomial out(Rational(1));
  for (const EdgeIds& comp : edge_components(host, forest_edges))
    out = out * value(host, comp, marks);
  return out;
}

std::vector<ColoredKey> coloring_keys(const Tree& host, const EdgeSystem& sys) {
  HostContext& ctx = host_context(host, sys);
  std::vector<ColoredKey> out;
  for (const EdgeIds& fe : ctx.forest_edges) out.push_back({host, fe});
  return out;
}

Polynomial star_value(const Character& f, const Character& g, const Tree& host,
                      const EdgeIds& marks) {
  const EdgeSystem& sys = f.system();
  HostContext& ctx = host_context(host, sys);
  Polynomial out;
  for (size_t i = 0; i < ctx.forest_edges.size(); ++i) {
    const EdgeIds& fe = ctx.forest_edges[i];
    if (!subset(marks, fe)) continue;
    Polynomial fv = f.value(host, ctx.all, fe);
    if (fv.is_zero()) continue;
    Polynomial gv(Rational(1));
    for (const EdgeIds& comp : ctx.forest_comps[i]) {
      gv = gv * g.value(host, comp, marks);
      if (gv.is_zero()) break;
    }
    out += fv * gv;
  }
  return out;
}

Character star(const Character& f, const Character& g, const std::vector<Tree>& universe) {
  Character out(&f.system());
  for (const Tree& host : universe) {
    HostContext& ctx = host_context(host, f.system());
    for (const EdgeIds& marks : ctx.forest_edges) {
      if (marks == ctx.all) continue;
      Polynomial v = star_value(f, g, host, marks);
      if (!v.is_zero()) out.set(host, marks, v);
    }
  }
  return out;
}

Character inverse(const Character& g, const std::vector<Tree>& universe) {
  const EdgeSystem& sys = g.system();
  Character out(&sys);
  for (const Tree& host : universe) {
    HostContext& ctx = host_context(host, sys);
    std::map<EdgeIds, Polynomial> inv;  // marks -> (A g)(host, marks)
    std::function<const Polynomial&(const EdgeIds&)> compute =
        [&](const EdgeIds& marks) -> const Polynomial& {
      auto it = inv.find(marks);
      if (it != inv.end()) return it->second;
      Polynomial v;
      if (marks == ctx.all) {
        v = Polynomial(Rational(1));
      } else {
        v = -g.value(host, ctx.all, marks);
        for (size_t i = 0; i < ctx.forest_edges.size(); ++i) {
          const EdgeIds& fe = ctx.forest_edges[i];
          if (fe == ctx.all || fe == marks || !subset(marks, fe)) continue;
          Polynomial gv(Rational(1));
          for (const EdgeIds& comp : ctx.forest_comps[i]) {
            gv = gv * g.value(host, comp, marks);
            if (gv.is_zero()) break;
          }
          if (gv.is_zero()) continue;
          v -= compute(fe) * gv;
        }
      }
      return inv.emplace(marks, std::move(v)).first->second;
    };
    for (const EdgeIds& fe : ctx.forest_edges) {
      if (fe == ctx.all) continue;
      const Polynomial& v = compute(fe);
      if (!v.is_zero()) out.set(host, fe, v);
    }
  }
  return out;
}

}  // namespace renormalist
