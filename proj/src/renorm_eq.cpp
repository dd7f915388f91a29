#include "renormalist/renorm_eq.hpp"

#include <algorithm>

namespace renormalist {

void SymbolicExpr::add(SymTerm t) {
  if (t.coeff.is_zero()) return;
  t.normalize();
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const SymTerm& u) { return u.key() == t.key(); });
  if (it == terms_.end()) {
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), t,
                                [](const SymTerm& a, const SymTerm& b) { return a.key() < b.key(); });
    terms_.insert(pos, std::move(t));
  } else {
    it->coeff += t.coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
  }
}

SymbolicExpr operator*(const SymbolicExpr& a, const SymbolicExpr& b) {
  SymbolicExpr out;
  for (const SymTerm& ta : a.terms())
    for (const SymTerm& tb : b.terms()) {
      SymTerm t;
      t.coeff = ta.coeff * tb.coeff;
      t.constants = ta.constants;
      for (auto& [s, e] : tb.constants) t.constants[s] += e;
      t.funcs = ta.funcs;
      t.funcs.insert(t.funcs.end(), tb.funcs.begin(), tb.funcs.end());
      t.tensors = ta.tensors;
      t.tensors.insert(t.tensors.end(), tb.tensors.begin(), tb.tensors.end());
      t.powers = ta.powers;
      for (auto& [s, e] : tb.powers) {
        t.powers[s] += e;
        if (t.powers[s] == 0) t.powers.erase(s);
      }
      out.add(std::move(t));
    }
  return out;
}

bool operator==(const SymbolicExpr& a, const SymbolicExpr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].key() == b.terms_[i].key())) return false;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

SymbolicExpr SymbolicExpr::scaled(const Rational& c) const {
  SymbolicExpr out;
  for (SymTerm t : terms_) {
    t.coeff *= c;
    out.add(std::move(t));
  }
  return out;
}

std::string SymbolicExpr::str(const std::map<std::string, std::string>& display) const {
  if (terms_.empty()) return "0";
  auto shown = [&](const std::string& s) {
    auto it = display.find(s);
    return it == display.end() ? s : it->second;
  };
  std::string out;
  bool first = true;
  for (const SymTerm& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < Rational(0)) { out += "-"; c = -c; }
    } else {
      out += c < Rational(0) ? " - " : " + ";
      if (c < Rational(0)) c = -c;
    }
    first = false;
    std::vector<std::string> factors;
    if (c != Rational(1)) factors.push_back(c.str());
    for (auto& [s, e] : t.constants)
      factors.push_back(e == 1 ? shown(s) : shown(s) + "^" + std::to_string(e));
    for (const FuncFactor& f : t.funcs) {
      std::string primes(static_cast<size_t>(f.order), '\'');
      factors.push_back(f.name + primes + "(" + shown(f.arg) + ")");
    }
    for (const TensorFactor& tf : t.tensors) {
      std::string args;
      for (auto& [s, e] : tf.filled)
        for (int i = 0; i < e; ++i) args += (args.empty() ? "" : ",") + shown(s);
      for (int i = 0; i < tf.open; ++i) args += (args.empty() ? "" : ",") + std::string(".");
      factors.push_back(tf.name + "(" + args + ")");
    }
    for (auto& [s, e] : t.powers)
      factors.push_back(e == 1 ? shown(s) : shown(s) + "^" + std::to_string(e));
    if (factors.empty()) factors.push_back(c == Rational(1) ? "1" : "");
    std::string term;
    for (auto& f : factors) {
      if (f.empty()) continue;
      if (!term.empty()) term += "*";
      term += f;
    }
    out += term.empty() ? "1" : term;
  }
  return out;
}

SymbolicExpr formal_derivative(const SymbolicExpr& e, const std::string& x) {
  SymbolicExpr out;
  for (const SymTerm& t : e.terms()) {
    auto pit = t.powers.find(x);
    if (pit != t.powers.end()) {
      SymTerm d = t;
      d.coeff *= Rational(pit->second);
      if (--d.powers[x] == 0) d.powers.erase(x);
      out.add(std::move(d));
    }
    for (size_t i = 0; i < t.funcs.size(); ++i) {
      if (t.funcs[i].arg != x) continue;
      SymTerm d = t;
      d.funcs[i].order++;
      out.add(std::move(d));
    }
    for (size_t i = 0; i < t.tensors.size(); ++i) {
      auto fit = t.tensors[i].filled.find(x);
      if (fit == t.tensors[i].filled.end()) continue;
      SymTerm d = t;
      d.coeff *= Rational(fit->second);
      if (--d.tensors[i].filled[x] == 0) d.tensors[i].filled.erase(x);
      d.tensors[i].open++;
      out.add(std::move(d));
    }
  }
  return out;
}

void validate_equation(const EquationSpec& spec) {
  const EdgeSystem& sys = *spec.sys;
  for (auto& [comp, expr] : spec.rhs) {
    if (!sys.labels.has(comp)) throw RuleError("unknown component label: " + comp);
    for (const SymTerm& t : expr.terms()) {
      for (auto& [s, e] : t.powers) {
        int idx = sys.require(s);
        if (sys.is_zero(idx)) throw RuleError("zero edges cannot be indeterminates: " + s);
        if (sys.is_minus(idx)) {
          auto it = spec.noise_degree.find(s);
          int deg = it == spec.noise_degree.end() ? 1 : it->second;
          if (e > deg)
            throw RuleError("nonlinearity exceeds declared noise multilinearity in " + s);
        }
      }
      for (const FuncFactor& f : t.funcs)
        if (!sys.is_plus(sys.require(f.arg)))
          throw RuleError("function arguments must be solution slots: " + f.arg);
      for (const TensorFactor& tf : t.tensors)
        for (auto& [s, e] : tf.filled) {
          (void)e;
          sys.require(s);
        }
    }
  }
}

namespace {

SymbolicExpr polynomial_to_expr(const Polynomial& p) {
  SymbolicExpr out;
  for (auto& [mono, coeff] : p.terms()) {
    SymTerm t;
    t.coeff = coeff;
    for (auto& [sym, e] : mono) t.constants[sym] += e;
    out.add(std::move(t));
  }
  return out;
}

SymbolicExpr apply_contractions(const SymbolicExpr& e, const EquationSpec& spec) {
  if (spec.contractions.empty()) return e;
  SymbolicExpr out;
  for (SymTerm t : e.terms()) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < t.tensors.size() && !changed; ++i) {
        if (t.tensors[i].open == 0 || !t.tensors[i].filled.empty()) continue;
        for (auto& [key, result] : spec.contractions) {
          if (key.first != t.tensors[i].name) continue;
          auto cit = t.constants.find(key.second);
          if (cit == t.constants.end()) continue;
          if (--cit->second == 0) t.constants.erase(cit);
          t.constants[result]++;
          t.tensors.erase(t.tensors.begin() + static_cast<long>(i));
          changed = true;
          break;
        }
      }
    }
    out.add(std::move(t));
  }
  return out;
}

}  // namespace

SymbolicExpr counterterm_for_tree(const Tree& tau, const EquationSpec& spec,
                                  const std::string& component, const Polynomial& g_value) {
  const EdgeSystem& sys = *spec.sys;
  for (int v = 1; v < tau.node_count(); ++v)
    if (sys.is_zero(tau.edge_type(v)))
      throw TreeError("counterterm trees may not contain zero edges");

  auto kids = tau.children();
  SymbolicExpr product = SymbolicExpr::constant(Rational(1));
  for (int n = 0; n < tau.node_count(); ++n) {
    if (kids[n].empty()) continue;
    std::string comp = component;
    if (n != 0) {
      const EdgeType& below = sys.edge(tau.edge_type(n));
      if (below.cls != EdgeClass::Plus)
        throw TreeError("internal nodes must sit above kernel edges");
      comp = sys.labels.name(below.plus_label);
    }
    auto rit = spec.rhs.find(comp);
    if (rit == spec.rhs.end()) throw RuleError("no right-hand side for component " + comp);
    SymbolicExpr d = rit->second;
    for (int c : kids[n]) d = formal_derivative(d, sys.edge(tau.edge_type(c)).id);
    if (d.is_zero()) return SymbolicExpr();
    product = product * d;
  }
  Rational inv_s(1);
  inv_s /= Rational(symmetry_factor(tau));
  SymbolicExpr paired = product * polynomial_to_expr(g_value);
  return apply_contractions(paired.scaled(inv_s), spec);
}

std::map<std::string, SymbolicExpr> renormalized_equation(const EquationSpec& spec,
                                                          const Character& g,
                                                          const std::vector<Tree>& taus) {
  validate_equation(spec);
  std::map<std::string, SymbolicExpr> out;
  for (auto& [comp, rhs] : spec.rhs) {
    SymbolicExpr total = rhs;
    for (const Tree& tau : taus) {
      Polynomial gv = g.value_uncolored(tau);
      if (gv.is_zero()) continue;
      total.add(counterterm_for_tree(tau, spec, comp, gv));
    }
    out[comp] = std::move(total);
  }
  return out;
}

SpdeRuleResult spde_to_rule(EquationSpec& spec, EdgeSystem& sys, int max_order) {
  validate_equation(spec);
  SpdeRuleResult res{Rule(&sys), {}};

  for (auto& [comp, expr] : spec.rhs) {
    int comp_label = sys.labels.id(comp);
    // plus edges belonging to this component
    std::vector<int> targets;
    for (int e = 0; e < sys.size(); ++e)
      if (sys.is_plus(e) && sys.edge(e).plus_label == comp_label) targets.push_back(e);
    if (targets.empty()) throw RuleError("component has no kernel edges: " + comp);

    int term_no = 0;
    for (const SymTerm& t : expr.terms()) {
      ++term_no;
      // base slot multiset: monomial powers plus tensor-filled slots
      std::map<std::string, int> slots;
      for (auto& [s, e] : t.powers) slots[s] += e;
      for (const TensorFactor& tf : t.tensors)
        for (auto& [s, e] : tf.filled) slots[s] += e;

      int orders = (t.funcs.empty() ? 0 : max_order);
      std::string farg = t.funcs.empty() ? "" : t.funcs.front().arg;
      for (int n = 0; n <= orders; ++n) {
        std::map<std::string, int> sigma = slots;
        if (n > 0) sigma[farg] += n;

        std::vector<int> node;
        MultiIndex zero_index;
        zero_index.add(comp_label, 1);
        for (auto& [s, e] : sigma) {
          int idx = sys.require(s);
          for (int i = 0; i < e; ++i) node.push_back(idx);
          MultiIndex mi = sys.minus_index(idx);
          for (int i = 0; i < e; ++i) zero_index.subtract(mi);
        }
        bool constant_coeff = t.funcs.empty() && t.tensors.empty();
        if (!constant_coeff) {
          std::string base =
              !t.funcs.empty() ? t.funcs.front().name
                               : (!t.tensors.empty() ? t.tensors.front().name
                                                     : comp + std::to_string(term_no));
          std::string id = "d" + base + std::to_string(n);
          int de = sys.find(id);
          if (de < 0) {
            EdgeType et;
            et.id = id;
            et.cls = EdgeClass::Zero;
            et.zero_index = zero_index.red_star(sys.labels);
            de = sys.add(et);
            res.added_zero_edges.push_back(de);
          }
          node.push_back(de);
        }
        for (int target : targets) res.naive.add(target, NodeType(node));
      }
    }
  }
  return res;
}

}  // namespace renormalist
