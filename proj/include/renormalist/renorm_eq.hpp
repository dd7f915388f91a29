#pragma once

#include <map>
#include <string>
#include <vector>

#include "renormalist/character.hpp"
#include "renormalist/rule.hpp"
#include "renormalist/tree.hpp"

namespace renormalist {

// One factor f^{(order)}(arg) of a composite nonlinearity symbol.
struct FuncFactor {
  std::string name;
  int order = 0;
  std::string arg;
  friend bool operator==(const FuncFactor& a, const FuncFactor& b) {
    return a.name == b.name && a.order == b.order && a.arg == b.arg;
  }
  friend bool operator<(const FuncFactor& a, const FuncFactor& b) {
    return std::tie(a.name, a.order, a.arg) < std::tie(b.name, b.order, b.arg);
  }
};

// Named multilinear tensor symbol with some slots filled by indeterminates
// and some left open by differentiation.
struct TensorFactor {
  std::string name;
  std::map<std::string, int> filled;
  int open = 0;
  friend bool operator==(const TensorFactor& a, const TensorFactor& b) {
    return a.name == b.name && a.filled == b.filled && a.open == b.open;
  }
  friend bool operator<(const TensorFactor& a, const TensorFactor& b) {
    return std::tie(a.name, a.filled, a.open) < std::tie(b.name, b.filled, b.open);
  }
};

struct SymTerm {
  Rational coeff = Rational(1);
  std::map<std::string, int> constants;  // named constants (C, s, trA, ...)
  std::vector<FuncFactor> funcs;
  std::vector<TensorFactor> tensors;
  std::map<std::string, int> powers;  // indeterminate -> exponent

  void normalize() {
    std::sort(funcs.begin(), funcs.end());
    std::sort(tensors.begin(), tensors.end());
  }
  // term identity disregarding the coefficient
  auto key() const { return std::tie(constants, funcs, tensors, powers); }
};

class SymbolicExpr {
 public:
  SymbolicExpr() = default;
  explicit SymbolicExpr(SymTerm t) { add(std::move(t)); }
  static SymbolicExpr constant(Rational c) {
    SymTerm t;
    t.coeff = c;
    return SymbolicExpr(std::move(t));
  }

  void add(SymTerm t);
  void add(const SymbolicExpr& e) {
    for (const SymTerm& t : e.terms_) add(t);
  }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<SymTerm>& terms() const { return terms_; }

  friend SymbolicExpr operator*(const SymbolicExpr& a, const SymbolicExpr& b);
  friend SymbolicExpr operator+(SymbolicExpr a, const SymbolicExpr& b) {
    a.add(b);
    return a;
  }
  friend bool operator==(const SymbolicExpr& a, const SymbolicExpr& b);

  SymbolicExpr scaled(const Rational& c) const;

  std::string str(const std::map<std::string, std::string>& display = {}) const;

 private:
  std::vector<SymTerm> terms_;  // kept sorted by key, coefficients nonzero
};

// d/d(indeterminate): power rule on monomials, order bump on matching
// function factors, slot opening on matching tensor slots.
SymbolicExpr formal_derivative(const SymbolicExpr& e, const std::string& indeterminate);

struct EquationSpec {
  const EdgeSystem* sys = nullptr;
  // component label name -> right-hand side F^t; indeterminates are edge ids
  std::map<std::string, SymbolicExpr> rhs;
  std::map<std::string, int> noise_degree;            // noise edge id -> multilinearity
  std::map<std::string, std::string> display;         // indeterminate -> print name
  // (tensor symbol, character symbol) -> contracted scalar symbol
  std::map<std::pair<std::string, std::string>, std::string> contractions;
};

// Validates multilinearity in the declared noises.
void validate_equation(const EquationSpec& spec);

// (prod_n 1/S_n) prod over non-leaf nodes of D^{node type}F^{component},
// paired with the character value through the contraction table.
// Node types containing zero edges are rejected; a vanishing derivative
// yields the zero expression.
SymbolicExpr counterterm_for_tree(const Tree& tau, const EquationSpec& spec,
                                  const std::string& component, const Polynomial& g_value);

// F^t + sum over taus of <D_tau F, g(tau)> per component.
std::map<std::string, SymbolicExpr> renormalized_equation(const EquationSpec& spec,
                                                          const Character& g,
                                                          const std::vector<Tree>& taus);

// SPDE -> rule: naive entries [delta^{(t,sigma)}] u sigma for every nonzero
// D^sigma F (functions expanded to max_order in their argument; the jet edge
// is suppressed when the coefficient is a constant scalar). Returns the added
// zero-edge ids and the naive rule; callers normalise as needed.
struct SpdeRuleResult {
  Rule naive;
  std::vector<int> added_zero_edges;
};
SpdeRuleResult spde_to_rule(EquationSpec& spec, EdgeSystem& sys, int max_order);

}  // namespace renormalist
