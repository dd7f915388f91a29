#pragma once

#include <map>
#include <string>
#include <vector>

#include "renormalist/rational.hpp"

namespace renormalist {

// Exact-rational polynomial in named constants; equality is normal-form
// equality (zero terms pruned, monomials sorted).
class Polynomial {
 public:
  using Monomial = std::vector<std::pair<std::string, int>>;  // sorted, exps > 0

  Polynomial() = default;
  Polynomial(Rational c) {
    if (!c.is_zero()) terms_[{}] = c;
  }
  static Polynomial symbol(const std::string& name, int power = 1) {
    Polynomial p;
    p.terms_[{{name, power}}] = Rational(1);
    return p;
  }
  static Polynomial parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() &&
           terms_.begin()->second == Rational(1);
  }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Polynomial& operator+=(const Polynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) out.add_term(merge(ma, mb), ca * cb);
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_[m] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  static Monomial merge(const Monomial& a, const Monomial& b) {
    std::map<std::string, int> acc;
    for (auto& [s, e] : a) acc[s] += e;
    for (auto& [s, e] : b) acc[s] += e;
    Monomial out;
    for (auto& [s, e] : acc)
      if (e != 0) out.push_back({s, e});
    return out;
  }
  std::map<Monomial, Rational> terms_;
};

}  // namespace renormalist
