#pragma once

#include <limits>
#include <optional>
#include <string>

#include "renormalist/rational.hpp"

namespace renormalist {

// Two-component degree a + b*kappa, kappa a formal positive infinitesimal.
// Ordered lexicographically: (a,b) < (a',b') iff a<a' or (a=a' and b<b').
struct Homogeneity {
  Rational rational_part;
  Rational kappa_part;

  Homogeneity() = default;
  Homogeneity(Rational a) : rational_part(a), kappa_part(0) {}
  Homogeneity(Rational a, Rational k) : rational_part(a), kappa_part(k) {}

  static Homogeneity kappa() { return Homogeneity(Rational(0), Rational(1)); }
  static Homogeneity zero() { return Homogeneity(); }

  // Grammar: sum of signed terms; term = rational | rational '*'? 'kappa' | 'kappa'.
  // Examples: "2 - kappa", "-5/2-1/10*kappa", "3*kappa", "0".
  static Homogeneity parse(const std::string& text);

  bool is_zero() const { return rational_part.is_zero() && kappa_part.is_zero(); }
  bool is_natural() const { return kappa_part.is_zero() && rational_part.is_natural(); }

  Homogeneity operator-() const { return {-rational_part, -kappa_part}; }
  Homogeneity& operator+=(const Homogeneity& o) {
    rational_part += o.rational_part;
    kappa_part += o.kappa_part;
    return *this;
  }
  Homogeneity& operator-=(const Homogeneity& o) { return *this += -o; }
  friend Homogeneity operator+(Homogeneity a, const Homogeneity& b) { return a += b; }
  friend Homogeneity operator-(Homogeneity a, const Homogeneity& b) { return a -= b; }
  friend Homogeneity operator*(const Rational& c, const Homogeneity& h) {
    return {c * h.rational_part, c * h.kappa_part};
  }

  friend bool operator==(const Homogeneity& a, const Homogeneity& b) {
    return a.rational_part == b.rational_part && a.kappa_part == b.kappa_part;
  }
  friend bool operator!=(const Homogeneity& a, const Homogeneity& b) { return !(a == b); }
  friend bool operator<(const Homogeneity& a, const Homogeneity& b) {
    if (a.rational_part != b.rational_part) return a.rational_part < b.rational_part;
    return a.kappa_part < b.kappa_part;
  }
  friend bool operator>(const Homogeneity& a, const Homogeneity& b) { return b < a; }
  friend bool operator<=(const Homogeneity& a, const Homogeneity& b) { return !(b < a); }
  friend bool operator>=(const Homogeneity& a, const Homogeneity& b) { return !(a < b); }

  Rational substitute(const Rational& kappa_value) const {
    return rational_part + kappa_part * kappa_value;
  }
  double to_double(double kappa_value) const {
    return rational_part.to_double() + kappa_part.to_double() * kappa_value;
  }

  std::string str() const;
};

// Homogeneity extended with +infinity, as needed by the second grading.
struct ExtHomogeneity {
  bool infinite = false;
  Homogeneity value;

  ExtHomogeneity() = default;
  ExtHomogeneity(Homogeneity h) : infinite(false), value(h) {}
  static ExtHomogeneity inf() {
    ExtHomogeneity e;
    e.infinite = true;
    return e;
  }
  friend bool operator==(const ExtHomogeneity& a, const ExtHomogeneity& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator<(const ExtHomogeneity& a, const ExtHomogeneity& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtHomogeneity& a, const ExtHomogeneity& b) { return a == b || a < b; }
  friend ExtHomogeneity operator+(const ExtHomogeneity& a, const ExtHomogeneity& b) {
    if (a.infinite || b.infinite) return inf();
    return ExtHomogeneity(a.value + b.value);
  }
  static ExtHomogeneity min(const ExtHomogeneity& a, const ExtHomogeneity& b) { return a < b ? a : b; }
  std::string str() const { return infinite ? "+inf" : value.str(); }
};

}  // namespace renormalist
