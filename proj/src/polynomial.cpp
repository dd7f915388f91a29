#include "renormalist/polynomial.hpp"

#include <cctype>

namespace renormalist {

namespace {

struct Cur {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  bool at_digit() {
    skip();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  bool at_alpha() {
    skip();
    return i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_');
  }
  Rational number() {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    long long num = std::stoll(s.substr(start, i - start));
    if (eat('/')) {
      skip();
      size_t d0 = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      return Rational(num, std::stoll(s.substr(d0, i - d0)));
    }
    return Rational(num);
  }
  std::string ident() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    return s.substr(start, i - start);
  }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
  Cur c{text};
  Polynomial out;
  bool first = true;
  while (!c.done()) {
    Rational sign(1);
    if (c.eat('+')) sign = Rational(1);
    else if (c.eat('-')) sign = Rational(-1);
    else if (!first) throw RationalError("expected +/- in polynomial: '" + text + "'");
    first = false;

    Polynomial term(sign);
    bool any = false;
    while (true) {
      if (c.at_digit()) term = term * Polynomial(c.number());
      else if (c.at_alpha()) {
        std::string sym = c.ident();
        int pow = 1;
        if (c.eat('^')) pow = static_cast<int>(c.number().num());
        term = term * Polynomial::symbol(sym, pow);
      } else {
        break;
      }
      any = true;
      if (!c.eat('*')) break;
    }
    if (!any) throw RationalError("empty term in polynomial: '" + text + "'");
    out += term;
  }
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < Rational(0)) { out += "-"; a = -a; }
    } else {
      out += a < Rational(0) ? " - " : " + ";
      if (a < Rational(0)) a = -a;
    }
    first = false;
    bool coeff_one = (a == Rational(1)) && !m.empty();
    if (!coeff_one) out += a.str();
    bool started = !coeff_one;
    for (auto& [s, e] : m) {
      if (started) out += "*";
      out += s;
      if (e != 1) out += "^" + std::to_string(e);
      started = true;
    }
  }
  return out;
}

}  // namespace renormalist
