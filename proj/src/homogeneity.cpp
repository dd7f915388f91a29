#include "renormalist/homogeneity.hpp"

#include <cctype>

namespace renormalist {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip_ws();
    size_t j = i;
    for (const char* p = w; *p; ++p, ++j)
      if (j >= s.size() || s[j] != *p) return false;
    if (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) return false;
    i = j;
    return true;
  }
  Rational number() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw RationalError("expected number in homogeneity: '" + s + "'");
    long long num = std::stoll(s.substr(start, i - start));
    long long den = 1;
    size_t save = i;
    if (eat('/')) {
      skip_ws();
      size_t dstart = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == dstart) { i = save; }
      else den = std::stoll(s.substr(dstart, i - dstart));
    }
    return Rational(num, den);
  }
};

}  // namespace

Homogeneity Homogeneity::parse(const std::string& text) {
  Cursor c{text};
  Homogeneity out;
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    if (c.eat('+')) sign = 1;
    else if (c.eat('-')) sign = -1;
    else if (!first) throw RationalError("expected +/- in homogeneity: '" + text + "'");
    first = false;
    if (c.eat_word("kappa")) {
      out.kappa_part += Rational(sign);
      continue;
    }
    Rational r = c.number();
    if (c.eat('*')) {
      if (!c.eat_word("kappa"))
        throw RationalError("expected 'kappa' after '*' in: '" + text + "'");
      out.kappa_part += Rational(sign) * r;
    } else if (c.eat_word("kappa")) {
      out.kappa_part += Rational(sign) * r;
    } else {
      out.rational_part += Rational(sign) * r;
    }
  }
  return out;
}

std::string Homogeneity::str() const {
  if (kappa_part.is_zero()) return rational_part.str();
  std::string out;
  if (!rational_part.is_zero()) out = rational_part.str();
  Rational k = kappa_part;
  if (out.empty()) {
    out = (k == Rational(1)) ? "kappa" : (k == Rational(-1)) ? "-kappa" : k.str() + "*kappa";
  } else {
    if (k > Rational(0))
      out += (k == Rational(1)) ? "+kappa" : "+" + k.str() + "*kappa";
    else {
      Rational a = -k;
      out += (a == Rational(1)) ? "-kappa" : "-" + a.str() + "*kappa";
    }
  }
  return out;
}

}  // namespace renormalist
