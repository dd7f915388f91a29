#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace renormalist {

struct RationalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational on int64 with overflow-checked arithmetic. Denominator > 0,
// gcd-reduced. Magnitudes in this project stay tiny (homogeneities, symmetry
// factors, fit bookkeeping), so int64 with __int128 intermediates is plenty.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

  static Rational parse(const std::string& text);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_natural() const { return den_ == 1 && num_ >= 0; }

  Rational operator-() const { return Rational(checked_neg(num_), den_, Raw{}); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw RationalError("division by zero rational");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return double(num_) / double(den_); }
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  struct Raw {};
  Rational(long long n, long long d, Raw) : num_(n), den_(d) {}
  static __int128 i128(long long v) { return static_cast<__int128>(v); }
  static long long narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw RationalError("rational overflow");
    return static_cast<long long>(v);
  }
  static long long checked_neg(long long v) {
    if (v == INT64_MIN) throw RationalError("rational overflow");
    return -v;
  }
  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw RationalError("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) { n /= g; d /= g; }
    return Rational(narrow(n), narrow(d), Raw{});
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }
  void reduce() { *this = from128(num_, den_); }

  long long num_, den_;
};

inline Rational Rational::parse(const std::string& text) {
  size_t slash = text.find('/');
  auto parse_int = [](const std::string& s) -> long long {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos != s.size()) throw RationalError("trailing characters in rational: '" + s + "'");
    return v;
  };
  try {
    if (slash == std::string::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw RationalError("cannot parse rational: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw RationalError("rational out of range: '" + text + "'");
  }
}

}  // namespace renormalist
