#include "doctest.h"
#include "renormalist/homogeneity.hpp"
#include "renormalist/labels.hpp"

using namespace renormalist;

TEST_CASE("rational arithmetic and parsing") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(1) / Rational(3) == Rational(1, 3));
  CHECK(Rational(-5, 2) < Rational(-2));
  CHECK(Rational::parse("-5/2") == Rational(-5, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational(1, 0), RationalError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), RationalError);
  CHECK(Rational(2, 3).str() == "2/3");
}

TEST_CASE("homogeneity lexicographic order and parsing") {
  Homogeneity a = Homogeneity::parse("2 - kappa");
  CHECK(a.rational_part == Rational(2));
  CHECK(a.kappa_part == Rational(-1));
  CHECK(Homogeneity::parse("-5/2-1/10*kappa").kappa_part == Rational(-1, 10));
  CHECK(Homogeneity::parse("3*kappa") == Homogeneity(Rational(0), Rational(3)));
  CHECK(Homogeneity::parse("0").is_zero());

  // (a,b) < (a',b') iff a<a' or (a=a' and b<b')
  CHECK(Homogeneity::parse("1-3*kappa") < Homogeneity::parse("1-2*kappa"));
  CHECK(Homogeneity::parse("1-3*kappa") < Homogeneity::parse("2-9*kappa"));
  CHECK(Homogeneity::parse("-kappa") < Homogeneity::parse("0"));
  CHECK(Homogeneity::parse("0") < Homogeneity::parse("kappa"));

  CHECK(Homogeneity::parse("3").is_natural());
  CHECK(!Homogeneity::parse("3-kappa").is_natural());
  CHECK(!Homogeneity::parse("-3").is_natural());
  CHECK(!Homogeneity::parse("1/2").is_natural());

  CHECK(Homogeneity::parse("2-kappa").substitute(Rational(1, 100)) == Rational(199, 100));
  CHECK(Homogeneity::parse("2-kappa").str() == "2-kappa");
}

TEST_CASE("red_star reduction") {
  LabelSet labels;
  labels.declare_pair("a", "a*");
  labels.declare_pair("b", "b*");
  int a = labels.id("a"), ad = labels.id("a*"), b = labels.id("b");

  SUBCASE("dual pair partially cancels") {  // {a:2, a*:1} -> {a:1}
    MultiIndex m;
    m.add(a, 2);
    m.add(ad, 1);
    MultiIndex want;
    want.add(a, 1);
    CHECK(m.red_star(labels) == want);
  }
  SUBCASE("dual pair cancels") {  // {a:1, a*:1} -> {}
    MultiIndex m;
    m.add(a, 1);
    m.add(ad, 1);
    CHECK(m.red_star(labels).empty());
  }
  SUBCASE("sign flip via involution") {  // {a:-1} -> {a*:1}
    MultiIndex m;
    m.add(a, -1);
    MultiIndex want;
    want.add(ad, 1);
    CHECK(m.red_star(labels) == want);
  }
  SUBCASE("idempotent and dual-equivariant") {
    for (int ca = -3; ca <= 3; ++ca)
      for (int cad = -2; cad <= 2; ++cad)
        for (int cb = -2; cb <= 2; ++cb) {
          MultiIndex m;
          m.add(a, ca);
          m.add(ad, cad);
          m.add(b, cb);
          MultiIndex r = m.red_star(labels);
          CHECK(r.red_star(labels) == r);
          CHECK(m.dual(labels).red_star(labels) == r.dual(labels));
        }
  }
  SUBCASE("involution has no fixed points") {
    CHECK_THROWS_AS(labels.declare_pair("c", "c"), LabelError);
    CHECK(labels.dual(labels.dual(a)) == a);
    CHECK(labels.dual(a) != a);
  }
}
