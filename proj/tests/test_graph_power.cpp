#include "doctest.h"
#include "renormalist/graph_power.hpp"

using namespace renormalist;

namespace {

// second-moment diagram of the g-PAM first-order part: base 0, test slots
// 1, 2, one integrated noise vertex 3 with barred log-kernel legs
LabelledGraph gpam_fixture() {
  LabelledGraph g;
  g.vertex_count = 4;
  g.vstar = {1, 2};
  g.s_norm = Rational(2);
  Rational k(1, 100);
  g.edges.push_back({0, 1, Rational(0), 0});
  g.edges.push_back({0, 2, Rational(0), 0});
  g.edges.push_back({3, 1, k, 1});
  g.edges.push_back({3, 2, k, 1});
  return g;
}

}  // namespace

TEST_CASE("two-vertex violation: single edge with a >= |s|") {
  LabelledGraph g;
  g.vertex_count = 3;
  g.s_norm = Rational(5);
  g.edges.push_back({1, 2, Rational(5), 0});
  auto res = check_assumptions(g);
  REQUIRE(!res.pass);
  CHECK(res.violation->condition == 1);
  CHECK(res.violation->subset == std::vector<int>{1, 2});
  CHECK(res.violation->lhs == Rational(5));
  CHECK(res.violation->rhs == Rational(5));
}

TEST_CASE("empty edge set: vacuous only without internal vertices") {
  LabelledGraph empty_ok;
  empty_ok.vertex_count = 2;
  empty_ok.vstar = {1};
  empty_ok.s_norm = Rational(4);
  CHECK(check_assumptions(empty_ok).pass);  // V \ Vstar empty

  LabelledGraph empty_bad = empty_ok;
  empty_bad.vertex_count = 3;  // vertex 2 internal, no incident weight
  auto res = check_assumptions(empty_bad);
  REQUIRE(!res.pass);
  CHECK(res.violation->condition == 3);
  CHECK(res.violation->subset == std::vector<int>{2});
}

TEST_CASE("g-PAM fixture diagram passes with positive margin") {
  LabelledGraph g = gpam_fixture();
  auto res = check_assumptions(g);
  CHECK(res.pass);
  // alpha~ = 2*1 - 2k > 0 at kappa = 1/100
  CHECK(bound_exponent(g) == Rational(2) - Rational(2, 100));
  CHECK(bound_exponent(g) > Rational(0));
}

TEST_CASE("parallel edges merge by summing labels; merge order irrelevant") {
  LabelledGraph g = gpam_fixture();
  // split one a-label into two parallel edges: same decisions
  g.edges[2].a = Rational(1, 200);
  g.edges.push_back({3, 1, Rational(1, 200), 0});
  auto res = check_assumptions(g);
  CHECK(res.pass);
  LabelledGraph h = gpam_fixture();
  std::swap(h.edges[2], h.edges[3]);
  CHECK(check_assumptions(h).pass == res.pass);
}

TEST_CASE("relabelling invariance") {
  LabelledGraph g = gpam_fixture();
  // swap internal vertex 3 into slot 1 by permuting ids (0<->0, 1->3, 3->1)
  LabelledGraph h;
  h.vertex_count = 4;
  h.vstar = {3, 2};
  h.s_norm = g.s_norm;
  auto perm = [](int v) { return v == 1 ? 3 : v == 3 ? 1 : v; };
  for (auto e : g.edges) h.edges.push_back({perm(e.from), perm(e.to), e.a, e.r});
  CHECK(check_assumptions(h).pass == check_assumptions(g).pass);
  CHECK(bound_exponent(h) == bound_exponent(g));
}

TEST_CASE("input validation") {
  LabelledGraph g = gpam_fixture();
  g.edges.push_back({3, 1, Rational(1, 10), 1});  // second r=1 edge on a pair
  CHECK_THROWS_AS(check_assumptions(g), GraphError);

  LabelledGraph big;
  big.vertex_count = 17;
  big.s_norm = Rational(2);
  CHECK_THROWS_AS(check_assumptions(big), GraphError);

  LabelledGraph bad_r;
  bad_r.vertex_count = 3;
  bad_r.vstar = {1, 2};
  bad_r.s_norm = Rational(2);
  bad_r.edges.push_back({1, 2, Rational(1), 1});  // r=1 between distinguished
  CHECK_THROWS_AS(check_assumptions(bad_r), GraphError);
}

TEST_CASE("bound exponent formula") {
  LabelledGraph g;
  g.vertex_count = 4;  // |V \ Vstar| = 3
  g.s_norm = Rational(5);
  g.edges.push_back({1, 2, Rational(4), 0});
  g.edges.push_back({2, 3, Rational(7), 0});
  CHECK(bound_exponent(g) == Rational(4));  // 5*3 - 11

  LabelledGraph none;
  none.vertex_count = 1;
  none.s_norm = Rational(5);
  CHECK(bound_exponent(none) == Rational(0));
}
