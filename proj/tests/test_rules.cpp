#include "doctest.h"
#include "helpers.hpp"
#include "renormalist/renorm_eq.hpp"
#include "renormalist/rule.hpp"

using namespace renormalist;
using renormalist::testing::gpam;
using renormalist::testing::phi34;
using renormalist::testing::phi43;

namespace {

NodeType nt(const EdgeSystem& sys, std::initializer_list<const char*> ids) {
  std::vector<int> e;
  for (const char* id : ids) e.push_back(sys.require(id));
  return NodeType(std::move(e));
}

bool has_entry(const Rule& r, int edge, const NodeType& n) {
  const auto& es = r.entries(edge);
  return std::find(es.begin(), es.end(), n) != es.end();
}

}  // namespace

TEST_CASE("normalize_rule: phi34 naive closure") {
  Fixture fx = phi34();  // fixture already normalised
  const EdgeSystem& sys = *fx.sys;
  int I = sys.require("I");
  // [I,I],[Xi] -> adds [dI,I] and [dI,dI]
  CHECK(fx.rule->entries(I).size() == 4);
  CHECK(has_entry(*fx.rule, I, nt(sys, {"I", "I"})));
  CHECK(has_entry(*fx.rule, I, nt(sys, {"dI", "I"})));
  CHECK(has_entry(*fx.rule, I, nt(sys, {"dI", "dI"})));
  CHECK(has_entry(*fx.rule, I, nt(sys, {"Xi"})));
  CHECK(is_normal(*fx.rule));
  // idempotent
  CHECK(normalize_rule(*fx.rule).same_entries(*fx.rule));
}

TEST_CASE("normalize_rule: minus/zero-only rule unchanged, monotone") {
  Fixture fx = phi43();
  const EdgeSystem& sys = *fx.sys;
  int I = sys.require("I");
  Rule small(&sys);
  small.add(I, nt(sys, {"Xi"}));
  CHECK(normalize_rule(small).same_entries(small));

  // monotone: subset rule normalises into the larger one's normalisation
  Rule large(&sys);
  large.add(I, nt(sys, {"Xi"}));
  large.add(I, nt(sys, {"I", "I", "I"}));
  Rule norm_small = normalize_rule(small), norm_large = normalize_rule(large);
  for (const NodeType& n : norm_small.entries(I)) CHECK(has_entry(norm_large, I, n));
  CHECK(norm_large.entries(I).size() == 5);
}

TEST_CASE("normalize preserves equation-like; g-PAM via spde_to_rule") {
  Fixture fx = gpam();
  const EdgeSystem& sysc = *fx.sys;
  // normalise the naive g-PAM table: closure adds [df1,dI,Xi]-type and the
  // A-branch placeholder variants
  Rule norm = normalize_rule(*fx.rule);
  int I = sysc.require("I");
  CHECK(has_entry(norm, I, nt(sysc, {"df1", "dI", "Xi"})));
  CHECK(has_entry(norm, I, nt(sysc, {"dA0", "dbI", "bI"})));
  CHECK(has_entry(norm, I, nt(sysc, {"dA0", "dbI", "dbI"})));
  CHECK(norm.entries(I).size() == 6);
  CHECK(is_equation_like(*fx.rule));
  CHECK(is_equation_like(norm));
}

TEST_CASE("equation-like witness: two free zero edges") {
  Fixture fx = gpam();
  const EdgeSystem& sys = *fx.sys;
  Rule bad(&sys);
  int I = sys.require("I");
  bad.add(I, nt(sys, {"df0", "Xi"}));
  bad.add(I, nt(sys, {"df0", "df0", "Xi", "Xi"}));  // two non-iota zeros
  auto witness = equation_like_witness(bad);
  REQUIRE(witness.has_value());
  CHECK(witness->edge == I);
  CHECK(witness->node == nt(sys, {"df0", "df0", "Xi", "Xi"}));
  // placeholders (iota images) do not count as free zero edges
  Rule ok(&sys);
  ok.add(I, nt(sys, {"dI", "dI", "df0", "Xi"}));
  CHECK(is_equation_like(ok));
}

TEST_CASE("subcriticality of the three fixtures") {
  for (Fixture fx : {gpam(), phi43(), phi34()}) {
    auto res = is_subcritical(*fx.rule);
    CHECK_MESSAGE(res.subcritical, fx.name);
    // strictness: reg(k) < |k| + min over entries of the reg sum
    const EdgeSystem& sys = *fx.sys;
    for (int k = 0; k < sys.size(); ++k) {
      if (!sys.is_plus(k)) continue;
      bool first = true;
      Homogeneity best;
      for (const NodeType& nu : fx.rule->entries(k)) {
        Homogeneity s;
        for (int e : nu.edges) s += res.reg.at(e);
        if (first || s < best) {
          best = s;
          first = false;
        }
      }
      CHECK(res.reg.at(k) < sys.edge(k).degree + best);
    }
  }
}

TEST_CASE("subcriticality: g-PAM with |Xi| = -3 rejected within budget") {
  Fixture fx = gpam();
  EdgeSystem sys = *fx.sys;
  EdgeSystem modified;
  modified.labels = sys.labels;
  for (int i = 0; i < sys.size(); ++i) {
    EdgeType e = sys.edge(i);
    if (e.id == "Xi") e.degree = Homogeneity::parse("-3");
    modified.add(e);
  }
  Rule r(&modified);
  for (int k = 0; k < modified.size(); ++k)
    if (modified.is_plus(k))
      for (const NodeType& nu : fx.rule->entries(k)) r.add(k, nu);
  auto res = is_subcritical(r);
  CHECK(!res.subcritical);
  CHECK(res.steps <= 50);  // iteration trace stays well within the budget
}

TEST_CASE("subcriticality: trivial rule R(k) = {[Xi]}") {
  Fixture fx = phi43();
  const EdgeSystem& sys = *fx.sys;
  int I = sys.require("I");
  Rule r(&sys);
  r.add(I, nt(sys, {"Xi"}));
  auto res = is_subcritical(r);
  REQUIRE(res.subcritical);
  // reg(k) = |k| + |Xi| - kappa
  Homogeneity want = sys.edge(I).degree + sys.edge(sys.require("Xi")).degree - Homogeneity::kappa();
  CHECK(res.reg.at(I) == want);
}

TEST_CASE("subcriticality errors on empty entry sets") {
  Fixture fx = phi43();
  Rule r(fx.sys.get());
  CHECK_THROWS_AS(is_subcritical(r), RuleError);
}

TEST_CASE("spde_to_rule: g-PAM naive rule") {
  Fixture fx = gpam();
  EdgeSystem sys = *fx.sys;  // copy; spde_to_rule may add edges
  EquationSpec eq = fx.equation;
  eq.sys = &sys;
  auto res = spde_to_rule(eq, sys, 1);
  int I = sys.require("I"), bI = sys.require("bI");
  // {[df0,Xi], [df1,I,Xi], [dA0,bI,bI]} on both kernel edges
  CHECK(res.naive.entries(I).size() == 3);
  CHECK(has_entry(res.naive, I, nt(sys, {"df0", "Xi"})));
  CHECK(has_entry(res.naive, I, nt(sys, {"df1", "I", "Xi"})));
  CHECK(has_entry(res.naive, I, nt(sys, {"dA0", "bI", "bI"})));
  CHECK(res.naive.sorted()[I] == res.naive.sorted()[bI]);
  res.naive.validate();  // index condition holds for the generated edges
  CHECK(res.naive.same_entries(*fx.rule));
  // with a larger truncation the f-branch keeps growing
  EdgeSystem sys3 = *fx.sys;
  EquationSpec eq3 = fx.equation;
  eq3.sys = &sys3;
  auto res3 = spde_to_rule(eq3, sys3, 3);
  CHECK(res3.naive.entries(sys3.require("I")).size() == 5);
}

TEST_CASE("spde_to_rule: scalar phi43 suppresses constant-coefficient jets") {
  Fixture fx = phi43();
  EdgeSystem sys = *fx.sys;
  EquationSpec eq = fx.equation;
  eq.sys = &sys;
  auto res = spde_to_rule(eq, sys, 2);
  int I = sys.require("I");
  CHECK(res.naive.entries(I).size() == 2);
  CHECK(has_entry(res.naive, I, nt(sys, {"I", "I", "I"})));
  CHECK(has_entry(res.naive, I, nt(sys, {"Xi"})));
  CHECK(res.added_zero_edges.empty());
}

TEST_CASE("spde_to_rule: linear equation") {
  Fixture fx = phi43();
  EdgeSystem sys = *fx.sys;
  EquationSpec eq;
  eq.sys = &sys;
  SymTerm noise;
  noise.powers["Xi"] = 1;
  eq.rhs["u"] = SymbolicExpr(noise);
  auto res = spde_to_rule(eq, sys, 3);
  int I = sys.require("I");
  REQUIRE(res.naive.entries(I).size() == 1);
  CHECK(res.naive.entries(I)[0] == nt(sys, {"Xi"}));
}

TEST_CASE("rule index validation catches mismatches") {
  Fixture fx = gpam();
  const EdgeSystem& sys = *fx.sys;
  Rule bad(&sys);
  bad.add(sys.require("I"), nt(sys, {"Xi"}));  // ind = [xi] != [u]
  CHECK_THROWS_AS(bad.validate(), RuleError);
  CHECK_NOTHROW(bad.validate(false));
  CHECK_NOTHROW(fx.rule->validate());
}
