#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "renormalist/generate.hpp"

using namespace renormalist;
using renormalist::testing::gpam;
using renormalist::testing::phi34;
using renormalist::testing::phi43;

TEST_CASE("tree product and graft basics") {
  Fixture fx = phi43();
  const EdgeSystem& sys = *fx.sys;
  Tree xi = Tree::single_edge(sys.require("Xi"));
  Tree ixi = Tree::graft(sys.require("I"), xi);

  // T . bullet = T
  std::vector<Tree> with_unit{ixi, Tree()};
  CHECK(Tree::product(with_unit) == ixi);

  // (I Xi)(I Xi): cherry with S_rho = 2
  std::vector<Tree> pair{ixi, ixi};
  Tree cherry = Tree::product(pair);
  CHECK(symmetry_factors_per_node(cherry)[0] == 2);
  CHECK(symmetry_factor(cherry) == 2);

  // three identical branches: S_rho = 6
  std::vector<Tree> triple{ixi, ixi, ixi};
  Tree phi4 = Tree::product(triple);
  CHECK(symmetry_factors_per_node(phi4)[0] == 6);
  CHECK(symmetry_factor(phi4) == 6);

  // product is associative and commutative up to isomorphism
  std::vector<Tree> ab{ixi, cherry};
  std::vector<Tree> ba{cherry, ixi};
  CHECK(Tree::product(ab) == Tree::product(ba));
  CHECK(Tree::product(ab) == phi4);

  // degree additivity
  CHECK(tree_homogeneity(phi4, sys) ==
        tree_homogeneity(cherry, sys) + tree_homogeneity(ixi, sys));
  CHECK(tree_homogeneity(Tree::graft(sys.require("I"), cherry), sys) ==
        sys.edge(sys.require("I")).degree + tree_homogeneity(cherry, sys));
}

TEST_CASE("homogeneity examples") {
  Fixture fx = phi43();
  const EdgeSystem& sys = *fx.sys;
  Tree xi = Tree::single_edge(sys.require("Xi"));
  CHECK(tree_homogeneity(xi, sys) == Homogeneity::parse("-5/2-kappa"));
  Tree ixi = Tree::graft(sys.require("I"), xi);
  std::vector<Tree> pair{ixi, ixi};
  CHECK(tree_homogeneity(Tree::product(pair), sys) == Homogeneity::parse("-1-4*kappa"));
  CHECK(tree_homogeneity(Tree::single_edge(sys.require("dI")), sys).is_zero());
}

TEST_CASE("canonical code iff isomorphic (bijection-search oracle)") {
  Fixture fx = phi43();
  const EdgeSystem& sys = *fx.sys;
  std::vector<int> types{sys.require("I"), sys.require("Xi"), sys.require("dI")};
  auto universe = oracle::all_trees(5, types);
  std::mt19937 rng(12345);
  // sampled pairs plus equal-code pairs
  for (int trial = 0; trial < 400; ++trial) {
    const Tree& a = universe[rng() % universe.size()];
    const Tree& b = universe[rng() % universe.size()];
    CHECK((a.code() == b.code()) == oracle::isomorphic(a, b));
  }
  // randomly relinked copies stay isomorphic to themselves
  for (int trial = 0; trial < 50; ++trial) {
    Tree t = oracle::random_tree(rng, 8, types);
    CHECK(oracle::isomorphic(t, t));
  }
}

TEST_CASE("symmetry factor equals automorphism count") {
  Fixture fx = phi43();
  const EdgeSystem& sys = *fx.sys;
  std::vector<int> types{sys.require("I"), sys.require("Xi"), sys.require("dI")};
  for (const Tree& t : oracle::all_trees(5, types))
    CHECK(symmetry_factor(t) == oracle::automorphism_count(t));
}

TEST_CASE("plane count examples and oracle") {
  Fixture fxp = phi43();
  const EdgeSystem& sp = *fxp.sys;
  Tree xi = Tree::single_edge(sp.require("Xi"));
  CHECK(plane_count(xi) == 1);

  Tree ixi = Tree::graft(sp.require("I"), xi);
  std::vector<Tree> triple{ixi, ixi, ixi};
  CHECK(plane_count(Tree::product(triple)) == 1);  // 3!/3!

  Fixture fxg = gpam();
  const EdgeSystem& sg = *fxg.sys;
  Tree gxi = Tree::single_edge(sg.require("Xi"));
  std::vector<Tree> mixed{gxi, Tree::graft(sg.require("I"), gxi)};
  CHECK(plane_count(Tree::product(mixed)) == 2);  // 2!/1

  std::vector<int> types{sp.require("I"), sp.require("Xi")};
  for (const Tree& t : oracle::all_trees(5, types)) {
    CHECK(plane_count(t) == oracle::plane_count(t));
    // plane_count * S = prod over nodes of (child count)!
    long long prod = 1;
    for (auto& kids : t.children()) {
      long long f = 1;
      for (size_t i = 2; i <= kids.size(); ++i) f *= static_cast<long long>(i);
      prod *= f;
    }
    CHECK(plane_count(t) * symmetry_factor(t) == prod);
  }
}

TEST_CASE("tree term parser round trip") {
  Fixture fx = phi34();
  const EdgeSystem& sys = *fx.sys;
  for (const char* term : {"Xi", "I(Xi)*I(Xi)", "I(Xi)*I(I(Xi))", "dI*I(Xi)",
                           "I(I(Xi)*I(Xi))*I(I(Xi)*I(Xi))"}) {
    Tree t = parse_tree_term(sys, term);
    CHECK(parse_tree_term(sys, tree_term(t, sys)) == t);
  }
  CHECK_THROWS_AS(parse_tree_term(sys, "Q(Xi)"), EdgeError);
  CHECK_THROWS_AS(parse_tree_term(sys, "I(Xi"), TreeError);
}

TEST_CASE("generate_trees: fixture tree sets match the displays") {
  SUBCASE("g-PAM") {
    Fixture fx = gpam();
    const EdgeSystem& sys = *fx.sys;
    auto rhs = fx.run_sector(*fx.sector("rhs"));
    REQUIRE(rhs.size() == 4);
    std::set<std::string> got;
    for (const Tree& t : rhs) got.insert(t.code());
    std::set<std::string> want{
        parse_tree_term(sys, "df0*Xi").code(),
        parse_tree_term(sys, "df1*Xi*I(df0*Xi)").code(),
        parse_tree_term(sys, "df1*dI*Xi").code(),
        parse_tree_term(sys, "dA0*bI(df0*Xi)*bI(df0*Xi)").code(),
    };
    CHECK(got == want);

    auto sol = fx.run_sector(*fx.sector("solution"));
    REQUIRE(sol.size() == 2);
    std::set<std::string> got_sol;
    for (const Tree& t : sol) got_sol.insert(t.code());
    CHECK(got_sol == std::set<std::string>{parse_tree_term(sys, "I(df0*Xi)").code(),
                                           parse_tree_term(sys, "dI").code()});
  }
  SUBCASE("phi43") {
    Fixture fx = phi43();
    const EdgeSystem& sys = *fx.sys;
    auto sol = fx.run_sector(*fx.sector("solution"));
    CHECK(sol.size() == 4);
    auto rhs = fx.run_sector(*fx.sector("rhs"));
    REQUIRE(rhs.size() == 8);
    std::set<std::string> got;
    for (const Tree& t : rhs) got.insert(t.code());
    std::set<std::string> want{
        parse_tree_term(sys, "Xi").code(),
        parse_tree_term(sys, "I(Xi)*I(Xi)*I(Xi)").code(),
        parse_tree_term(sys, "dI*I(Xi)*I(Xi)").code(),
        parse_tree_term(sys, "dI*dI*I(Xi)").code(),
        parse_tree_term(sys, "dI*dI*dI").code(),
        parse_tree_term(sys, "I(Xi)*I(Xi)*I(I(Xi)*I(Xi)*I(Xi))").code(),
        parse_tree_term(sys, "dI*I(Xi)*I(I(Xi)*I(Xi)*I(Xi))").code(),
        parse_tree_term(sys, "I(Xi)*I(Xi)*I(dI*I(Xi)*I(Xi))").code(),
    };
    CHECK(got == want);
  }
  SUBCASE("phi34") {
    Fixture fx = phi34();
    const EdgeSystem& sys = *fx.sys;
    auto sol = fx.run_sector(*fx.sector("solution"));
    REQUIRE(sol.size() == 5);
    std::set<std::string> got_sol;
    for (const Tree& t : sol) got_sol.insert(t.code());
    std::set<std::string> want_sol{
        parse_tree_term(sys, "dI").code(),
        parse_tree_term(sys, "I(Xi)").code(),
        parse_tree_term(sys, "I(I(Xi)*I(Xi))").code(),
        parse_tree_term(sys, "I(I(Xi)*I(I(Xi)*I(Xi)))").code(),
        parse_tree_term(sys, "I(dI*I(Xi))").code(),
    };
    CHECK(got_sol == want_sol);

    auto rhs = fx.run_sector(*fx.sector("rhs"));
    REQUIRE(rhs.size() == 9);
    std::set<std::string> got;
    for (const Tree& t : rhs) got.insert(t.code());
    std::set<std::string> want{
        parse_tree_term(sys, "Xi").code(),
        parse_tree_term(sys, "I(Xi)*I(Xi)").code(),
        parse_tree_term(sys, "I(Xi)*I(I(Xi)*I(Xi))").code(),
        parse_tree_term(sys, "I(Xi)*I(I(Xi)*I(I(Xi)*I(Xi)))").code(),
        parse_tree_term(sys, "I(I(Xi)*I(Xi))*I(I(Xi)*I(Xi))").code(),
        parse_tree_term(sys, "dI*I(Xi)").code(),
        parse_tree_term(sys, "dI*dI").code(),
        parse_tree_term(sys, "dI*I(I(Xi)*I(Xi))").code(),
        parse_tree_term(sys, "I(Xi)*I(dI*I(Xi))").code(),
    };
    CHECK(got == want);
  }
}

TEST_CASE("generate_trees output closed under root-child subtrees") {
  for (Fixture fx : {phi43(), phi34()}) {
    const EdgeSystem& sys = *fx.sys;
    auto rhs = fx.run_sector(*fx.sector("rhs"));
    std::set<std::string> codes;
    GenerateConfig cfg;
    cfg.gamma = Homogeneity::parse("100");  // conformity only, no real cutoff
    auto everything = generate_trees(*fx.rule, sys.require("I"), GenerateConfig{
        fx.sector("rhs")->gamma, 100000});
    for (const Tree& t : everything) codes.insert(t.code());
    for (const Tree& t : rhs)
      for (auto& b : t.branches()) {
        if (b.child.edge_count() == 0) continue;
        // the subtree above a kernel edge is itself a conforming tree rooted
        // at a rule entry; regenerate with its own degree as cutoff + slack
        GenerateConfig sub_cfg{tree_homogeneity(b.child, sys) + Homogeneity::parse("kappa"),
                               100000};
        auto regen = generate_trees(*fx.rule, sys.edge(b.edge).cls == EdgeClass::Plus
                                                  ? b.edge
                                                  : sys.require("I"),
                                    sub_cfg);
        bool found = false;
        for (const Tree& s : regen)
          if (s == b.child) found = true;
        CHECK(found);
      }
  }
}

TEST_CASE("generation budget error flags runaway inputs") {
  Fixture fx = phi43();
  Fixture fx2 = phi43();
  GenerateConfig cfg{Homogeneity::parse("1/4"), 20};
  CHECK_THROWS_AS(generate_trees(*fx2.rule, fx2.sys->require("I"), cfg), BudgetError);
  (void)fx;
}
