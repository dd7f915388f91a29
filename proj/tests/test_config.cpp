#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "renormalist/config.hpp"

using namespace renormalist;

TEST_CASE("toml subset parser") {
  const char* text = R"(
version = 1
name = "demo"   # comment
flag = true

[table]
key = "value"
nums = [1, 2, 3]
nested = [["a", "b"], ["c"]]
inline = { x = 1, y = "z" }

[[items]]
id = "first"

[[items]]
id = "second"

[deep.section]
k = 2
)";
  TomlTable doc = parse_toml(text);
  CHECK(doc.find("version")->integer() == 1);
  CHECK(doc.find("name")->str() == "demo");
  CHECK(doc.find("flag")->boolean() == true);
  const TomlTable& t = doc.find("table")->table();
  CHECK(t.find("key")->str() == "value");
  CHECK(t.find("nums")->array().size() == 3);
  CHECK(t.find("nested")->array()[0].array()[1].str() == "b");
  CHECK(t.find("inline")->table().find("y")->str() == "z");
  CHECK(doc.find("items")->array().size() == 2);
  CHECK(doc.find("items")->array()[1].table().find("id")->str() == "second");
  CHECK(doc.find("deep")->table().find("section")->table().find("k")->integer() == 2);

  CHECK_THROWS_AS(parse_toml("a = "), ConfigError);
  CHECK_THROWS_AS(parse_toml("a = 1\na = 2"), ConfigError);
}

TEST_CASE("fixture configs round trip through serialisation") {
  for (const char* name : {"gpam.toml", "phi43.toml", "phi34.toml"}) {
    std::ifstream in(renormalist::testing::fixtures_dir() + "/" + name);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    TomlTable doc = parse_toml(ss.str());
    std::string text = serialize_toml(doc);
    TomlTable again = parse_toml(text);
    CHECK(doc == again);
    // and the reparsed doc builds the same fixture (same rule table)
    Fixture a = fixture_from_toml(doc);
    Fixture b = fixture_from_toml(again);
    CHECK(a.rule->sorted() == b.rule->sorted());
    CHECK(a.name == b.name);
  }
}

TEST_CASE("fixture loading surfaces bad input with context") {
  CHECK_THROWS_AS(load_fixture("/nonexistent/nope.toml"), ConfigError);
  CHECK_THROWS_AS(fixture_from_toml(parse_toml("version = 1")), ConfigError);
  // unknown edge in a rule entry
  const char* broken = R"(
[labels]
pairs = [["u", "u*"]]
[edges.I]
class = "plus"
degree = "2"
plus = "u"
minus = "u*"
[rule]
I = [["nope"]]
)";
  CHECK_THROWS_AS(fixture_from_toml(parse_toml(broken)), EdgeError);
}

TEST_CASE("fixtures expose kappa substitution for numeric export") {
  Fixture fx = renormalist::testing::gpam();
  CHECK(fx.kappa_numeric == Rational(1, 100));
  Homogeneity deg = fx.sys->edge(fx.sys->require("I")).degree;
  CHECK(deg.substitute(fx.kappa_numeric) == Rational(199, 100));
}
