#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "renormalist/character.hpp"
#include "renormalist/generate.hpp"
#include "renormalist/renorm_eq.hpp"

namespace renormalist {

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg) {}
};

// Minimal flat TOML subset: [section], [[array-of-tables]], key = value with
// strings, integers, booleans, arrays and inline tables.
struct TomlValue;
using TomlArray = std::vector<TomlValue>;
struct TomlTable {
  std::map<std::string, TomlValue> entries;
  std::vector<std::string> order;  // insertion order for serialisation
  TomlValue& set(const std::string& key, TomlValue v);
  const TomlValue* find(const std::string& key) const;
};
bool operator==(const TomlTable& a, const TomlTable& b);
struct TomlValue {
  std::variant<std::string, long long, bool, TomlArray, TomlTable> v;
  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_table() const { return std::holds_alternative<TomlTable>(v); }
  bool is_array() const { return std::holds_alternative<TomlArray>(v); }
  const std::string& str() const;
  long long integer() const;
  bool boolean() const;
  const TomlArray& array() const;
  const TomlTable& table() const;
  TomlTable& table();
  friend bool operator==(const TomlValue& a, const TomlValue& b);
};

TomlTable parse_toml(const std::string& text);
std::string serialize_toml(const TomlTable& doc);

// ---------------------------------------------------------------------------

struct SectorSpec {
  std::string name;
  std::string edge;                     // target edge type
  bool planted = false;                 // solution sector (graft + placeholder)
  Homogeneity gamma;
  std::vector<std::vector<std::string>> roots;  // optional explicit root types
};

// Parsed fixture: alphabet, rule, sectors, equation, character, settings.
struct Fixture {
  std::string name;
  int version = 1;
  Rational kappa_numeric = Rational(1, 100);
  std::shared_ptr<EdgeSystem> sys;
  std::shared_ptr<Rule> rule;
  std::vector<SectorSpec> sectors;
  EquationSpec equation;
  bool has_equation = false;
  std::shared_ptr<Character> character;
  std::vector<std::pair<std::string, std::string>> character_terms;  // (tree term, polynomial)
  long long node_budget = 200000;

  const SectorSpec* sector(const std::string& n) const {
    for (auto& s : sectors)
      if (s.name == n) return &s;
    return nullptr;
  }
  std::vector<NodeType> sector_roots(const SectorSpec& s) const;
  std::vector<Tree> run_sector(const SectorSpec& s) const;
};

Fixture load_fixture(const std::string& path);
Fixture fixture_from_toml(const TomlTable& doc);

}  // namespace renormalist
