#pragma once

#include <map>

#include "renormalist/colored.hpp"
#include "renormalist/polynomial.hpp"

namespace renormalist {

// Scalar-valued character of the renormalisation group: a multiplicative map
// on coloured negative forests, stored sparsely on canonical coloured-tree
// codes. Unstored keys evaluate through the unit's branch rules
// (1 on the empty forest and on fully coloured trees, 0 otherwise).
class Character {
 public:
  explicit Character(const EdgeSystem* sys) : sys_(sys) {}

  const EdgeSystem& system() const { return *sys_; }

  void set(const Tree& host, const EdgeIds& marks, Polynomial v);
  void set_uncolored(const Tree& host, Polynomial v) { set(host, {}, std::move(v)); }

  // value on one coloured tree component of a host
  Polynomial value(const Tree& host, const EdgeIds& component, const EdgeIds& marks) const;
  // value on a whole tree
  Polynomial value(const Tree& host, const EdgeIds& marks) const;
  Polynomial value_uncolored(const Tree& host) const { return value(host, EdgeIds{}); }
  // multiplicative value on a forest (edge set split into components)
  Polynomial forest_value(const Tree& host, const EdgeIds& forest_edges, const EdgeIds& marks) const;

  const std::map<std::string, Polynomial>& stored() const { return values_; }
  bool is_unit() const { return values_.empty(); }

 private:
  const EdgeSystem* sys_;
  std::map<std::string, Polynomial> values_;
};

// Keys on which group computations are materialised.
struct ColoredKey {
  Tree host;
  EdgeIds marks;
};

// All admissible group colourings of a host: edge sets of negative forests.
std::vector<ColoredKey> coloring_keys(const Tree& host, const EdgeSystem& sys);

// (f * g)(T, That) = sum over forests F >= That of f(T, mark F) g(F, That).
Polynomial star_value(const Character& f, const Character& g, const Tree& host,
                      const EdgeIds& marks);
// Materialise f*g on every colouring of every universe tree.
Character star(const Character& f, const Character& g, const std::vector<Tree>& universe);

// Inverse by potential-depth recursion; materialised on the universe.
Character inverse(const Character& g, const std::vector<Tree>& universe);

}  // namespace renormalist
