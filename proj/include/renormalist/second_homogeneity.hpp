#pragma once

#include <map>
#include <string>

#include "renormalist/subforest.hpp"

namespace renormalist {

// The second grading ||T||_{delta0}. Memoised on (canonical code, delta0);
// alpha_lower shares the context so nested calls reuse cut minima.
class SecondHomogeneity {
 public:
  explicit SecondHomogeneity(const EdgeSystem& sys) : sys_(sys) {}

  ExtHomogeneity norm(const Tree& t, const Homogeneity& delta0);
  Homogeneity alpha_lower(const Tree& t);

  // The delta0 -> infinity limit of ||T||_{delta0}; infinite means the value
  // grows without bound (or is literally +inf for all delta0).
  ExtHomogeneity norm_limit(const Tree& t);

 private:
  const EdgeSystem& sys_;
  std::map<std::string, ExtHomogeneity> norm_memo_;
  std::map<std::string, ExtHomogeneity> limit_memo_;
  std::map<std::string, Homogeneity> alpha_memo_;
};

}  // namespace renormalist
