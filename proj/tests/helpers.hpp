#pragma once

#include <cstdlib>
#include <string>

#include "renormalist/config.hpp"

#ifndef FIXTURES_DIR
#define FIXTURES_DIR "fixtures"
#endif

namespace renormalist::testing {

inline std::string fixtures_dir() {
  if (const char* env = std::getenv("RENORMALIST_FIXTURES")) return env;
  return FIXTURES_DIR;
}

inline Fixture gpam() { return load_fixture(fixtures_dir() + "/gpam.toml"); }
inline Fixture phi43() { return load_fixture(fixtures_dir() + "/phi43.toml"); }
inline Fixture phi34() { return load_fixture(fixtures_dir() + "/phi34.toml"); }

}  // namespace renormalist::testing
