#pragma once

#include <cstdlib>
#include <string>

#include "ladderlab/config.hpp"
#include "ladderlab/ladder.hpp"

#ifndef LADDERLAB_TEST_CACHE
#define LADDERLAB_TEST_CACHE "ladder_test_cache.csv"
#endif

namespace testsupport {

// Covers the reverse iteration of [pi L, pi L + U] up to L = 9000, U = 0.7.
inline double shared_t_max() { return ladderlab::config::required_t_max({9000}, {0.7}); }

// One table per process, loaded from (or written to) the shared cache file.
inline const ladderlab::ladder::LadderTable& table() {
  static const auto t = [] {
    const char* env = std::getenv("LADDERLAB_TEST_CACHE");
    const std::string path = env && *env ? env : LADDERLAB_TEST_CACHE;
    return ladderlab::ladder::LadderTable::load_or_build(path, shared_t_max());
  }();
  return t;
}

inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace testsupport
