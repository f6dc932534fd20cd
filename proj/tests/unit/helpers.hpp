#pragma once

#include <doctest.h>

#include <random>

#include "shafstats/error.hpp"

#define CHECK_ERROR_KIND(expr, expected)                          \
  do {                                                            \
    bool thrown_ = false;                                         \
    try {                                                         \
      (void)(expr);                                               \
    } catch (const shafstats::Error& e) {                         \
      thrown_ = true;                                             \
      CHECK_MESSAGE(e.kind() == (expected), "got ", e.what());    \
    }                                                             \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr);      \
  } while (false)

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eedULL);
  return gen;
}

}  // namespace testing
