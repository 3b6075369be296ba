#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>

#include <doctest.h>

#include "ngf/ngf.hpp"

namespace test {

// Store with a deterministic clock and rng so ids are reproducible.
inline ngf::Store seeded_store(std::uint64_t seed = 1) {
  auto tick = std::make_shared<std::uint64_t>(1'700'000'000'000'000'000ull);
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return ngf::Store([tick] { return ++*tick; }, [rng] { return (*rng)(); });
}

}  // namespace test

#define CHECK_ERRC(expr, errc)                                       \
  do {                                                               \
    try {                                                            \
      (void)(expr);                                                  \
      FAIL_CHECK("expected ngf::Error");                             \
    } catch (const ngf::Error& e) {                                  \
      CHECK_MESSAGE(e.code() == (errc), e.what());                   \
    }                                                                \
  } while (false)
