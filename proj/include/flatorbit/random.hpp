#ifndef FLATORBIT_RANDOM_HPP
#define FLATORBIT_RANDOM_HPP

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "flatorbit/rational.hpp"

namespace flatorbit {

inline constexpr std::uint64_t default_seed = 20240607;

/// Seed for property checks: FLATORBIT_SEED when set and numeric, else a fixed default.
inline std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("FLATORBIT_SEED")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(s, &used);
      if (used == std::string(s).size()) return v;
    } catch (...) {
    }
  }
  return default_seed;
}

/// Small random rationals p/q with |p| <= num_bound, 1 <= q <= den_bound.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, int num_bound = 5, int den_bound = 4)
      : rng_(seed), num_(-num_bound, num_bound), den_(1, den_bound) {}

  Rational operator()() { return Rational(num_(rng_), den_(rng_)); }

  std::vector<Rational> vector(std::size_t n) {
    std::vector<Rational> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back((*this)());
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> num_;
  std::uniform_int_distribution<int> den_;
};

}  // namespace flatorbit

#endif
