#pragma once

// Small seeded generators for the property tests.

#include <cstdint>
#include <cmath>
#include <random>

namespace testgen {

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  /// log-uniform on [lo, hi], lo > 0
  double scale(double lo, double hi);

private:
  std::mt19937_64 rng_;
};

inline double Gen::scale(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

} // namespace testgen
