#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace setscan {

// splitmix64 finalizer; used to derive named substreams from a master seed so
// parallel or reordered work still produces identical streams.
uint64_t mix64(uint64_t x);
uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path);

// Deterministic generator. mt19937_64 output is fixed by the standard, and the
// uniform/normal mappings below avoid the implementation-defined std
// distributions, so a fixed seed reproduces sequences bit for bit.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // [0, 1)
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  double normal();  // standard normal, Box-Muller pair with cache

  // [0, n), unbiased
  int uniform_int(int n);

private:
  std::mt19937_64 eng_;
  bool cached_ = false;
  double cache_ = 0.0;
};

}  // namespace setscan
