#include "setscan/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace setscan {

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
  uint64_t s = mix64(master);
  for (uint64_t p : path) s = mix64(s ^ mix64(p + 0x517cc1b727220a95ull));
  return s;
}

double Rng::normal() {
  if (cached_) {
    cached_ = false;
    return cache_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  cache_ = r * std::sin(a);
  cached_ = true;
  return r * std::cos(a);
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
  const uint64_t bound = static_cast<uint64_t>(n);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return static_cast<int>(v % bound);
}

}  // namespace setscan
