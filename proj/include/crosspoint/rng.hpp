/*
 * (C) Copyright 2026 the crosspoint authors.
 * Licensed under the Apache License, Version 2.0; see
 * http://www.apache.org/licenses/LICENSE-2.0 for the full text.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace crosspoint {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives a child seed from a master seed and an index path, so that
// parallel and serial execution of a sweep draw identical streams.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t p : path) {
    s = splitmix64(s ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
  }
  return s;
}

// Seeded random stream with self-contained distribution transforms.
// Only the mt19937_64 engine comes from the standard library (its output
// sequence is fully specified), so identical seeds reproduce identical
// streams on any platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; two fresh uniforms per call, no cached
  // spare, so the number of engine draws per call is fixed.
  double normal() {
    const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform over {-1, +1}.
  int rademacher() { return (gen_() & 1ULL) ? +1 : -1; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace crosspoint
