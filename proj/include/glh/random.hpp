#pragma once

// Seeded random draws of Grassmann elements and group coordinates.

#include <cstdint>
#include <random>

#include "glh/supergroup.hpp"

namespace glh {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive bounds
  // Real and imaginary parts uniform in [-scale, scale].
  Complex complex(double scale = 1.0);
  Complex nonzero_complex(double min_abs, double scale);

  // Every monomial of the requested parity up to max_degree gets a random
  // coefficient. Parity::Mixed draws both parts.
  GrassmannElement element(int n, Parity parity, int max_degree = kMaxGenerators,
                           double scale = 1.0);
  GrassmannElement odd(int n, double scale = 1.0) { return element(n, Parity::Odd, kMaxGenerators, scale); }
  GrassmannElement even(int n, double scale = 1.0) { return element(n, Parity::Even, kMaxGenerators, scale); }
  // Even element with body of modulus at least min_body.
  GrassmannElement invertible_even(int n, double min_body = 0.5, double scale = 1.0);

  // Bodies of h and s are kept small so exponentials stay O(1).
  GroupCoords coords(int n, bool sl = false);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace glh
