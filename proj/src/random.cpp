#include "glh/random.hpp"

#include <bit>

namespace glh {

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int Rng::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Complex Rng::complex(double scale) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

Complex Rng::nonzero_complex(double min_abs, double scale) {
  for (;;) {
    Complex c = complex(scale);
    if (std::abs(c) >= min_abs) return c;
  }
}

GrassmannElement Rng::element(int n, Parity parity, int max_degree, double scale) {
  std::vector<GrassmannElement::Term> terms;
  if (n > 20) {
    // Too many monomials to enumerate: draw linear and quadratic terms only.
    for (int i = 0; i < n; ++i) {
      if (parity != Parity::Even) terms.emplace_back(Monomial{1} << i, complex(scale));
      for (int j = i + 1; j < n && parity != Parity::Odd && max_degree >= 2; ++j) {
        terms.emplace_back((Monomial{1} << i) | (Monomial{1} << j), complex(scale));
      }
    }
    if (parity != Parity::Odd) terms.emplace_back(0, complex(scale));
    return GrassmannElement(n, std::move(terms));
  }
  const Monomial count = Monomial{1} << n;
  for (Monomial m = 0; m < count; ++m) {
    const int deg = std::popcount(m);
    if (deg > max_degree) continue;
    const bool odd = deg % 2 == 1;
    if ((parity == Parity::Even && odd) || (parity == Parity::Odd && !odd)) continue;
    terms.emplace_back(m, complex(scale));
  }
  return GrassmannElement(n, std::move(terms));
}

GrassmannElement Rng::invertible_even(int n, double min_body, double scale) {
  GrassmannElement x = even(n, scale).soul();
  return x + GrassmannElement::scalar(n, nonzero_complex(min_body, 1.0 + min_body));
}

GroupCoords Rng::coords(int n, bool sl) {
  GrassmannElement h = even(n, 0.5);
  GrassmannElement s = sl ? GrassmannElement::zero(n) : even(n, 0.5);
  return {std::move(h), std::move(s), odd(n, 0.5), odd(n, 0.5)};
}

}  // namespace glh
