#include <doctest.h>

#include <string>

#include "glh/error.hpp"
#include "glh/random.hpp"
#include "glh/supergroup.hpp"

using namespace glh;

namespace {

GrassmannElement t(int n, int i) { return GrassmannElement::generator(n, i); }
GrassmannElement c(int n, Complex v) { return GrassmannElement::scalar(n, v); }

bool coords_close(const GroupCoords& x, const GroupCoords& y) { return x.approx_equal(y, 1e-10); }

}  // namespace

TEST_CASE("identity coordinates give the identity matrix") {
  CHECK(from_coords(GroupCoords::identity(4)).approx_equal(SuperMatrix11::identity(4), 0.0));
}

TEST_CASE("hand-computed SL element") {
  const int n = 2;
  const SuperMatrix11 g = from_coords(GroupCoords::sl(GrassmannElement::zero(n), t(n, 1), t(n, 2)));
  const GrassmannElement half = 0.5 * (t(n, 1) * t(n, 2));
  CHECK(g.a == c(n, 1.0) - half);
  CHECK(g.d == c(n, 1.0) + half);
  CHECK(g.beta == t(n, 2));
  CHECK(g.gamma == t(n, 1));
  CHECK(sdet(g) == c(n, 1.0));
  CHECK(str(g) == -(t(n, 1) * t(n, 2)));
}

TEST_CASE("coordinate product matches matrix product") {
  Rng rng(11);
  for (int k = 0; k < 30; ++k) {
    const GroupCoords x = rng.coords(6, k % 2 == 0);
    const GroupCoords y = rng.coords(6, k % 2 == 0);
    CHECK(from_coords(coords_product(x, y)).approx_equal(from_coords(x) * from_coords(y), 1e-10));
    CHECK(from_coords(coords_inverse(x)).approx_equal(inverse(from_coords(x)), 1e-10));
    CHECK(coords_close(coords_product(x, coords_inverse(x)), GroupCoords::identity(6)));
  }
}

TEST_CASE("SL coordinates are closed under the product") {
  Rng rng(12);
  const GroupCoords x = rng.coords(5, true);
  const GroupCoords y = rng.coords(5, true);
  CHECK(coords_product(x, y).s.is_zero());
}

TEST_CASE("sdet is e^s and multiplicative") {
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    const GroupCoords x = rng.coords(6);
    const GroupCoords y = rng.coords(6);
    const SuperMatrix11 mx = from_coords(x);
    CHECK(sdet(mx).approx_equal(exp_even(x.s)));
    CHECK(sdet(mx * from_coords(y)).approx_equal(sdet(mx) * sdet(from_coords(y))));
  }
}

TEST_CASE("to_coords inverts from_coords") {
  Rng rng(14);
  for (int k = 0; k < 20; ++k) {
    const GroupCoords x = rng.coords(6);
    CHECK(coords_close(to_coords(from_coords(x)), x));
  }
}

TEST_CASE("supertrace is conjugation invariant") {
  Rng rng(15);
  const int n = 6;
  const SuperMatrix11 phi{rng.even(n), rng.odd(n), rng.odd(n), rng.even(n)};
  const SuperMatrix11 g = from_coords(rng.coords(n));
  const SuperMatrix11 conj = higgs_transform(phi, g);
  CHECK(str(conj).approx_equal(str(phi), 1e-10));
  CHECK(str(conj * conj).approx_equal(str(phi * phi), 1e-10));
}

TEST_CASE("eigen-decomposition of a hand example") {
  const int n = 2;
  const SuperMatrix11 phi{c(n, 2.0), t(n, 1), t(n, 2), c(n, 1.0)};
  const HiggsEigenData e = higgs_eigen(phi);
  const GrassmannElement bg = t(n, 1) * t(n, 2);
  CHECK(e.lambda_plus == c(n, 2.0) + bg);
  CHECK(e.lambda_minus == c(n, 1.0) + bg);
  const SuperMatrix11 diag = inverse(e.diagonalizer) * phi * e.diagonalizer;
  CHECK(diag.beta.is_zero());
  CHECK(diag.gamma.is_zero());
  // The form a - beta gamma / (a - d) has the opposite sign on the nilpotent
  // shift: it is off by 2 beta gamma / str.
  const GrassmannElement other = phi.a - bg * inv(str(phi));
  CHECK((e.lambda_plus - other).approx_equal(2.0 * bg));
}

TEST_CASE("eigenvalues from the invariants agree with the eigenvectors") {
  Rng rng(16);
  for (int k = 0; k < 20; ++k) {
    const int n = 6;
    const GrassmannElement a = rng.invertible_even(n, 0.5, 0.3);
    const SuperMatrix11 phi{a, rng.odd(n, 0.5), rng.odd(n, 0.5), a - c(n, rng.nonzero_complex(1.0, 2.0))};
    const HiggsEigenData e = higgs_eigen(phi);
    const auto [lp, lm] = higgs_eigen_invariant(phi);
    CHECK(lp.approx_equal(e.lambda_plus));
    CHECK(lm.approx_equal(e.lambda_minus));
    const SuperMatrix11 diag = inverse(e.diagonalizer) * phi * e.diagonalizer;
    CHECK(diag.beta.max_abs() < 1e-9);
    CHECK(diag.gamma.max_abs() < 1e-9);
  }
}

TEST_CASE("errors") {
  const int n = 2;
  const SuperMatrix11 degenerate{c(n, 1.0), t(n, 1), t(n, 2), c(n, 1.0) + t(n, 1) * t(n, 2)};
  try {
    higgs_eigen(degenerate);
    FAIL("expected NotInvertibleError");
  } catch (const NotInvertibleError& e) {
    CHECK(std::string(e.what()).find("non-diagonalizable") != std::string::npos);
  }
  CHECK_THROWS_AS(higgs_eigen_invariant(degenerate), NotInvertibleError);
  CHECK_THROWS_AS(from_coords(GroupCoords{t(n, 1), GrassmannElement::zero(n), GrassmannElement::zero(n),
                                          GrassmannElement::zero(n)}),
                  ParityError);
  CHECK_THROWS_AS(inverse(SuperMatrix11::zero(n)), NotInvertibleError);
  const SuperMatrix11 mixed{t(n, 1), t(n, 1), t(n, 2), c(n, 1.0)};
  CHECK_THROWS_AS(sdet(mixed), NotInvertibleError);
}
