#include <doctest.h>

#include "glh/error.hpp"
#include "glh/grassmann.hpp"
#include "glh/random.hpp"

using namespace glh;

namespace {

GrassmannElement t(int n, int i) { return GrassmannElement::generator(n, i); }

// Same monomials, more generators.
GrassmannElement widen(const GrassmannElement& x, int n) { return GrassmannElement(n, x.terms()); }

int parity_sign(const GrassmannElement& x, const GrassmannElement& y) {
  return (x.is_odd() && y.is_odd()) ? -1 : 1;
}

}  // namespace

TEST_CASE("generators anticommute and square to zero") {
  const int n = 4;
  CHECK((t(n, 1) * t(n, 2)) == -(t(n, 2) * t(n, 1)));
  CHECK((t(n, 3) * t(n, 3)).is_zero());
  const GrassmannElement x = t(n, 1) + t(n, 2) * 2.0;
  CHECK((x * x).is_zero());
}

TEST_CASE("monomial helpers") {
  CHECK(monomial::from_indices({1, 3}) == 0b101);
  CHECK(monomial::indices(0b1010) == std::vector<int>{2, 4});
  CHECK(monomial::degree(0b1011) == 3);
  CHECK(monomial::product_sign(0b10, 0b01) == -1);  // t2 t1 = -t1 t2
  CHECK(monomial::product_sign(0b01, 0b10) == 1);
  CHECK(monomial::product_sign(0b11, 0b01) == 0);
  // t2 t3 * t1 = t1 t2 t3 after two swaps
  CHECK(monomial::product_sign(0b110, 0b001) == 1);
  CHECK(GrassmannElement::product_of(4, {3, 1, 2}) == t(4, 1) * t(4, 2) * t(4, 3));
  CHECK(GrassmannElement::product_of(4, {2, 2}).is_zero());
}

TEST_CASE("ring axioms on random elements") {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const int n = 6;
    const GrassmannElement x = rng.element(n, Parity::Mixed);
    const GrassmannElement y = rng.element(n, Parity::Mixed);
    const GrassmannElement z = rng.element(n, Parity::Mixed);
    CHECK(((x * y) * z).approx_equal(x * (y * z)));
    CHECK((x * (y + z)).approx_equal(x * y + x * z));
    CHECK((x * GrassmannElement::one(n)).approx_equal(x));
  }
}

TEST_CASE("graded commutativity") {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const int n = 7;
    const Parity pa = k % 2 ? Parity::Odd : Parity::Even;
    const Parity pb = k % 3 ? Parity::Odd : Parity::Even;
    const GrassmannElement x = rng.element(n, pa);
    const GrassmannElement y = rng.element(n, pb);
    CHECK((x * y).approx_equal(double(parity_sign(x, y)) * (y * x)));
  }
}

TEST_CASE("tabulated product agrees with the hashed product") {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const GrassmannElement x = rng.element(8, Parity::Mixed);
    const GrassmannElement y = rng.element(8, k % 2 ? Parity::Odd : Parity::Mixed, 3);
    const GrassmannElement wide = widen(x, 20) * widen(y, 20);
    CHECK(widen(x * y, 20).approx_equal(wide, 1e-12));
  }
}

TEST_CASE("exp, log and inverse") {
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    const int n = 8;
    const GrassmannElement a = rng.even(n, 0.5);
    const GrassmannElement b = rng.even(n, 0.5);
    CHECK(exp_even(a + b).approx_equal(exp_even(a) * exp_even(b)));
    CHECK(exp_even(log_even(exp_even(a))).approx_equal(exp_even(a)));
    const GrassmannElement x = rng.invertible_even(n, 0.5, 0.5);
    CHECK((inv(x) * x).approx_equal(GrassmannElement::one(n)));
    CHECK(exp_even(log_even(x)).approx_equal(x));
  }
  // exp of a nilpotent: e^{t1 t2} = 1 + t1 t2
  const GrassmannElement s = t(4, 1) * t(4, 2);
  CHECK(exp_even(s) == GrassmannElement::one(4) + s);
}

TEST_CASE("conjugation is an antilinear anti-automorphism") {
  const ConjugationTable table = ConjugationTable::halves(6);
  CHECK(table.partner(1) == 4);
  CHECK(table.partner(6) == 3);
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    const GrassmannElement x = rng.element(6, Parity::Mixed);
    const GrassmannElement y = rng.element(6, Parity::Mixed);
    CHECK(conjugate(x * y, table).approx_equal(conjugate(y, table) * conjugate(x, table)));
    CHECK(conjugate(conjugate(x, table), table).approx_equal(x));
  }
  const GrassmannElement it1 = t(6, 1) * Complex(0, 1);
  CHECK(conjugate(it1, table) == t(6, 4) * Complex(0, -1));
  // conj(t1 t2) = t5 t4 = -t4 t5
  CHECK(conjugate(t(6, 1) * t(6, 2), table) == -(t(6, 4) * t(6, 5)));
  CHECK_THROWS_AS(ConjugationTable({2, 3, 1}), DomainError);
  CHECK_THROWS_AS(ConjugationTable::halves(5), DomainError);
}

TEST_CASE("left derivative obeys the graded Leibniz rule") {
  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    const int n = 6;
    const GrassmannElement x = rng.element(n, k % 2 ? Parity::Odd : Parity::Even);
    const GrassmannElement y = rng.element(n, Parity::Mixed);
    for (int i = 1; i <= n; ++i) {
      const double s = x.is_odd() ? -1.0 : 1.0;
      CHECK(left_derivative(x * y, i).approx_equal(left_derivative(x, i) * y + s * (x * left_derivative(y, i))));
    }
  }
  // d/dt2 (t1 t2) = -t1
  CHECK(left_derivative(t(3, 1) * t(3, 2), 2) == -t(3, 1));
}

TEST_CASE("parity classification") {
  CHECK(GrassmannElement::zero(3).is_even());
  CHECK(GrassmannElement::zero(3).is_odd());
  CHECK((t(3, 1) + t(3, 1) * t(3, 2)).parity() == Parity::Mixed);
  CHECK((t(3, 1) + t(3, 1) * t(3, 2)).even_part() == t(3, 1) * t(3, 2));
}

TEST_CASE("canonicalization drops tiny coefficients") {
  const GrassmannElement x = t(3, 1) * 1e-14 + t(3, 2);
  CHECK(x.size() == 1);
}

TEST_CASE("large generator counts use sparse storage") {
  const int n = 64;
  const GrassmannElement x = t(n, 64) * t(n, 1) + GrassmannElement::one(n);
  CHECK((x * x).approx_equal(GrassmannElement::one(n) + 2.0 * (t(n, 64) * t(n, 1))));
  CHECK((t(n, 40) * t(n, 64) * t(n, 40)).is_zero());
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(GrassmannElement(0), DomainError);
  CHECK_THROWS_AS(GrassmannElement(65), DomainError);
  CHECK_THROWS_AS(t(3, 4), DomainError);
  CHECK_THROWS_AS(t(3, 1) * t(4, 1), DomainError);
  CHECK_THROWS_AS(exp_even(t(3, 1)), ParityError);
  CHECK_THROWS_AS(inv(t(3, 1) * t(3, 2)), NotInvertibleError);
  CHECK_THROWS_AS(log_even(GrassmannElement::zero(3)), NotInvertibleError);
}
