#include <doctest.h>

#include "glh/error.hpp"
#include "glh/hitchin.hpp"
#include "glh/random.hpp"

using namespace glh;

namespace {

constexpr int kN = 4;

GrassmannElement t(int i) { return GrassmannElement::generator(kN, i); }
GrassmannElement c(Complex v) { return GrassmannElement::scalar(kN, v); }

// Random polynomial in z only (holomorphic) or zbar only, degree <= 4.
LocalFunction random_poly(Rng& rng, Parity parity, bool holomorphic) {
  LocalFunction f(kN, parity);
  for (int p = 0; p <= 4; ++p) {
    const GrassmannElement coeff = rng.element(kN, parity, kMaxGenerators, 0.5);
    if (holomorphic) {
      f.add_term(p, 0, coeff);
    } else {
      f.add_term(0, p, coeff);
    }
  }
  return f;
}

}  // namespace

TEST_CASE("derivatives and primitives") {
  LocalFunction f(kN, Parity::Even);
  f.add_term(2, 1, c(3.0));
  const LocalFunction dz = d_z(f);
  CHECK(dz.coefficient(1, 1) == c(6.0));
  CHECK(d_zbar(f).coefficient(2, 0) == c(3.0));
  CHECK(d_z(antiderivative_z(f)).coefficient(2, 1) == c(3.0));
  CHECK(antiderivative_z(f).coefficient(0, 1).is_zero());
}

TEST_CASE("evaluation uses zbar = conj(z)") {
  LocalFunction f(kN, Parity::Even);
  f.add_term(1, 1, c(1.0));
  CHECK(f.evaluate(Complex(1, 1)).body() == Complex(2.0, 0.0));
}

TEST_CASE("conjugation swaps z and zbar") {
  const ConjugationTable table = ConjugationTable::halves(kN);
  LocalFunction f(kN, Parity::Odd);
  f.add_term(2, 0, t(1) * Complex(0, 1));
  const LocalFunction g = conjugate_fn(f, table);
  CHECK(g.coefficient(0, 2) == t(3) * Complex(0, -1));
  CHECK(g.is_antiholomorphic());
}

TEST_CASE("inverse of an even function") {
  Rng rng(31);
  LocalFunction f = LocalFunction::constant(c(2.0), Parity::Even, kWorkingDegreeCap);
  f.add_term(1, 0, t(1) * t(2));
  f.add_term(0, 1, t(3) * t(4));
  const LocalFunction prod = f * inverse_fn(f);
  CHECK((prod - LocalFunction::constant(c(1.0), Parity::Even, kWorkingDegreeCap)).max_abs() < 1e-12);
}

TEST_CASE("parity and degree guards") {
  LocalFunction f(kN, Parity::Odd, 2);
  CHECK_THROWS_AS(f.add_term(0, 0, c(1.0)), ParityError);
  // The cap bounds each of the z and zbar degrees.
  CHECK_NOTHROW(f.add_term(2, 2, t(1)));
  CHECK_THROWS_AS(f.add_term(3, 0, t(1)), DegreeOverflowError);
  LocalFunction g(kN, Parity::Odd, 2);
  g.add_term(2, 1, t(1));
  LocalFunction h(kN, Parity::Odd, 2);
  h.add_term(1, 0, t(2));
  CHECK_THROWS_AS(g * h, DegreeOverflowError);
}

TEST_CASE("closed-form Chern connection matches the block inverse") {
  Rng rng(32);
  const ConjugationTable table = ConjugationTable::halves(kN);
  for (int k = 0; k < 10; ++k) {
    MetricData m{random_poly(rng, Parity::Even, true) + random_poly(rng, Parity::Even, false),
                 random_poly(rng, Parity::Odd, true) + random_poly(rng, Parity::Odd, false), table};
    CHECK((chern_form(m) - chern_form_by_inversion(m)).max_abs() < 1e-10);
  }
}

TEST_CASE("flat solutions have zero curvature") {
  Rng rng(33);
  const ConjugationTable table = ConjugationTable::halves(kN);
  for (int k = 0; k < 10; ++k) {
    const MetricData m = flat_solution(random_poly(rng, Parity::Odd, true), random_poly(rng, Parity::Odd, false),
                                       random_poly(rng, Parity::Even, true), random_poly(rng, Parity::Even, false),
                                       table);
    CHECK(curvature(m).max_abs() < 1e-9);
  }
}

TEST_CASE("Hitchin solutions solve the Hitchin equation") {
  Rng rng(34);
  const ConjugationTable table = ConjugationTable::halves(kN);
  for (int k = 0; k < 10; ++k) {
    const LocalFunction delta = random_poly(rng, Parity::Odd, true);
    const LocalFunction gamma = random_poly(rng, Parity::Odd, true);
    const MetricData m = hitchin_solution(random_poly(rng, Parity::Odd, true), random_poly(rng, Parity::Odd, false),
                                          random_poly(rng, Parity::Even, true),
                                          random_poly(rng, Parity::Even, false), delta, gamma, table);
    const HiggsLocal phi{random_poly(rng, Parity::Even, true), delta, gamma};
    CHECK(hitchin_residual(m, phi.matrix()).max_abs() < 1e-9);

    MetricData bumped = m;
    bumped.u = bumped.u + LocalFunction::term(1, 1, c(1.0), Parity::Even);
    const LocalMatrix r = hitchin_residual(bumped, phi.matrix());
    CHECK(std::abs(r.a.coefficient(0, 0).body()) >= 0.5);
  }
}

TEST_CASE("Higgs dagger of a hand example") {
  const ConjugationTable table = ConjugationTable::halves(kN);
  HiggsLocal phi{LocalFunction::term(1, 0, c(Complex(0, 1)), Parity::Even),
                 LocalFunction::term(0, 0, t(1), Parity::Odd), LocalFunction::term(2, 0, t(2), Parity::Odd)};
  const LocalMatrix d = higgs_dagger(phi.matrix(), table);
  CHECK(d.a.coefficient(0, 1) == c(Complex(0, -1)));
  CHECK(d.beta.coefficient(0, 2) == t(4));
  CHECK(d.gamma.coefficient(0, 0) == t(3));
}

TEST_CASE("hitchin_residual rejects a Higgs field with nonzero supertrace") {
  const ConjugationTable table = ConjugationTable::halves(kN);
  const MetricData m{LocalFunction(kN, Parity::Even), LocalFunction(kN, Parity::Odd), table};
  LocalMatrix phi = LocalMatrix::zero(kN);
  phi.a = LocalFunction::term(0, 0, c(1.0), Parity::Even, kWorkingDegreeCap);
  CHECK_THROWS_AS(hitchin_residual(m, phi), DomainError);
}

TEST_CASE("metric coordinates transform by the gauge law") {
  Rng rng(35);
  const ConjugationTable table = ConjugationTable::halves(kN);
  for (int k = 0; k < 20; ++k) {
    CHECK(gauge_naturality_residual(rng.even(kN, 0.3), rng.odd(kN, 0.5), rng.even(kN, 0.3), rng.odd(kN, 0.5),
                                    rng.odd(kN, 0.5), table) < 1e-10);
  }
}
