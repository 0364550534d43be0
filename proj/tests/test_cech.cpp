#include <doctest.h>

#include "glh/cech.hpp"
#include "glh/error.hpp"
#include "glh/random.hpp"

using namespace glh;

namespace {

GrassmannElement t(int n, int i) { return GrassmannElement::generator(n, i); }

Cochain random_cochain(const Nerve& nerve, int degree, int n, Rng& rng) {
  Cochain c(degree, n);
  for (const Simplex& s : nerve.simplices(degree)) c.set(s, rng.element(n, Parity::Mixed, 3));
  return c;
}

}  // namespace

TEST_CASE("simplex keys and orientation signs") {
  CHECK(simplex_key({0, 1, 2}) == "0,1,2");
  CHECK(parse_simplex_key("2,0") == Simplex{2, 0});
  Simplex s{2, 0, 1};
  CHECK(sort_simplex(s) == 1);
  CHECK(s == Simplex{0, 1, 2});
  Simplex odd{1, 0, 2};
  CHECK(sort_simplex(odd) == -1);
  Simplex repeated{1, 1};
  CHECK(sort_simplex(repeated) == 0);
}

TEST_CASE("nerves validate closure") {
  CHECK(Nerve::tetrahedron().simplices(3).size() == 1);
  CHECK(Nerve::tetrahedron_boundary().simplices(2).size() == 4);
  CHECK(Nerve::genus1().simplices(2).size() == 1);
  CHECK_THROWS_AS(Nerve({0, 1, 2}, {{0, 1}, {0, 1, 2}}), DomainError);
  CHECK_THROWS_AS(Nerve({0, 1}, {{0, 5}}), DomainError);
}

TEST_CASE("cochains are alternating") {
  Cochain c(1, 3);
  c.set({1, 0}, t(3, 1));
  CHECK(c.get({0, 1}) == -t(3, 1));
  CHECK(c.get({1, 0}) == t(3, 1));
}

TEST_CASE("coboundary of a 0-cochain") {
  const Nerve nerve = Nerve::triangle();
  Cochain f(0, 2);
  f.set({0}, t(2, 1));
  f.set({1}, t(2, 2));
  const Cochain df = coboundary(nerve, f);
  CHECK(df.get({0, 1}) == t(2, 2) - t(2, 1));
  CHECK(df.get({1, 2}) == -t(2, 2));
}

TEST_CASE("coboundary squares to zero") {
  Rng rng(21);
  const Nerve nerve = Nerve::tetrahedron();
  for (int p = 0; p <= 1; ++p) {
    const Cochain c = random_cochain(nerve, p, 5, rng);
    CHECK(coboundary(nerve, coboundary(nerve, c)).max_abs() < 1e-12);
  }
}

TEST_CASE("cup product obeys the Leibniz rule") {
  Rng rng(22);
  const Nerve nerve = Nerve::tetrahedron();
  for (int p = 0; p <= 1; ++p) {
    const Cochain u = random_cochain(nerve, p, 5, rng);
    const Cochain v = random_cochain(nerve, 1, 5, rng);
    const Cochain lhs = coboundary(nerve, cup_product(nerve, u, v));
    const Cochain a = cup_product(nerve, coboundary(nerve, u), v);
    const Cochain b = cup_product(nerve, u, coboundary(nerve, v));
    const double sign = p % 2 == 0 ? 1.0 : -1.0;
    for (const Simplex& s : nerve.simplices(p + 2)) {
      CHECK(lhs.get(s).approx_equal(a.get(s) + sign * b.get(s)));
    }
  }
}

TEST_CASE("solve_coboundary recovers exact cochains") {
  Rng rng(23);
  const Nerve nerve = Nerve::tetrahedron();
  const Cochain f = random_cochain(nerve, 1, 4, rng);
  const Cochain g = coboundary(nerve, f);
  const CoboundarySolution sol = solve_coboundary(nerve, g);
  CHECK(sol.consistent);
  CHECK(sol.residual < 1e-10);
  for (const Simplex& s : nerve.simplices(2)) {
    CHECK(coboundary(nerve, sol.f).get(s).approx_equal(g.get(s)));
  }
}

TEST_CASE("solve_coboundary reports a nonzero class on the genus-1 nerve") {
  const Nerve nerve = Nerve::genus1();
  Cochain z(1, 2);
  z.set({0, 3}, t(2, 1));  // closed: no triangle contains the edge
  CHECK(coboundary(nerve, z).max_abs() == 0.0);
  const CoboundarySolution sol = solve_coboundary(nerve, z);
  CHECK_FALSE(sol.consistent);
  CHECK(sol.message == "obstruction class nonzero on this nerve");
}

TEST_CASE("transition data stores one orientation") {
  Rng rng(24);
  TransitionData data(4);
  const GroupCoords g = rng.coords(4, true);
  data.set(1, 0, g);
  CHECK(data.oriented(1, 0).approx_equal(g, 1e-12));
  CHECK(data.oriented(0, 1).approx_equal(coords_inverse(g), 1e-12));
}

TEST_CASE("cocycle data built from vertex elements satisfies the cocycle identities") {
  Rng rng(25);
  for (const Nerve& nerve : {Nerve::triangle(), Nerve::tetrahedron()}) {
    for (GroupMode mode : {GroupMode::SL, GroupMode::GL}) {
      const TransitionData data = random_cocycle_data(nerve, 6, mode, rng);
      const Report r = check_gl_cocycle(nerve, data);
      CHECK_MESSAGE(r.passed(), r.to_text());
      CHECK(check_two_cocycle(nerve, data).passed());
    }
  }
}

TEST_CASE("perturbing h on one edge fails exactly the h identity by the perturbation") {
  Rng rng(26);
  const Nerve nerve = Nerve::triangle();
  TransitionData data = random_cocycle_data(nerve, 6, GroupMode::SL, rng);
  GroupCoords g = data.oriented(0, 2);
  g.h += GrassmannElement::generator(6, 1) * GrassmannElement::generator(6, 2) * 0.3;
  data.set(0, 2, g);
  const Report r = check_sl_cocycle(nerve, data);
  CHECK(r.failed_names() == std::vector<std::string>{"h_identity"});
  CHECK(r.find("h_identity")->residual == doctest::Approx(0.3));
  CHECK(r.find("h_identity")->detail.find("0,1,2") != std::string::npos);
  CHECK_THROWS_AS(two_cocycle_g(nerve, data), DomainError);
}

TEST_CASE("windings enter the h identity in multiples of 2 pi i") {
  Rng rng(27);
  const Nerve nerve = Nerve::triangle();
  TransitionData data = random_cocycle_data(nerve, 4, GroupMode::SL, rng);
  GroupCoords g = data.oriented(0, 2);
  g.h += GrassmannElement::scalar(4, Complex(0, 2 * M_PI));
  data.set(0, 2, g);
  CHECK_FALSE(check_sl_cocycle(nerve, data).passed());
  data.modulo_2pi_i = true;
  data.windings[{0, 1, 2}] = -1;
  CHECK_MESSAGE(check_sl_cocycle(nerve, data).passed(), check_sl_cocycle(nerve, data).to_text());
}

TEST_CASE("two-cocycle is antisymmetric and closed") {
  Rng rng(28);
  const Nerve nerve = Nerve::tetrahedron();
  const TransitionData data = random_cocycle_data(nerve, 8, GroupMode::SL, rng);
  const GrassmannElement g012 = two_cocycle_entry(data, 0, 1, 2);
  CHECK(two_cocycle_entry(data, 1, 0, 2).approx_equal(-g012));
  CHECK(two_cocycle_entry(data, 2, 0, 1).approx_equal(g012));
  CHECK(coboundary(nerve, two_cocycle_g(nerve, data)).max_abs() < 1e-10);
}

TEST_CASE("SL Higgs obstruction: exact and obstructed data on the genus-1 nerve") {
  const int n = 8;
  const Nerve nerve = Nerve::genus1();
  TransitionData data(n);
  data.set(0, 1, GroupCoords::sl(GrassmannElement::zero(n), t(n, 1), t(n, 3)));
  data.set(1, 2, GroupCoords::sl(GrassmannElement::zero(n), t(n, 2), t(n, 4)));
  data.set(0, 2, coords_product(data.oriented(0, 1), data.oriented(1, 2)));
  for (int v = 0; v < 3; ++v) data.set(v, 3, GroupCoords::identity(n));
  REQUIRE(check_sl_cocycle(nerve, data).passed());

  HiggsCechData exact;
  HiggsCechData obstructed;
  for (int v = 0; v < 4; ++v) {
    const GrassmannElement z = GrassmannElement::zero(n);
    exact.vertices.insert_or_assign(v, HiggsVertex{z, z, t(n, 1) * t(n, 2) * t(n, 6), t(n, 3) * t(n, 4) * t(n, 5)});
    obstructed.vertices.insert_or_assign(v, HiggsVertex{z, z, t(n, 5), z});
  }
  const HiggsObstruction ok = sl_higgs_obstruction(nerve, data, exact);
  CHECK(ok.exact);
  CHECK(ok.report.passed());
  const HiggsObstruction bad = sl_higgs_obstruction(nerve, data, obstructed);
  CHECK_FALSE(bad.exact);
  CHECK(bad.report.failed_names() == std::vector<std::string>{"t_exact"});
}

TEST_CASE("SL Higgs cocycle is always exact on the tetrahedron") {
  Rng rng(29);
  const int n = 6;
  const Nerve nerve = Nerve::tetrahedron();
  const TransitionData data = random_cocycle_data(nerve, n, GroupMode::SL, rng);
  HiggsCechData higgs;
  const GrassmannElement delta = rng.odd(n, 0.5);
  const GrassmannElement gamma = rng.odd(n, 0.5);
  for (int v : nerve.vertices()) higgs.vertices.insert_or_assign(v, HiggsVertex{GrassmannElement::zero(n), GrassmannElement::zero(n), delta, gamma});
  const HiggsObstruction ob = sl_higgs_obstruction(nerve, data, higgs);
  CHECK_MESSAGE(ob.report.passed(), ob.report.to_text());
  // eta solves delta(eta) = t
  const Cochain deta = coboundary(nerve, ob.eta);
  for (const Simplex& e : nerve.simplices(1)) CHECK(deta.get(e).approx_equal(ob.t.get(e), 1e-9));
}

TEST_CASE("GL Higgs constraints on admissible data") {
  Rng rng(30);
  for (const Nerve& nerve : {Nerve::triangle(), Nerve::tetrahedron(), Nerve::genus1()}) {
    auto [data, higgs] = random_admissible_gl(nerve, 6, rng);
    const Report r = gl_higgs_constraints(nerve, data, higgs);
    CHECK_MESSAGE(r.passed(), r.to_text());
    // Breaking the alpha relation at one vertex is caught by name.
    higgs.vertices.at(0).gamma += GrassmannElement::generator(6, 1) * 0.5;
    const Report broken = gl_higgs_constraints(nerve, data, higgs);
    CHECK_FALSE(broken.passed());
    CHECK(broken.find("alpha_relation")->passed == false);
  }
}
