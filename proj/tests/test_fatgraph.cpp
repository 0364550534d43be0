#include <doctest.h>

#include <set>

#include "glh/error.hpp"
#include "glh/fatgraph.hpp"
#include "glh/random.hpp"

using namespace glh;

namespace {

const std::pair<int, int> kFixtures[] = {{0, 3}, {1, 1}, {1, 2}, {2, 1}};

// A closed cycle through every face start: the first boundary cycle.
const Cycle& first_face(const FatGraph& g) { return g.boundary_cycles().front(); }

}  // namespace

TEST_CASE("theta graph topology depends on the cyclic order") {
  const FatGraph planar({{0, 1}, {0, 1}, {0, 1}}, {{0, 2, 4}, {1, 5, 3}});
  CHECK(planar.genus() == 0);
  CHECK(planar.punctures() == 3);
  const FatGraph torus({{0, 1}, {0, 1}, {0, 1}}, {{0, 2, 4}, {1, 3, 5}});
  CHECK(torus.genus() == 1);
  CHECK(torus.punctures() == 1);
}

TEST_CASE("fixtures have the advertised topology and satisfy Euler's formula") {
  for (const auto& [genus, s] : kFixtures) {
    const FatGraph g = FatGraph::fixture(genus, s);
    CHECK(g.genus() == genus);
    CHECK(g.punctures() == s);
    CHECK(g.num_vertices() - g.num_edges() + g.punctures() == 2 - 2 * genus);
    // Every oriented edge lies on exactly one boundary cycle.
    std::multiset<std::pair<int, bool>> seen;
    for (const Cycle& c : g.boundary_cycles()) {
      for (const OrientedEdge& e : c) seen.insert({e.edge, e.forward});
    }
    CHECK(seen.size() == std::size_t(2 * g.num_edges()));
    CHECK(std::set<std::pair<int, bool>>(seen.begin(), seen.end()).size() == seen.size());
    const FatGraph r = g.reversed();
    CHECK(r.genus() == genus);
    CHECK(r.punctures() == s);
  }
  CHECK_THROWS_AS(FatGraph::fixture(3, 3), DomainError);
}

TEST_CASE("malformed graphs are rejected") {
  CHECK_THROWS_AS(FatGraph({{0, 1}, {0, 1}, {0, 1}}, {{0, 2, 2}, {1, 5, 3}}), DomainError);
  CHECK_THROWS_AS(FatGraph({{0, 1}, {0, 1}, {0, 1}}, {{0, 2, 4}, {1, 5, 3}, {6, 7, 8}}), DomainError);
  // half-edge 1 is the head of edge 0 but sits at vertex 0
  CHECK_THROWS_AS(FatGraph({{0, 1}, {0, 1}, {0, 1}}, {{1, 2, 4}, {0, 5, 3}}), DomainError);
}

TEST_CASE("cycle text round-trips") {
  const Cycle c = parse_cycle("0+,3-,2+");
  CHECK(c.size() == 3);
  CHECK(c[1] == OrientedEdge{3, false});
  CHECK(cycle_to_string(c) == "0+,3-,2+");
  CHECK_THROWS_AS(parse_cycle("0*"), ParseError);
  CHECK_THROWS_AS(parse_cycle("x+"), ParseError);
}

TEST_CASE("trivial connection has identity holonomy") {
  const FatGraph g = FatGraph::fixture(1, 2);
  const GraphConnection c = GraphConnection::trivial(g, 4);
  CHECK(holonomy(g, c, first_face(g)).approx_equal(SuperMatrix11::identity(4), 0.0));
}

TEST_CASE("holonomy rejects broken paths") {
  const FatGraph g = FatGraph::fixture(1, 1);
  const GraphConnection c = GraphConnection::trivial(g, 2);
  CHECK_THROWS_AS(holonomy(g, c, parse_cycle("0+,0+")), DomainError);
  CHECK_THROWS_AS(holonomy(g, c, parse_cycle("7+")), DomainError);
}

TEST_CASE("vertex rescalings are gauge transformations") {
  Rng rng(41);
  const int n = 4;
  for (const auto& [genus, s] : kFixtures) {
    const FatGraph g = FatGraph::fixture(genus, s);
    for (ConnectionMode mode : {ConnectionMode::SL, ConnectionMode::SU}) {
      const GraphConnection c = random_connection(g, n, mode, rng);
      GraphConnection moved = c;
      for (int k = 0; k < 10; ++k) {
        const int v = rng.integer(0, g.num_vertices() - 1);
        const RescaleKind kind = static_cast<RescaleKind>(rng.integer(0, 2));
        GrassmannElement param = kind == RescaleKind::Diag ? rng.even(n, 0.3) : rng.odd(n, 0.3);
        if (mode == ConnectionMode::SU && kind == RescaleKind::Diag) {
          param = param - conjugate(param, c.table);  // cbar = -c
        }
        moved = vertex_rescale(g, moved, v, kind, param);
      }
      if (mode == ConnectionMode::SU) CHECK(moved.su_residual() < 1e-10);
      for (const Cycle& face : g.boundary_cycles()) {
        const SuperMatrix11 before = holonomy(g, c, face);
        const SuperMatrix11 after = holonomy(g, moved, face);
        CHECK(str(after).approx_equal(str(before), 1e-9));
        CHECK(sdet(after).approx_equal(sdet(before), 1e-9));
      }
    }
  }
}

TEST_CASE("a vertex rescaling acts by conjugation on edge elements") {
  Rng rng(42);
  const int n = 4;
  const FatGraph g = FatGraph::fixture(0, 3);
  const GraphConnection c = random_connection(g, n, ConnectionMode::SL, rng);
  const GrassmannElement gamma = rng.odd(n, 0.5);
  const GraphConnection moved = vertex_rescale(g, c, 0, RescaleKind::Lower, gamma);
  const GroupCoords tv = rescale_element(RescaleKind::Lower, gamma, ConnectionMode::SL, c.table);
  const GraphConnection direct = apply_vertex_gauge(g, c, 0, tv);
  for (int e = 0; e < g.num_edges(); ++e) {
    CHECK(from_coords(moved.edges[e]).approx_equal(from_coords(direct.edges[e]), 1e-10));
  }
}

TEST_CASE("gauge normalization zeroes the vertex sums and is idempotent") {
  Rng rng(43);
  for (const auto& [genus, s] : kFixtures) {
    const FatGraph g = FatGraph::fixture(genus, s);
    for (ConnectionMode mode : {ConnectionMode::SL, ConnectionMode::SU}) {
      const GraphConnection c = random_connection(g, 4, mode, rng);
      const NormalizeResult r = gauge_normalize(g, c);
      REQUIRE_FALSE(r.singular);
      CHECK(r.residual < 1e-9);
      CHECK(vertex_sum_residual(g, r.connection) < 1e-9);
      if (mode == ConnectionMode::SU) CHECK(r.connection.su_residual() < 1e-10);
      const NormalizeResult again = gauge_normalize(g, r.connection);
      for (int e = 0; e < g.num_edges(); ++e) {
        CHECK(again.connection.edges[e].approx_equal(r.connection.edges[e], 1e-9));
      }
      const Cycle& face = first_face(g);
      CHECK(str(holonomy(g, r.connection, face)).approx_equal(str(holonomy(g, c, face)), 1e-9));
    }
  }
}

TEST_CASE("puncture constraints") {
  Rng rng(44);
  for (const auto& [genus, s] : kFixtures) {
    const FatGraph g = FatGraph::fixture(genus, s);
    const Report ok = check_puncture_constraints(g, puncture_free_connection(g, 4, rng));
    CHECK_MESSAGE(ok.passed(), ok.to_text());
    const Report bad = check_puncture_constraints(g, random_connection(g, 4, ConnectionMode::SL, rng));
    CHECK_FALSE(bad.passed());
    CHECK(bad.find("puncture_0") != nullptr);
  }
}

TEST_CASE("dimension counts") {
  CHECK(moduli_dims(1, 1, false) == Dims{3, 4});
  CHECK(moduli_dims(2, 1, true) == Dims{4, 8});
  CHECK(moduli_dims(1, 2, true, true) == Dims{2, 2});
  CHECK_THROWS_AS(moduli_dims(1, 0, false), DomainError);
  CHECK_THROWS_AS(moduli_dims(0, 2, false), DomainError);
  for (const auto& [genus, s] : kFixtures) {
    const FatGraph g = FatGraph::fixture(genus, s);
    const Dims free = free_parameter_counts(g, false);
    // Edges modulo vertex moves: the first Betti number of the graph.
    CHECK(free.even == g.num_edges() - g.num_vertices() + 1);
    CHECK(free.odd == moduli_dims(genus, s, false).odd);
    CHECK(free_parameter_counts(g, true) == moduli_dims(genus, s, true));
    CHECK(free_parameter_counts(g, true, true) == moduli_dims(genus, s, true, true));
  }
}
