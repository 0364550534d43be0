#pragma once

// Trivalent fatgraphs and SL(1|1) / SU(1|1) graph connections: boundary
// cycles, vertex rescalings, gauge normalization, holonomy and dimension
// counts.
//
// Edge e runs from tail(e) to head(e). Half-edge 2e sits at the tail and
// 2e + 1 at the head. A connection stores g_e for the tail-to-head direction;
// a gauge transformation {T_v} acts by g_e -> T_head g_e T_tail^{-1}.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "glh/report.hpp"
#include "glh/supergroup.hpp"

namespace glh {

class Rng;

struct OrientedEdge {
  int edge = 0;
  bool forward = true;  // tail -> head

  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

using Cycle = std::vector<OrientedEdge>;

std::string cycle_to_string(const Cycle& c);  // "0+,1-,2+"
Cycle parse_cycle(const std::string& text);

class FatGraph {
 public:
  // vertices[v] lists the half-edges at v in cyclic order. Throws DomainError
  // unless the graph is connected, trivalent and consistent with edges.
  FatGraph(std::vector<std::pair<int, int>> edges, std::vector<std::array<int, 3>> vertices);

  // Shipped graphs: theta (0,3) and (1,1), K4 (1,2) and the prism (2,1).
  static FatGraph fixture(int genus, int punctures);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int tail(int e) const { return edges_.at(e).first; }
  int head(int e) const { return edges_.at(e).second; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::array<int, 3>>& vertices() const { return vertices_; }

  int vertex_of(int half_edge) const { return vertex_of_.at(half_edge); }
  // Next half-edge in the cyclic order at its vertex.
  int rotate(int half_edge) const { return rotate_.at(half_edge); }

  int start(const OrientedEdge& e) const { return e.forward ? tail(e.edge) : head(e.edge); }
  int end(const OrientedEdge& e) const { return e.forward ? head(e.edge) : tail(e.edge); }

  const std::vector<Cycle>& boundary_cycles() const { return faces_; }
  int genus() const { return genus_; }
  int punctures() const { return static_cast<int>(faces_.size()); }

  // Signed incidence: +1 at the head, -1 at the tail (loops cancel).
  std::vector<std::vector<int>> incidence() const;
  // Net number of forward minus backward traversals of each edge per face.
  std::vector<std::vector<int>> boundary_matrix() const;

  // Every edge flipped (half-edge labels 2e and 2e + 1 swap).
  FatGraph reversed() const;

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::array<int, 3>> vertices_;
  std::vector<int> vertex_of_;
  std::vector<int> rotate_;
  std::vector<Cycle> faces_;
  int genus_ = 0;
};

enum class ConnectionMode { SL, SU };

struct GraphConnection {
  ConnectionMode mode = ConnectionMode::SL;
  int n = 0;
  std::vector<GroupCoords> edges;  // s components are zero
  ConjugationTable table;

  GraphConnection(ConnectionMode m, int n_gen, std::vector<GroupCoords> e, ConjugationTable t);
  // Identity on every edge; halves() table when n is even.
  static GraphConnection trivial(const FatGraph& g, int n, ConnectionMode m = ConnectionMode::SL);

  GroupCoords oriented(const OrientedEdge& e) const;
  // Parities, s = 0 and, in SU mode, hbar = -h and alphabar = -beta.
  void validate() const;
  // Largest violation of the SU reality conditions.
  double su_residual() const;
};

// Tail-to-head connection on the reversed graph with every g_e inverted.
GraphConnection reversed(const GraphConnection& c);

enum class RescaleKind { Diag, Lower, Upper };

// Element T with g_e -> T g_e for edges into v: g(c, 0, 0), g(0, gamma, 0),
// g(0, 0, gamma). In SU mode lower and upper are paired with their conjugate
// partner (g(0, gamma, -gammabar), g(0, -gammabar, gamma)) and diag needs
// cbar = -c.
GroupCoords rescale_element(RescaleKind kind, const GrassmannElement& param, ConnectionMode mode,
                            const ConjugationTable& table);

GraphConnection apply_vertex_gauge(const FatGraph& g, const GraphConnection& c, int v,
                                   const GroupCoords& t);
GraphConnection vertex_rescale(const FatGraph& g, const GraphConnection& c, int v,
                               RescaleKind kind, const GrassmannElement& param);

// Sum over the three incident edges oriented toward v of h, alpha, beta.
struct VertexSums {
  GrassmannElement h, alpha, beta;
};
std::vector<VertexSums> vertex_sums(const FatGraph& g, const GraphConnection& c);
double vertex_sum_residual(const FatGraph& g, const GraphConnection& c);

struct NormalizeResult {
  GraphConnection connection;
  bool singular = false;
  int kernel_dim = 0;  // per sector, solution space of the vertex system
  double residual = 0.0;
};

NormalizeResult gauge_normalize(const FatGraph& g, const GraphConnection& c, double tol = 1e-9);

// Product g_{e_k} ... g_{e_1} along the cycle. Throws DomainError if
// consecutive edges do not share endpoints.
SuperMatrix11 holonomy(const FatGraph& g, const GraphConnection& c, const Cycle& cycle);

// Max |holonomy - 1| per boundary cycle.
Report check_puncture_constraints(const FatGraph& g, const GraphConnection& c, double tol = 1e-9);

struct Dims {
  int even = 0;
  int odd = 0;
  friend bool operator==(const Dims&, const Dims&) = default;
};

// Closed forms: SL (2g+2s-1 | 4g+2s-2), constrained (2g | 4g); SU
// (2g+2s-1 | 2g+s-1), constrained (2g | 2g). Throws DomainError unless
// 2g - 2 + s > 0 and s > 0.
Dims moduli_dims(int genus, int punctures, bool constrained, bool su = false);
// Dimensions of the linear spaces actually cut out on a graph: edge
// coordinates with vanishing vertex sums and, if constrained, vanishing
// linearized boundary holonomies.
Dims free_parameter_counts(const FatGraph& g, bool constrained, bool su = false);

GraphConnection random_connection(const FatGraph& g, int n, ConnectionMode mode, Rng& rng);
// Connection whose boundary holonomies are all the identity: alpha, beta in
// the kernel of the boundary matrix and h solved from the remaining linear
// system.
GraphConnection puncture_free_connection(const FatGraph& g, int n, Rng& rng);

}  // namespace glh
