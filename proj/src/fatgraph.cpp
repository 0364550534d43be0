#include "glh/fatgraph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "glh/error.hpp"
#include "glh/random.hpp"

namespace glh {

namespace {

constexpr double kRankTol = 1e-9;

ConjugationTable default_table(int n) {
  return n % 2 == 0 ? ConjugationTable::halves(n) : ConjugationTable::self_conjugate(n);
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<int>>& rows, int cols) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

int rank_of(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(kRankTol);
  return static_cast<int>(lu.rank());
}

// Basis of the null space as columns (possibly zero columns).
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, int cols) {
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(kRankTol);
  if (lu.rank() == cols) return Eigen::MatrixXd::Zero(cols, 0);
  return lu.kernel();
}

struct LinearSolution {
  std::vector<GrassmannElement> x;
  bool consistent = true;
  double residual = 0.0;
  int kernel_dim = 0;
};

// Least-norm solution of a x = b with Grassmann-valued b, one monomial at a time.
LinearSolution solve_linear(const Eigen::MatrixXd& a, const std::vector<GrassmannElement>& b,
                            int n, double tol) {
  const auto rows = a.rows();
  const auto cols = a.cols();
  std::vector<Monomial> monos;
  for (const GrassmannElement& v : b) {
    for (const auto& [m, c] : v.terms()) monos.push_back(m);
  }
  std::sort(monos.begin(), monos.end());
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(rows, static_cast<Eigen::Index>(monos.size()));
  double bmax = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < monos.size(); ++k) {
      rhs(r, k) = b[r].coefficient(monos[k]);
      bmax = std::max(bmax, std::abs(rhs(r, k)));
    }
  }
  LinearSolution out;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(cols, static_cast<Eigen::Index>(monos.size()));
  out.kernel_dim = static_cast<int>(cols);
  if (rows > 0 && cols > 0) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
    cod.setThreshold(kRankTol);
    cod.compute(a.cast<Complex>());
    out.kernel_dim = static_cast<int>(cols - cod.rank());
    if (!monos.empty()) x = cod.solve(rhs);
  }
  const Eigen::MatrixXcd resid = a.cast<Complex>() * x - rhs;
  out.residual = resid.size() ? resid.cwiseAbs().maxCoeff() : 0.0;
  out.consistent = out.residual <= tol * std::max(1.0, bmax);
  for (Eigen::Index c = 0; c < cols; ++c) {
    std::vector<GrassmannElement::Term> terms;
    for (std::size_t k = 0; k < monos.size(); ++k) terms.emplace_back(monos[k], x(c, k));
    out.x.emplace_back(n, std::move(terms));
  }
  return out;
}

std::vector<GrassmannElement> apply_matrix(const std::vector<std::vector<int>>& m,
                                           const std::vector<GrassmannElement>& x, int n) {
  std::vector<GrassmannElement> out;
  for (const auto& row : m) {
    GrassmannElement acc = GrassmannElement::zero(n);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0) acc += x[c] * static_cast<double>(row[c]);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<GrassmannElement> combine_columns(const Eigen::MatrixXd& basis,
                                              const std::vector<GrassmannElement>& weights,
                                              int n) {
  std::vector<GrassmannElement> out;
  for (Eigen::Index r = 0; r < basis.rows(); ++r) {
    GrassmannElement acc = GrassmannElement::zero(n);
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      if (basis(r, c) != 0.0) acc += weights[c] * basis(r, c);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

std::string cycle_to_string(const Cycle& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i].edge) + (c[i].forward ? "+" : "-");
  }
  return out;
}

Cycle parse_cycle(const std::string& text) {
  Cycle c;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
    if (part.size() < 2 || (part.back() != '+' && part.back() != '-')) {
      throw ParseError("cycle entry \"" + part + "\" must look like 3+ or 3-");
    }
    const std::string num = part.substr(0, part.size() - 1);
    if (num.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("cycle entry \"" + part + "\" has a bad edge index");
    }
    c.push_back({std::stoi(num), part.back() == '+'});
  }
  return c;
}

FatGraph::FatGraph(std::vector<std::pair<int, int>> edges, std::vector<std::array<int, 3>> vertices)
    : edges_(std::move(edges)), vertices_(std::move(vertices)) {
  const int e_count = num_edges();
  const int v_count = num_vertices();
  if (v_count == 0) throw DomainError("fatgraph: no vertices");
  vertex_of_.assign(2 * e_count, -1);
  rotate_.assign(2 * e_count, -1);
  for (int v = 0; v < v_count; ++v) {
    for (int k = 0; k < 3; ++k) {
      const int h = vertices_[v][k];
      if (h < 0 || h >= 2 * e_count) {
        throw DomainError("fatgraph: half-edge " + std::to_string(h) + " at vertex " +
                          std::to_string(v) + " out of range");
      }
      if (vertex_of_[h] != -1) {
        throw DomainError("fatgraph: half-edge " + std::to_string(h) + " listed twice");
      }
      vertex_of_[h] = v;
      rotate_[h] = vertices_[v][(k + 1) % 3];
    }
  }
  for (int e = 0; e < e_count; ++e) {
    for (int side = 0; side < 2; ++side) {
      const int h = 2 * e + side;
      const int expected = side == 0 ? edges_[e].first : edges_[e].second;
      if (vertex_of_[h] == -1) {
        throw DomainError("fatgraph: half-edge " + std::to_string(h) + " is not at any vertex");
      }
      if (vertex_of_[h] != expected) {
        throw DomainError("fatgraph: half-edge " + std::to_string(h) + " of edge " +
                          std::to_string(e) + " sits at vertex " + std::to_string(vertex_of_[h]) +
                          " but the edge list says " + std::to_string(expected));
      }
    }
  }
  // Connectivity.
  std::vector<bool> seen(v_count, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int h : vertices_[v]) {
      const int w = vertex_of_[h ^ 1];
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw DomainError("fatgraph: graph is not connected");
  }
  // Faces: orbits of h -> rotate(pair(h)).
  std::vector<bool> used(2 * e_count, false);
  for (int start = 0; start < 2 * e_count; ++start) {
    if (used[start]) continue;
    Cycle face;
    int h = start;
    while (!used[h]) {
      used[h] = true;
      face.push_back({h / 2, h % 2 == 0});
      h = rotate_[h ^ 1];
    }
    faces_.push_back(std::move(face));
  }
  const int euler = v_count - e_count + punctures();
  if (euler > 2 || (2 - euler) % 2 != 0) {
    throw DomainError("fatgraph: Euler characteristic " + std::to_string(euler) +
                      " does not describe a closed surface");
  }
  genus_ = (2 - euler) / 2;
}

FatGraph FatGraph::fixture(int genus, int punctures) {
  if (genus == 0 && punctures == 3) {
    return FatGraph({{0, 1}, {0, 1}, {0, 1}}, {{0, 2, 4}, {1, 5, 3}});
  }
  if (genus == 1 && punctures == 1) {
    return FatGraph({{0, 1}, {0, 1}, {0, 1}}, {{0, 2, 4}, {1, 3, 5}});
  }
  if (genus == 1 && punctures == 2) {
    return FatGraph({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                    {{0, 2, 4}, {1, 6, 8}, {3, 7, 10}, {5, 9, 11}});
  }
  if (genus == 2 && punctures == 1) {
    return FatGraph({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}},
                    {{0, 5, 12}, {1, 2, 14}, {3, 4, 16}, {6, 11, 13}, {7, 8, 15}, {9, 17, 10}});
  }
  throw DomainError("fatgraph: no shipped fixture for (g, s) = (" + std::to_string(genus) + ", " +
                    std::to_string(punctures) + ")");
}

std::vector<std::vector<int>> FatGraph::incidence() const {
  std::vector<std::vector<int>> c(num_vertices(), std::vector<int>(num_edges(), 0));
  for (int e = 0; e < num_edges(); ++e) {
    c[head(e)][e] += 1;
    c[tail(e)][e] -= 1;
  }
  return c;
}

std::vector<std::vector<int>> FatGraph::boundary_matrix() const {
  std::vector<std::vector<int>> b(faces_.size(), std::vector<int>(num_edges(), 0));
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (const OrientedEdge& e : faces_[f]) b[f][e.edge] += e.forward ? 1 : -1;
  }
  return b;
}

FatGraph FatGraph::reversed() const {
  std::vector<std::pair<int, int>> edges;
  for (const auto& [t, h] : edges_) edges.emplace_back(h, t);
  std::vector<std::array<int, 3>> vertices = vertices_;
  for (auto& v : vertices) {
    for (int& h : v) h ^= 1;
  }
  return FatGraph(std::move(edges), std::move(vertices));
}

GraphConnection::GraphConnection(ConnectionMode m, int n_gen, std::vector<GroupCoords> e,
                                 ConjugationTable t)
    : mode(m), n(n_gen), edges(std::move(e)), table(std::move(t)) {
  validate();
}

GraphConnection GraphConnection::trivial(const FatGraph& g, int n, ConnectionMode m) {
  return GraphConnection(m, n, std::vector<GroupCoords>(g.num_edges(), GroupCoords::identity(n)),
                         default_table(n));
}

GroupCoords GraphConnection::oriented(const OrientedEdge& e) const {
  if (e.edge < 0 || e.edge >= static_cast<int>(edges.size())) {
    throw DomainError("connection: edge " + std::to_string(e.edge) + " out of range");
  }
  return e.forward ? edges[e.edge] : coords_inverse(edges[e.edge]);
}

void GraphConnection::validate() const {
  if (table.size() != n) throw DomainError("connection: conjugation table size differs from n");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const GroupCoords& g = edges[e];
    if (g.n() != n) throw DomainError("connection: generator count mismatch on edge " + std::to_string(e));
    g.validate();
    if (!g.s.is_zero()) throw DomainError("connection: edge " + std::to_string(e) + " has s != 0");
  }
  if (mode == ConnectionMode::SU && su_residual() > kRankTol) {
    throw DomainError("connection: SU reality conditions violated (residual " +
                      format_residual(su_residual()) + ")");
  }
}

double GraphConnection::su_residual() const {
  double r = 0.0;
  for (const GroupCoords& g : edges) {
    r = std::max(r, (conjugate(g.h, table) + g.h).max_abs());
    r = std::max(r, (conjugate(g.alpha, table) + g.beta).max_abs());
  }
  return r;
}

GraphConnection reversed(const GraphConnection& c) {
  std::vector<GroupCoords> edges;
  for (const GroupCoords& g : c.edges) edges.push_back(coords_inverse(g));
  return GraphConnection(c.mode, c.n, std::move(edges), c.table);
}

GroupCoords rescale_element(RescaleKind kind, const GrassmannElement& param, ConnectionMode mode,
                            const ConjugationTable& table) {
  const int n = param.n();
  const GrassmannElement zero = GrassmannElement::zero(n);
  const bool su = mode == ConnectionMode::SU;
  switch (kind) {
    case RescaleKind::Diag:
      if (!param.is_even()) throw ParityError("vertex_rescale: diag parameter must be even");
      if (su && (conjugate(param, table) + param).max_abs() > kRankTol) {
        throw DomainError("vertex_rescale: SU diag parameter needs cbar = -c");
      }
      return GroupCoords::sl(param, zero, zero);
    case RescaleKind::Lower:
      if (!param.is_odd()) throw ParityError("vertex_rescale: lower parameter must be odd");
      return GroupCoords::sl(zero, param, su ? -conjugate(param, table) : zero);
    case RescaleKind::Upper:
      if (!param.is_odd()) throw ParityError("vertex_rescale: upper parameter must be odd");
      return GroupCoords::sl(zero, su ? -conjugate(param, table) : zero, param);
  }
  throw DomainError("vertex_rescale: unknown kind");
}

GraphConnection apply_vertex_gauge(const FatGraph& g, const GraphConnection& c, int v,
                                   const GroupCoords& t) {
  if (v < 0 || v >= g.num_vertices()) throw DomainError("vertex " + std::to_string(v) + " out of range");
  if (static_cast<int>(c.edges.size()) != g.num_edges()) {
    throw DomainError("connection does not match the graph's edge count");
  }
  const GroupCoords t_inv = coords_inverse(t);
  std::vector<GroupCoords> edges = c.edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.head(e) == v) edges[e] = coords_product(t, edges[e]);
    if (g.tail(e) == v) edges[e] = coords_product(edges[e], t_inv);
  }
  return GraphConnection(c.mode, c.n, std::move(edges), c.table);
}

GraphConnection vertex_rescale(const FatGraph& g, const GraphConnection& c, int v,
                               RescaleKind kind, const GrassmannElement& param) {
  if (param.n() != c.n) throw DomainError("vertex_rescale: generator count mismatch");
  return apply_vertex_gauge(g, c, v, rescale_element(kind, param, c.mode, c.table));
}

std::vector<VertexSums> vertex_sums(const FatGraph& g, const GraphConnection& c) {
  const int n = c.n;
  std::vector<VertexSums> sums(g.num_vertices(), VertexSums{GrassmannElement::zero(n),
                                                            GrassmannElement::zero(n),
                                                            GrassmannElement::zero(n)});
  for (int e = 0; e < g.num_edges(); ++e) {
    const GroupCoords& x = c.edges[e];
    sums[g.head(e)].h += x.h;
    sums[g.head(e)].alpha += x.alpha;
    sums[g.head(e)].beta += x.beta;
    const GroupCoords y = coords_inverse(x);
    sums[g.tail(e)].h += y.h;
    sums[g.tail(e)].alpha += y.alpha;
    sums[g.tail(e)].beta += y.beta;
  }
  return sums;
}

double vertex_sum_residual(const FatGraph& g, const GraphConnection& c) {
  double r = 0.0;
  for (const VertexSums& s : vertex_sums(g, c)) {
    r = std::max({r, s.h.max_abs(), s.alpha.max_abs(), s.beta.max_abs()});
  }
  return r;
}

NormalizeResult gauge_normalize(const FatGraph& g, const GraphConnection& c, double tol) {
  const int n = c.n;
  const auto inc = g.incidence();
  const Eigen::MatrixXd cm = to_matrix(inc, g.num_edges());
  const Eigen::MatrixXd lap = cm * cm.transpose();
  NormalizeResult out{c, false, 0, 0.0};

  // Odd sectors: T_v = g(0, lambda_v, mu_v) shifts alpha_e by lambda_head - lambda_tail.
  std::vector<GrassmannElement> alpha, beta;
  for (const GroupCoords& x : c.edges) {
    alpha.push_back(x.alpha);
    beta.push_back(x.beta);
  }
  std::vector<GrassmannElement> rhs_a = apply_matrix(inc, alpha, n);
  std::vector<GrassmannElement> rhs_b = apply_matrix(inc, beta, n);
  for (auto& x : rhs_a) x = -x;
  for (auto& x : rhs_b) x = -x;
  const LinearSolution lam = solve_linear(lap, rhs_a, n, tol);
  const LinearSolution mu = solve_linear(lap, rhs_b, n, tol);
  out.kernel_dim = lam.kernel_dim;
  if (!lam.consistent || !mu.consistent) {
    out.singular = true;
    out.residual = std::max(lam.residual, mu.residual);
    return out;
  }
  GraphConnection cur = c;
  for (int v = 0; v < g.num_vertices(); ++v) {
    cur = apply_vertex_gauge(g, cur, v, GroupCoords::sl(GrassmannElement::zero(n), lam.x[v], mu.x[v]));
  }

  // Even sector: central T_v = g(c_v, 0, 0) shifts h_e by c_head - c_tail.
  std::vector<GrassmannElement> h;
  for (const GroupCoords& x : cur.edges) h.push_back(x.h);
  std::vector<GrassmannElement> rhs_h = apply_matrix(inc, h, n);
  for (auto& x : rhs_h) x = -x;
  const LinearSolution shift = solve_linear(lap, rhs_h, n, tol);
  if (!shift.consistent) {
    out.singular = true;
    out.residual = shift.residual;
    return out;
  }
  const GrassmannElement zero = GrassmannElement::zero(n);
  for (int v = 0; v < g.num_vertices(); ++v) {
    cur = apply_vertex_gauge(g, cur, v, GroupCoords::sl(shift.x[v], zero, zero));
  }
  out.residual = vertex_sum_residual(g, cur);
  out.connection = std::move(cur);
  return out;
}

SuperMatrix11 holonomy(const FatGraph& g, const GraphConnection& c, const Cycle& cycle) {
  SuperMatrix11 m = SuperMatrix11::identity(c.n);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (cycle[i].edge < 0 || cycle[i].edge >= g.num_edges()) {
      throw DomainError("holonomy: edge " + std::to_string(cycle[i].edge) + " out of range");
    }
    if (i > 0 && g.start(cycle[i]) != g.end(cycle[i - 1])) {
      throw DomainError("holonomy: cycle is not contiguous at position " + std::to_string(i));
    }
    m = from_coords(c.oriented(cycle[i])) * m;
  }
  return m;
}

Report check_puncture_constraints(const FatGraph& g, const GraphConnection& c, double tol) {
  Report r("puncture constraints");
  const auto& faces = g.boundary_cycles();
  const SuperMatrix11 one = SuperMatrix11::identity(c.n);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const double res = (holonomy(g, c, faces[f]) - one).max_abs();
    r.add("puncture_" + std::to_string(f), res, tol, "cycle " + cycle_to_string(faces[f]));
  }
  const int rank = rank_of(to_matrix(g.boundary_matrix(), g.num_edges()));
  const bool su = c.mode == ConnectionMode::SU;
  r.note("constraint_equations", std::to_string(rank) + "|" + std::to_string(su ? rank : 2 * rank));
  const Dims free = free_parameter_counts(g, false, su);
  const Dims constrained = free_parameter_counts(g, true, su);
  r.note("free_dims", std::to_string(free.even) + "|" + std::to_string(free.odd));
  r.note("constrained_dims", std::to_string(constrained.even) + "|" + std::to_string(constrained.odd));
  return r;
}

Dims moduli_dims(int genus, int punctures, bool constrained, bool su) {
  if (genus < 0 || punctures <= 0 || 2 * genus - 2 + punctures <= 0) {
    throw DomainError("moduli_dims: need g >= 0, s > 0 and 2g - 2 + s > 0");
  }
  const int g = genus;
  const int s = punctures;
  if (constrained) return su ? Dims{2 * g, 2 * g} : Dims{2 * g, 4 * g};
  return su ? Dims{2 * g + 2 * s - 1, 2 * g + s - 1} : Dims{2 * g + 2 * s - 1, 4 * g + 2 * s - 2};
}

Dims free_parameter_counts(const FatGraph& g, bool constrained, bool su) {
  Eigen::MatrixXd m = to_matrix(g.incidence(), g.num_edges());
  if (constrained) {
    const Eigen::MatrixXd b = to_matrix(g.boundary_matrix(), g.num_edges());
    Eigen::MatrixXd stacked(m.rows() + b.rows(), m.cols());
    stacked << m, b;
    m = stacked;
  }
  const int k = g.num_edges() - rank_of(m);
  return {k, su ? k : 2 * k};
}

GraphConnection random_connection(const FatGraph& g, int n, ConnectionMode mode, Rng& rng) {
  const ConjugationTable table = default_table(n);
  std::vector<GroupCoords> edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    GrassmannElement h = rng.even(n, 0.5);
    GrassmannElement alpha = rng.odd(n, 0.5);
    GrassmannElement beta = rng.odd(n, 0.5);
    if (mode == ConnectionMode::SU) {
      h = (h - conjugate(h, table)) * 0.5;
      beta = -conjugate(alpha, table);
    }
    edges.push_back(GroupCoords::sl(std::move(h), std::move(alpha), std::move(beta)));
  }
  return GraphConnection(mode, n, std::move(edges), table);
}

GraphConnection puncture_free_connection(const FatGraph& g, int n, Rng& rng) {
  const Eigen::MatrixXd bm = to_matrix(g.boundary_matrix(), g.num_edges());
  const Eigen::MatrixXd kernel = null_space(bm, g.num_edges());
  auto draw = [&](Parity p) {
    std::vector<GrassmannElement> w;
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) w.push_back(rng.element(n, p, kMaxGenerators, 0.5));
    return combine_columns(kernel, w, n);
  };
  const std::vector<GrassmannElement> alpha = draw(Parity::Odd);
  std::vector<GrassmannElement> beta = draw(Parity::Odd);
  const std::vector<GrassmannElement> h0 = draw(Parity::Even);
  const GrassmannElement zero = GrassmannElement::zero(n);

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<GroupCoords> edges;
    for (int e = 0; e < g.num_edges(); ++e) edges.push_back(GroupCoords::sl(zero, alpha[e], beta[e]));
    GraphConnection c(ConnectionMode::SL, n, edges, default_table(n));
    // The h part of a boundary holonomy is (B h)_f + q_f with q quadratic in alpha, beta.
    std::vector<GrassmannElement> rhs;
    for (const Cycle& face : g.boundary_cycles()) {
      GroupCoords acc = GroupCoords::identity(n);
      for (const OrientedEdge& e : face) acc = coords_product(c.oriented(e), acc);
      rhs.push_back(-acc.h);
    }
    const LinearSolution sol = solve_linear(bm, rhs, n, kRankTol);
    if (sol.consistent) {
      for (int e = 0; e < g.num_edges(); ++e) edges[e].h = sol.x[e] + h0[e];
      return GraphConnection(ConnectionMode::SL, n, std::move(edges), default_table(n));
    }
    // The quadratic terms summed over all faces must vanish; beta = 0 forces that.
    beta.assign(g.num_edges(), zero);
  }
  throw DomainError("puncture_free_connection: could not solve the boundary system");
}

}  // namespace glh
