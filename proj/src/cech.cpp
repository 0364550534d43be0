#include "glh/cech.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "glh/error.hpp"
#include "glh/random.hpp"

namespace glh {

namespace {

// Tracks the largest residual seen and where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;

  void update(double v, const Simplex& s) {
    if (v > value || std::isnan(v)) {
      value = v;
      where = "at " + simplex_key(s);
    }
  }
  void update(const GrassmannElement& x, const Simplex& s) { update(x.max_abs(), s); }
};

Simplex face(const Simplex& s, std::size_t omit) {
  Simplex f;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != omit) f.push_back(s[i]);
  }
  return f;
}

// Shifts the imaginary part of the body into (-pi, pi].
GrassmannElement reduce_mod_2pi_i(const GrassmannElement& x) {
  const double two_pi = 2 * std::numbers::pi;
  const Complex b = x.body();
  const double k = std::round(b.imag() / two_pi);
  return x - GrassmannElement::scalar(x.n(), Complex(0, k * two_pi));
}

void require_n(const TransitionData& data, const GrassmannElement& x, const char* what) {
  if (x.n() != data.n) throw DomainError(std::string(what) + ": generator count mismatch");
}

}  // namespace

std::string simplex_key(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out;
}

Simplex parse_simplex_key(const std::string& key) {
  Simplex s;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      s.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ParseError("bad simplex key \"" + key + "\"");
    }
  }
  if (s.empty()) throw ParseError("empty simplex key");
  return s;
}

int sort_simplex(Simplex& s) {
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j + 1 < s.size() - i; ++j) {
      if (s[j] > s[j + 1]) {
        std::swap(s[j], s[j + 1]);
        sign = -sign;
      } else if (s[j] == s[j + 1]) {
        return 0;
      }
    }
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == s[i - 1]) return 0;
  }
  return sign;
}

Nerve::Nerve(std::vector<int> vertices, std::vector<Simplex> simplices) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw DomainError("nerve: repeated vertex");
  }
  vertices_ = std::move(vertices);
  const std::set<int> vset(vertices_.begin(), vertices_.end());
  std::set<Simplex> seen[4];
  for (int v : vertices_) seen[0].insert({v});
  for (Simplex s : simplices) {
    if (s.empty() || s.size() > 4) throw DomainError("nerve: simplex dimension must be 0..3");
    if (sort_simplex(s) == 0) throw DomainError("nerve: repeated vertex in " + simplex_key(s));
    for (int v : s) {
      if (!vset.count(v)) throw DomainError("nerve: unknown vertex in " + simplex_key(s));
    }
    seen[s.size() - 1].insert(s);
  }
  for (int dim = 1; dim <= 3; ++dim) {
    for (const Simplex& s : seen[dim]) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (!seen[dim - 1].count(face(s, k))) {
          throw DomainError("nerve: face " + simplex_key(face(s, k)) + " of " + simplex_key(s) +
                            " is missing");
        }
      }
    }
  }
  for (int dim = 0; dim <= 3; ++dim) {
    by_dim_[dim].assign(seen[dim].begin(), seen[dim].end());
    for (std::size_t i = 0; i < by_dim_[dim].size(); ++i) {
      lookup_[by_dim_[dim][i]] = static_cast<int>(i);
    }
  }
}

Nerve Nerve::triangle() { return Nerve({0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}); }

Nerve Nerve::tetrahedron() {
  return Nerve({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2},
                              {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 1, 2, 3}});
}

Nerve Nerve::tetrahedron_boundary() {
  return Nerve({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2},
                              {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

Nerve Nerve::genus1() {
  return Nerve({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2}});
}

const std::vector<Simplex>& Nerve::simplices(int dim) const {
  if (dim < 0 || dim > 3) throw DomainError("nerve: dimension must be 0..3");
  return by_dim_[dim];
}

bool Nerve::contains(Simplex s) const {
  if (sort_simplex(s) == 0) return false;
  return lookup_.count(s) > 0;
}

int Nerve::index(const Simplex& sorted) const {
  auto it = lookup_.find(sorted);
  return it == lookup_.end() ? -1 : it->second;
}

Cochain::Cochain(int degree, int n) : degree_(degree), n_(n) {
  if (degree < 0 || degree > 3) throw DegreeOverflowError("cochain degree must be 0..3");
}

void Cochain::set(Simplex s, GrassmannElement v) {
  if (static_cast<int>(s.size()) != degree_ + 1) {
    throw DomainError("cochain: simplex " + simplex_key(s) + " has wrong dimension");
  }
  if (v.n() != n_) throw DomainError("cochain: generator count mismatch");
  const int sign = sort_simplex(s);
  if (sign == 0) throw DomainError("cochain: repeated vertex");
  if (sign < 0) v = -v;
  values_.insert_or_assign(std::move(s), std::move(v));
}

GrassmannElement Cochain::get(Simplex s) const {
  const int sign = sort_simplex(s);
  if (sign == 0) return GrassmannElement::zero(n_);
  auto it = values_.find(s);
  if (it == values_.end()) return GrassmannElement::zero(n_);
  return sign > 0 ? it->second : -it->second;
}

double Cochain::max_abs() const {
  double m = 0.0;
  for (const auto& [s, v] : values_) m = std::max(m, v.max_abs());
  return m;
}

Cochain coboundary(const Nerve& nerve, const Cochain& c) {
  const int p = c.degree();
  if (p > 2) throw DegreeOverflowError("coboundary: degree must be at most 2");
  Cochain out(p + 1, c.n());
  for (const Simplex& s : nerve.simplices(p + 1)) {
    GrassmannElement acc = GrassmannElement::zero(c.n());
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k % 2 == 0) {
        acc += c.get(face(s, k));
      } else {
        acc -= c.get(face(s, k));
      }
    }
    out.set(s, std::move(acc));
  }
  return out;
}

Cochain cup_product(const Nerve& nerve, const Cochain& u, const Cochain& v) {
  const int p = u.degree();
  const int q = v.degree();
  if (p + q > 3) throw DegreeOverflowError("cup_product: total degree must be at most 3");
  if (u.n() != v.n()) throw DomainError("cup_product: generator count mismatch");
  Cochain out(p + q, u.n());
  for (const Simplex& s : nerve.simplices(p + q)) {
    Simplex front(s.begin(), s.begin() + p + 1);
    Simplex back(s.begin() + p, s.end());
    out.set(s, u.get(front) * v.get(back));
  }
  return out;
}

CoboundarySolution solve_coboundary(const Nerve& nerve, const Cochain& g, double rank_tol) {
  const int p = g.degree();
  if (p < 1) throw DomainError("solve_coboundary: degree must be at least 1");
  const int n = g.n();
  const auto& rows = nerve.simplices(p);
  const auto& cols = nerve.simplices(p - 1);

  std::vector<Monomial> monos;
  for (const auto& [s, v] : g.values()) {
    for (const auto& [m, c] : v.terms()) monos.push_back(m);
  }
  std::sort(monos.begin(), monos.end());
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < rows[r].size(); ++k) {
      const int c = nerve.index(face(rows[r], k));
      d(r, c) += (k % 2 == 0) ? 1.0 : -1.0;
    }
  }
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(rows.size(), monos.size());
  double bmax = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const GrassmannElement v = g.get(rows[r]);
    for (std::size_t k = 0; k < monos.size(); ++k) {
      b(r, k) = v.coefficient(monos[k]);
      bmax = std::max(bmax, std::abs(b(r, k)));
    }
  }

  CoboundarySolution out{false, Cochain(p - 1, n), 0.0, static_cast<int>(cols.size()), {}};
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(cols.size(), monos.size());
  if (!rows.empty() && !cols.empty()) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
    cod.setThreshold(rank_tol);
    cod.compute(d);
    out.kernel_dim = static_cast<int>(cols.size()) - static_cast<int>(cod.rank());
    if (!monos.empty()) x = cod.solve(b);
  }
  const Eigen::MatrixXcd resid = d * x - b;
  out.residual = resid.size() ? resid.cwiseAbs().maxCoeff() : 0.0;
  out.consistent = out.residual <= rank_tol * std::max(1.0, bmax);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<GrassmannElement::Term> terms;
    for (std::size_t k = 0; k < monos.size(); ++k) terms.emplace_back(monos[k], x(c, k));
    out.f.set(cols[c], GrassmannElement(n, std::move(terms)));
  }
  out.message = out.consistent ? "solved" : "obstruction class nonzero on this nerve";
  return out;
}

GroupCoords TransitionData::oriented(int i, int j) const {
  if (i == j) return GroupCoords::identity(n);
  if (i < j) {
    auto it = edges.find({i, j});
    return it == edges.end() ? GroupCoords::identity(n) : it->second;
  }
  auto it = edges.find({j, i});
  return it == edges.end() ? GroupCoords::identity(n) : coords_inverse(it->second);
}

long TransitionData::winding(const Simplex& sorted_triple) const {
  auto it = windings.find(sorted_triple);
  return it == windings.end() ? 0 : it->second;
}

void TransitionData::set(int i, int j, GroupCoords g) {
  if (i == j) throw DomainError("transition data: edge needs two distinct charts");
  g.validate();
  if (g.n() != n) throw DomainError("transition data: generator count mismatch");
  if (i < j) {
    edges.insert_or_assign(Simplex{i, j}, std::move(g));
  } else {
    edges.insert_or_assign(Simplex{j, i}, coords_inverse(g));
  }
}

namespace {

struct CocycleResiduals {
  Worst alpha, beta, h, s, sdet;
};

CocycleResiduals cocycle_residuals(const Nerve& nerve, const TransitionData& data) {
  CocycleResiduals out;
  const double two_pi = 2 * std::numbers::pi;
  for (const Simplex& t : nerve.simplices(2)) {
    const GroupCoords gij = data.oriented(t[0], t[1]);
    const GroupCoords gjk = data.oriented(t[1], t[2]);
    const GroupCoords gik = data.oriented(t[0], t[2]);
    const GroupCoords prod = coords_product(gij, gjk);
    GrassmannElement dh = prod.h - gik.h +
                          GrassmannElement::scalar(data.n, Complex(0, two_pi * data.winding(t)));
    GrassmannElement ds = prod.s - gik.s;
    if (data.modulo_2pi_i) {
      dh = reduce_mod_2pi_i(dh);
      ds = reduce_mod_2pi_i(ds);
    }
    out.alpha.update(prod.alpha - gik.alpha, t);
    out.beta.update(prod.beta - gik.beta, t);
    out.h.update(dh, t);
    out.s.update(ds, t);
    out.sdet.update(exp_even(gij.s) * exp_even(gjk.s) - exp_even(gik.s), t);
  }
  return out;
}

}  // namespace

Report check_sl_cocycle(const Nerve& nerve, const TransitionData& data, double tol) {
  Report r("sl cocycle");
  Worst s_nonzero;
  for (const auto& [e, g] : data.edges) {
    require_n(data, g.h, "check_sl_cocycle");
    s_nonzero.update(g.s, e);
  }
  r.add("sl_mode", s_nonzero.value, tol, s_nonzero.where);
  const CocycleResiduals res = cocycle_residuals(nerve, data);
  r.add("alpha_cocycle", res.alpha.value, tol, res.alpha.where);
  r.add("beta_cocycle", res.beta.value, tol, res.beta.where);
  r.add("h_identity", res.h.value, tol, res.h.where);
  return r;
}

Report check_gl_cocycle(const Nerve& nerve, const TransitionData& data, double tol) {
  if (data.mode == GroupMode::SL) return check_sl_cocycle(nerve, data, tol);
  Report r("gl cocycle");
  for (const auto& [e, g] : data.edges) require_n(data, g.h, "check_gl_cocycle");
  const CocycleResiduals res = cocycle_residuals(nerve, data);
  r.add("alpha_cocycle", res.alpha.value, tol, res.alpha.where);
  r.add("beta_cocycle", res.beta.value, tol, res.beta.where);
  r.add("h_identity", res.h.value, tol, res.h.where);
  r.add("s_additivity", res.s.value, tol, res.s.where);
  r.add("sdet_multiplicative", res.sdet.value, tol, res.sdet.where);
  return r;
}

GrassmannElement two_cocycle_entry(const TransitionData& data, int i, int j, int k) {
  const GroupCoords gij = data.oriented(i, j);
  const GroupCoords gjk = data.oriented(j, k);
  return (gij.alpha * exp_even(gij.s) * gjk.beta - exp_even(-gij.s) * gjk.alpha * gij.beta) * 0.5;
}

Cochain two_cocycle_g(const Nerve& nerve, const TransitionData& data, double tol) {
  const Report check = check_gl_cocycle(nerve, data, tol);
  if (!check.passed()) {
    std::string failed;
    for (const std::string& name : check.failed_names()) failed += " " + name;
    throw DomainError("two_cocycle_g: transition data fails the cocycle check:" + failed);
  }
  Cochain g(2, data.n);
  for (const Simplex& t : nerve.simplices(2)) g.set(t, two_cocycle_entry(data, t[0], t[1], t[2]));
  return g;
}

Report check_two_cocycle(const Nerve& nerve, const TransitionData& data, double tol) {
  Report r("two-cocycle g");
  const Cochain g = two_cocycle_g(nerve, data, tol);
  Worst anti;
  for (const Simplex& t : nerve.simplices(2)) {
    Simplex perm = t;
    do {
      Simplex sorted = perm;
      const int sign = sort_simplex(sorted);
      const GrassmannElement expected = sign > 0 ? g.get(t) : -g.get(t);
      anti.update(two_cocycle_entry(data, perm[0], perm[1], perm[2]) - expected, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  r.add("antisymmetry", anti.value, tol, anti.where);
  Worst closed;
  const Cochain dg = coboundary(nerve, g);
  for (const auto& [s, v] : dg.values()) closed.update(v, s);
  r.add("closed", closed.value, tol, closed.where);
  return r;
}

namespace {

const HiggsVertex& vertex_data(const HiggsCechData& higgs, int v, int n) {
  auto it = higgs.vertices.find(v);
  if (it == higgs.vertices.end()) {
    throw DomainError("higgs data: chart " + std::to_string(v) + " has no entries");
  }
  const HiggsVertex& hv = it->second;
  if (hv.a.n() != n || hv.b.n() != n || hv.delta.n() != n || hv.gamma.n() != n) {
    throw DomainError("higgs data: generator count mismatch at chart " + std::to_string(v));
  }
  if (!hv.a.is_even() || !hv.b.is_even()) {
    throw ParityError("higgs data: a and b must be even at chart " + std::to_string(v));
  }
  if (!hv.delta.is_odd() || !hv.gamma.is_odd()) {
    throw ParityError("higgs data: delta and gamma must be odd at chart " + std::to_string(v));
  }
  return hv;
}

}  // namespace

HiggsObstruction sl_higgs_obstruction(const Nerve& nerve, const TransitionData& data,
                                      const HiggsCechData& higgs, double tol) {
  const int n = data.n;
  HiggsObstruction out{Cochain(1, n), Cochain(0, n), false, Report("sl higgs obstruction")};
  Worst b_nonzero, delta_section, gamma_section;
  for (int v : nerve.vertices()) b_nonzero.update(vertex_data(higgs, v, n).b, {v});
  for (const Simplex& e : nerve.simplices(1)) {
    const HiggsVertex& hi = vertex_data(higgs, e[0], n);
    const HiggsVertex& hj = vertex_data(higgs, e[1], n);
    const GroupCoords g = data.oriented(e[0], e[1]);
    delta_section.update(hj.delta - exp_even(-g.s) * hi.delta, e);
    gamma_section.update(hj.gamma - exp_even(g.s) * hi.gamma, e);
    out.t.set(e, hi.delta * g.alpha - g.beta * hi.gamma);
  }
  out.report.add("b_zero", b_nonzero.value, tol, b_nonzero.where);
  out.report.add("delta_section", delta_section.value, tol, delta_section.where);
  out.report.add("gamma_section", gamma_section.value, tol, gamma_section.where);

  Worst cocycle;
  const Cochain dt = coboundary(nerve, out.t);
  for (const auto& [s, v] : dt.values()) cocycle.update(v, s);
  out.report.add("t_cocycle", cocycle.value, tol, cocycle.where);

  CoboundarySolution sol = solve_coboundary(nerve, out.t, tol);
  out.exact = sol.consistent;
  out.eta = std::move(sol.f);
  out.report.add("t_exact", sol.residual, tol * std::max(1.0, out.t.max_abs()),
                 sol.consistent ? "" : sol.message);
  out.report.note("eta_solution_dim", std::to_string(sol.kernel_dim));
  return out;
}

GrassmannElement gl_c_entry(const TransitionData& data, const HiggsCechData& higgs, int i, int j) {
  const HiggsVertex& hi = vertex_data(higgs, i, data.n);
  const GroupCoords g = data.oriented(i, j);
  return g.beta * hi.gamma - hi.delta * g.alpha - g.beta * g.alpha * hi.b;
}

Report gl_higgs_constraints(const Nerve& nerve, const TransitionData& data,
                            const HiggsCechData& higgs, double tol) {
  const int n = data.n;
  Report r("gl higgs constraints");
  Worst alpha_rel, beta_rel, anti, a_glue;
  Cochain c(1, n);
  for (const Simplex& e : nerve.simplices(1)) {
    const int i = e[0];
    const int j = e[1];
    const HiggsVertex& hi = vertex_data(higgs, i, n);
    const HiggsVertex& hj = vertex_data(higgs, j, n);
    const GroupCoords g = data.oriented(i, j);
    alpha_rel.update(g.alpha * hi.b - (hi.gamma - exp_even(-g.s) * hj.gamma), e);
    beta_rel.update(g.beta * hi.b - (exp_even(g.s) * hj.delta - hi.delta), e);
    const GrassmannElement cij = gl_c_entry(data, higgs, i, j);
    anti.update(cij + gl_c_entry(data, higgs, j, i), e);
    if (higgs.check_a) a_glue.update(cij - (hi.a - hj.a), e);
    c.set(e, cij);
  }
  r.add("alpha_relation", alpha_rel.value, tol, alpha_rel.where);
  r.add("beta_relation", beta_rel.value, tol, beta_rel.where);
  r.add("c_antisymmetry", anti.value, tol, anti.where);

  Worst cocycle;
  for (const Simplex& t : nerve.simplices(2)) {
    cocycle.update(gl_c_entry(data, higgs, t[0], t[1]) + gl_c_entry(data, higgs, t[1], t[2]) +
                       gl_c_entry(data, higgs, t[2], t[0]),
                   t);
  }
  r.add("c_cocycle", cocycle.value, tol, cocycle.where);

  // c_ij = a_i - a_j means c = -delta(a).
  const CoboundarySolution sol = solve_coboundary(nerve, c, tol);
  r.add("c_exact", sol.residual, tol * std::max(1.0, c.max_abs()),
        sol.consistent ? "" : sol.message);
  r.note("a_solution_dim", std::to_string(sol.kernel_dim));
  if (higgs.check_a) r.add("a_gluing", a_glue.value, tol, a_glue.where);
  return r;
}

TransitionData random_cocycle_data(const Nerve& nerve, int n, GroupMode mode, Rng& rng) {
  TransitionData data(n, mode);
  std::map<int, GroupCoords> potential;
  for (int v : nerve.vertices()) potential.emplace(v, rng.coords(n, mode == GroupMode::SL));
  for (const Simplex& e : nerve.simplices(1)) {
    data.set(e[0], e[1], coords_product(potential.at(e[0]), coords_inverse(potential.at(e[1]))));
  }
  return data;
}

std::pair<TransitionData, HiggsCechData> random_admissible_gl(const Nerve& nerve, int n, Rng& rng) {
  TransitionData data(n, GroupMode::GL);
  HiggsCechData higgs;
  const GrassmannElement b = rng.invertible_even(n, 0.5, 0.5);
  const GrassmannElement b_inv = inv(b);
  std::map<int, GrassmannElement> sigma;
  for (int v : nerve.vertices()) {
    sigma.emplace(v, rng.even(n, 0.3));
    higgs.vertices.emplace(
        v, HiggsVertex{GrassmannElement::zero(n), b, rng.odd(n, 0.5), rng.odd(n, 0.5)});
  }
  for (const Simplex& e : nerve.simplices(1)) {
    const HiggsVertex& hi = higgs.vertices.at(e[0]);
    const HiggsVertex& hj = higgs.vertices.at(e[1]);
    const GrassmannElement s = sigma.at(e[1]) - sigma.at(e[0]);
    GrassmannElement alpha = (hi.gamma - exp_even(-s) * hj.gamma) * b_inv;
    GrassmannElement beta = (exp_even(s) * hj.delta - hi.delta) * b_inv;
    data.edges.insert_or_assign(e, GroupCoords{GrassmannElement::zero(n), s, alpha, beta});
  }
  // h_ik = h_ij + h_jk + g_ijk, i.e. delta h = -g.
  Cochain g(2, n);
  for (const Simplex& t : nerve.simplices(2)) g.set(t, two_cocycle_entry(data, t[0], t[1], t[2]));
  const CoboundarySolution hs = solve_coboundary(nerve, g);
  if (hs.consistent) {
    for (auto& [e, coords] : data.edges) coords.h = -hs.f.get(e);
  }
  Cochain c(1, n);
  for (const Simplex& e : nerve.simplices(1)) c.set(e, gl_c_entry(data, higgs, e[0], e[1]));
  const CoboundarySolution as = solve_coboundary(nerve, c);
  if (as.consistent) {
    for (auto& [v, hv] : higgs.vertices) hv.a = -as.f.get({v});
    higgs.check_a = true;
  }
  return {std::move(data), std::move(higgs)};
}

}  // namespace glh
