#include "glh/integrable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "glh/error.hpp"
#include "glh/random.hpp"

namespace glh {

namespace {

void require_site(const ParabolicData& p, int i) {
  if (i < 0 || i >= p.m()) throw DomainError("site index " + std::to_string(i) + " out of range");
}

void require_pairs(const ParabolicData& p) {
  if (p.m() < 2) throw DomainError("need at least two marked points");
}

GrassmannElement scalar(const ParabolicData& p, Complex c) {
  return GrassmannElement::scalar(p.generators(), c);
}

GrassmannElement theta(const ParabolicData& p, int i) {
  return GrassmannElement::generator(p.generators(), theta_index(i));
}

GrassmannElement eta(const ParabolicData& p, int i) {
  return GrassmannElement::generator(p.generators(), eta_index(i));
}

std::string pair_name(const char* prefix, int i, int j) {
  return std::string(prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

void ParabolicData::validate() const {
  for (int i = 0; i < m(); ++i) {
    for (int j = i + 1; j < m(); ++j) {
      const double scale = std::max({1.0, std::abs(sites[i].z), std::abs(sites[j].z)});
      if (std::abs(sites[i].z - sites[j].z) < 1e-8 * scale) {
        throw DomainError("marked points " + std::to_string(i) + " and " + std::to_string(j) +
                          " coincide");
      }
    }
  }
  if (generators() > kMaxGenerators) throw DomainError("too many marked points");
}

ParabolicData random_parabolic(int m, Rng& rng) {
  ParabolicData p;
  while (p.m() < m) {
    const Complex z = rng.complex(2.0);
    bool far = true;
    for (const Site& s : p.sites) far = far && std::abs(s.z - z) >= 0.5;
    if (far) p.sites.push_back({z, rng.complex(1.0), rng.complex(1.0)});
  }
  return p;
}

int theta_index(int site) { return 2 * site + 1; }
int eta_index(int site) { return 2 * site + 2; }

SuperMatrix11 residue_matrix(const ParabolicData& p, int i) {
  require_site(p, i);
  const Site& s = p.sites[i];
  const Complex a = (s.u + s.v) / 2.0;
  const Complex b = (s.u - s.v) / 2.0;
  const GrassmannElement te = theta(p, i) * eta(p, i);
  return {scalar(p, a) - te, theta(p, i), eta(p, i) * (a - b), scalar(p, b) - te};
}

SuperMatrix11 residue_by_conjugation(const ParabolicData& p, int i) {
  require_site(p, i);
  const Site& s = p.sites[i];
  const int n = p.generators();
  const SuperMatrix11 a_prime{scalar(p, (s.u + s.v) / 2.0), theta(p, i), GrassmannElement::zero(n),
                              scalar(p, (s.u - s.v) / 2.0)};
  const SuperMatrix11 g{GrassmannElement::one(n), GrassmannElement::zero(n), eta(p, i),
                        GrassmannElement::one(n)};
  return g * a_prime * inverse(g);
}

SuperMatrix11 higgs_value(const ParabolicData& p, Complex z) {
  SuperMatrix11 acc = SuperMatrix11::zero(p.generators());
  for (int i = 0; i < p.m(); ++i) {
    const Complex dz = z - p.sites[i].z;
    if (std::abs(dz) < 1e-12) throw DomainError("higgs_value: evaluation at marked point " + std::to_string(i));
    acc = acc + (1.0 / dz) * residue_matrix(p, i);
  }
  return acc;
}

GrassmannElement garnier_hamiltonian(const ParabolicData& p, int i) {
  require_pairs(p);
  require_site(p, i);
  const SuperMatrix11 ai = residue_matrix(p, i);
  GrassmannElement h = GrassmannElement::zero(p.generators());
  for (int j = 0; j < p.m(); ++j) {
    if (j == i) continue;
    h += str(ai * residue_matrix(p, j)) * (1.0 / (p.sites[i].z - p.sites[j].z));
  }
  return h;
}

GrassmannElement garnier_expanded(const ParabolicData& p, int i) {
  require_pairs(p);
  require_site(p, i);
  const Site& si = p.sites[i];
  const GrassmannElement ti = theta(p, i);
  const GrassmannElement ei = eta(p, i);
  GrassmannElement h = GrassmannElement::zero(p.generators());
  for (int j = 0; j < p.m(); ++j) {
    if (j == i) continue;
    const Site& sj = p.sites[j];
    const GrassmannElement tj = theta(p, j);
    const GrassmannElement ej = eta(p, j);
    const GrassmannElement term = (scalar(p, si.u) - 2.0 * (ti * ei)) * (0.5 * sj.v) +
                                  (scalar(p, sj.u) - 2.0 * (tj * ej)) * (0.5 * si.v) +
                                  ti * ej * sj.v - ei * tj * si.v;
    h += term * (1.0 / (si.z - sj.z));
  }
  return h;
}

GrassmannElement poisson_bracket(const GrassmannElement& f, const GrassmannElement& g, int m) {
  if (f.parity() == Parity::Mixed || g.parity() == Parity::Mixed) {
    throw ParityError("poisson_bracket: arguments must have homogeneous parity");
  }
  if (f.n() != g.n() || f.n() < 2 * m) throw DomainError("poisson_bracket: generator count mismatch");
  GrassmannElement acc = GrassmannElement::zero(f.n());
  for (int i = 0; i < m; ++i) {
    const int t = theta_index(i);
    const int e = eta_index(i);
    acc += left_derivative(f, t) * left_derivative(g, e) + left_derivative(f, e) * left_derivative(g, t);
  }
  return acc;
}

namespace {

using Triplet = Eigen::Triplet<Complex>;

Operator from_triplets(int m, const std::vector<Triplet>& t) {
  const Eigen::Index dim = Eigen::Index{1} << m;
  Operator op(dim, dim);
  op.setFromTriplets(t.begin(), t.end());
  return op;
}

void require_op_site(int m, int i) {
  if (m < 1 || m > 30) throw DomainError("operator module size must be 1..30");
  if (i < 0 || i >= m) throw DomainError("site index " + std::to_string(i) + " out of range");
}

}  // namespace

Operator theta_op(int m, int i) {
  require_op_site(m, i);
  const Monomial bit = Monomial{1} << i;
  std::vector<Triplet> t;
  for (Monomial b = 0; b < (Monomial{1} << m); ++b) {
    if (b & bit) continue;
    t.emplace_back(static_cast<Eigen::Index>(b | bit), static_cast<Eigen::Index>(b),
                   static_cast<double>(monomial::product_sign(bit, b)));
  }
  return from_triplets(m, t);
}

Operator d_theta_op(int m, int i) {
  require_op_site(m, i);
  const Monomial bit = Monomial{1} << i;
  std::vector<Triplet> t;
  for (Monomial b = 0; b < (Monomial{1} << m); ++b) {
    if (!(b & bit)) continue;
    t.emplace_back(static_cast<Eigen::Index>(b ^ bit), static_cast<Eigen::Index>(b),
                   static_cast<double>(monomial::product_sign(bit, b ^ bit)));
  }
  return from_triplets(m, t);
}

Operator identity_op(int m) {
  const Eigen::Index dim = Eigen::Index{1} << m;
  Operator op(dim, dim);
  op.setIdentity();
  return op;
}

GaudinGenerators gaudin_generators(const ParabolicData& p, int i) {
  require_site(p, i);
  const int m = p.m();
  const Site& s = p.sites[i];
  const Operator one = identity_op(m);
  const Operator th = theta_op(m, i);
  const Operator d = d_theta_op(m, i);
  Operator n = (0.5 * s.u) * one;
  n -= Operator(th * d);
  return {std::move(n), s.v * one, s.v * d, th};
}

Operator gaudin_hamiltonian(const ParabolicData& p, int i, Complex hbar) {
  require_pairs(p);
  require_site(p, i);
  const int m = p.m();
  const GaudinGenerators gi = gaudin_generators(p, i);
  Operator h(Eigen::Index{1} << m, Eigen::Index{1} << m);
  for (int j = 0; j < m; ++j) {
    if (j == i) continue;
    const GaudinGenerators gj = gaudin_generators(p, j);
    Operator term = gi.e * gj.n;
    term += Operator(gi.n * gj.e);
    term += Operator(gi.psi_minus * gj.psi_plus);
    term -= Operator(gi.psi_plus * gj.psi_minus);
    h += (hbar / (p.sites[i].z - p.sites[j].z)) * term;
  }
  h.prune(Complex{});
  return h;
}

Operator total_number_op(int m) {
  Operator n(Eigen::Index{1} << m, Eigen::Index{1} << m);
  for (int j = 0; j < m; ++j) n += Operator(theta_op(m, j) * d_theta_op(m, j));
  return n;
}

Operator substitute_operators(int m, const GrassmannElement& x) {
  if (x.n() > 2 * m) throw DomainError("substitute_operators: observable uses generators beyond 2m");
  std::vector<Operator> gens;
  for (int i = 0; i < m; ++i) {
    gens.push_back(theta_op(m, i));
    gens.push_back(d_theta_op(m, i));
  }
  Operator acc(Eigen::Index{1} << m, Eigen::Index{1} << m);
  for (const auto& [mono, c] : x.terms()) {
    // Generators in increasing order, so theta_i sits left of d_theta_i.
    Operator term = c * identity_op(m);
    for (int g : monomial::indices(mono)) term = term * gens[g - 1];
    acc += term;
  }
  acc.prune(Complex{});
  return acc;
}

Operator quantize(const ParabolicData& p, const GrassmannElement& h, Complex hbar) {
  require_pairs(p);
  const double scale = std::max(1.0, h.max_abs());
  bool member = false;
  for (int i = 0; i < p.m() && !member; ++i) {
    member = (h - garnier_hamiltonian(p, i)).max_abs() <= 1e-9 * scale;
  }
  if (!member) throw DomainError("quantize: observable is not a Garnier Hamiltonian of this system");
  Operator q = hbar * substitute_operators(p.m(), h);
  q.prune(Complex{});
  return q;
}

double max_abs(const Operator& a) {
  double r = 0.0;
  for (Eigen::Index k = 0; k < a.outerSize(); ++k) {
    for (Operator::InnerIterator it(a, k); it; ++it) r = std::max(r, std::abs(it.value()));
  }
  return r;
}

double frobenius(const Operator& a) { return a.norm(); }

Operator commutator(const Operator& a, const Operator& b) {
  Operator c = a * b;
  c -= Operator(b * a);
  return c;
}

Operator anticommutator(const Operator& a, const Operator& b) {
  Operator c = a * b;
  c += Operator(b * a);
  return c;
}

namespace {

double relative(const Operator& x, double scale) { return scale > 0 ? frobenius(x) / scale : frobenius(x); }

}  // namespace

Report garnier_report(const ParabolicData& p, double tol) {
  p.validate();
  require_pairs(p);
  Report r("garnier");
  std::vector<GrassmannElement> h;
  for (int i = 0; i < p.m(); ++i) {
    h.push_back(garnier_hamiltonian(p, i));
    const std::string idx = std::to_string(i);
    r.add("routes_" + idx, (h.back() - garnier_expanded(p, i)).max_abs(), tol);
    r.add_flag("even_" + idx, h.back().is_even());
    r.add("residue_conjugation_" + idx,
          (residue_matrix(p, i) - residue_by_conjugation(p, i)).max_abs(), tol);
    r.add("supertrace_" + idx,
          (str(residue_matrix(p, i)) - GrassmannElement::scalar(p.generators(), p.sites[i].v)).max_abs(),
          tol);
  }
  GrassmannElement sum = GrassmannElement::zero(p.generators());
  for (const GrassmannElement& x : h) sum += x;
  r.add("sum_zero", sum.max_abs(), tol);
  for (int i = 0; i < p.m(); ++i) {
    for (int j = i + 1; j < p.m(); ++j) {
      r.add(pair_name("bracket", i, j), poisson_bracket(h[i], h[j], p.m()).max_abs(), tol);
    }
  }
  return r;
}

Report gaudin_relations_report(const ParabolicData& p, double tol) {
  p.validate();
  Report r("gl(1|1) relations");
  std::vector<GaudinGenerators> g;
  for (int i = 0; i < p.m(); ++i) g.push_back(gaudin_generators(p, i));
  for (int i = 0; i < p.m(); ++i) {
    const GaudinGenerators& x = g[i];
    const std::string site = "site_" + std::to_string(i) + ".";
    r.add(site + "n_psi_plus", max_abs(commutator(x.n, x.psi_plus) - x.psi_plus), tol);
    r.add(site + "n_psi_minus", max_abs(commutator(x.n, x.psi_minus) + x.psi_minus), tol);
    r.add(site + "psi_anticommutator", max_abs(anticommutator(x.psi_plus, x.psi_minus) - x.e), tol);
    const double central = std::max({max_abs(commutator(x.e, x.n)), max_abs(commutator(x.e, x.psi_plus)),
                                     max_abs(commutator(x.e, x.psi_minus))});
    r.add(site + "e_central", central, tol);
  }
  for (int i = 0; i < p.m(); ++i) {
    for (int j = i + 1; j < p.m(); ++j) {
      const GaudinGenerators& x = g[i];
      const GaudinGenerators& y = g[j];
      double worst = 0.0;
      for (const Operator* a : {&x.psi_plus, &x.psi_minus}) {
        for (const Operator* b : {&y.psi_plus, &y.psi_minus}) {
          worst = std::max(worst, max_abs(anticommutator(*a, *b)));
        }
      }
      for (const Operator* a : {&x.n, &x.e, &x.psi_plus, &x.psi_minus}) {
        for (const Operator* b : {&y.n, &y.e}) worst = std::max(worst, max_abs(commutator(*a, *b)));
      }
      for (const Operator* a : {&x.n, &x.e}) {
        for (const Operator* b : {&y.psi_plus, &y.psi_minus}) {
          worst = std::max(worst, max_abs(commutator(*a, *b)));
        }
      }
      r.add(pair_name("cross", i, j), worst, tol);
    }
  }
  return r;
}

Report gaudin_commute_report(const ParabolicData& p, double tol) {
  p.validate();
  require_pairs(p);
  Report r("gaudin");
  const int m = p.m();
  std::vector<Operator> h;
  double norm_max = 0.0;
  for (int i = 0; i < m; ++i) {
    h.push_back(gaudin_hamiltonian(p, i, p.hbar));
    norm_max = std::max(norm_max, frobenius(h.back()));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      r.add(pair_name("commutator", i, j), relative(commutator(h[i], h[j]), frobenius(h[i]) * frobenius(h[j])),
            tol);
    }
  }
  Operator sum(Eigen::Index{1} << m, Eigen::Index{1} << m);
  for (const Operator& x : h) sum += x;
  r.add("sum_zero", relative(sum, norm_max), tol);
  const Operator n_tot = total_number_op(m);
  for (int i = 0; i < m; ++i) {
    r.add("number_" + std::to_string(i), relative(commutator(h[i], n_tot), frobenius(h[i]) * frobenius(n_tot)),
          tol);
  }
  r.merge("relations", gaudin_relations_report(p, tol));
  return r;
}

Report quantize_report(const ParabolicData& p, double tol) {
  p.validate();
  require_pairs(p);
  Report r("quantize");
  for (int i = 0; i < p.m(); ++i) {
    const GrassmannElement classical = garnier_hamiltonian(p, i);
    const Operator q = quantize(p, classical, p.hbar);
    const Operator g = gaudin_hamiltonian(p, i, p.hbar);
    const std::string idx = std::to_string(i);
    r.add("matches_gaudin_" + idx, max_abs(q - g), tol);
    // Vacuum matrix element against the bosonic classical value with u -> hbar u.
    const Complex vacuum = Operator(g).coeff(0, 0);
    r.add("vacuum_" + idx, std::abs(vacuum - p.hbar * classical.body()), tol);
  }
  return r;
}

}  // namespace glh
