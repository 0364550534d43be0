#include "glh/hitchin.hpp"

#include <algorithm>

#include "glh/error.hpp"

namespace glh {

namespace {

Parity product_parity(Parity a, Parity b) {
  if (a == Parity::Mixed || b == Parity::Mixed) return Parity::Mixed;
  return a == b ? Parity::Even : Parity::Odd;
}

Parity join_parity(Parity a, Parity b) { return a == b ? a : Parity::Mixed; }

bool matches(Parity declared, const GrassmannElement& c) {
  switch (declared) {
    case Parity::Even:
      return c.is_even();
    case Parity::Odd:
      return c.is_odd();
    case Parity::Mixed:
      return true;
  }
  return false;
}

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

LocalFunction::LocalFunction(int n, Parity parity, int degree_cap)
    : n_(n), parity_(parity), cap_(degree_cap) {
  if (n < 0 || n > kMaxGenerators) throw DomainError("local function: bad generator count");
  if (degree_cap < 0) throw DomainError("local function: negative degree cap");
}

LocalFunction LocalFunction::constant(const GrassmannElement& c, Parity parity, int degree_cap) {
  return term(0, 0, c, parity, degree_cap);
}

LocalFunction LocalFunction::term(int p, int q, const GrassmannElement& c, Parity parity,
                                  int degree_cap) {
  LocalFunction f(c.n(), parity, degree_cap);
  f.add_term(p, q, c);
  return f;
}

LocalFunction LocalFunction::with_cap(int cap) const {
  LocalFunction f(n_, parity_, cap);
  for (const auto& [k, c] : terms_) f.add_term(k.first, k.second, c);
  return f;
}

void LocalFunction::add_term(int p, int q, const GrassmannElement& c) {
  if (c.n() != n_) throw DomainError("local function: generator count mismatch");
  if (p < 0 || q < 0) throw DomainError("local function: negative exponent");
  if (!matches(parity_, c)) {
    throw ParityError(std::string("local function: coefficient of z^") + std::to_string(p) +
                      " zbar^" + std::to_string(q) + " is not " + to_string(parity_));
  }
  if (c.is_zero()) return;
  if (p > cap_ || q > cap_) {
    throw DegreeOverflowError("local function: degree " + std::to_string(std::max(p, q)) +
                              " exceeds cap " + std::to_string(cap_));
  }
  auto [it, inserted] = terms_.try_emplace({p, q}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GrassmannElement LocalFunction::coefficient(int p, int q) const {
  auto it = terms_.find({p, q});
  return it == terms_.end() ? GrassmannElement::zero(n_) : it->second;
}

bool LocalFunction::is_holomorphic() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.second == 0; });
}

bool LocalFunction::is_antiholomorphic() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.first == 0; });
}

double LocalFunction::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, c.max_abs());
  return m;
}

GrassmannElement LocalFunction::evaluate(Complex z) const {
  GrassmannElement acc = GrassmannElement::zero(n_);
  for (const auto& [k, c] : terms_) acc += c * (ipow(z, k.first) * ipow(std::conj(z), k.second));
  return acc;
}

LocalFunction LocalFunction::operator-() const {
  LocalFunction f(n_, parity_, cap_);
  for (const auto& [k, c] : terms_) f.terms_.emplace(k, -c);
  return f;
}

LocalFunction operator+(const LocalFunction& f, const LocalFunction& g) {
  if (f.n_ != g.n_) throw DomainError("local function: generator count mismatch");
  LocalFunction out(f.n_, join_parity(f.parity_, g.parity_), std::max(f.cap_, g.cap_));
  out.terms_ = f.terms_;
  for (const auto& [k, c] : g.terms_) out.add_term(k.first, k.second, c);
  return out;
}

LocalFunction operator-(const LocalFunction& f, const LocalFunction& g) { return f + (-g); }

LocalFunction operator*(const LocalFunction& f, const LocalFunction& g) {
  if (f.n_ != g.n_) throw DomainError("local function: generator count mismatch");
  LocalFunction out(f.n_, product_parity(f.parity_, g.parity_), std::max(f.cap_, g.cap_));
  for (const auto& [kf, cf] : f.terms_) {
    for (const auto& [kg, cg] : g.terms_) {
      GrassmannElement c = cf * cg;
      if (c.is_zero()) continue;
      out.add_term(kf.first + kg.first, kf.second + kg.second, c);
    }
  }
  return out;
}

LocalFunction operator*(Complex c, const LocalFunction& f) {
  LocalFunction out(f.n_, f.parity_, f.cap_);
  for (const auto& [k, v] : f.terms_) out.add_term(k.first, k.second, c * v);
  return out;
}

LocalFunction d_z(const LocalFunction& f) {
  LocalFunction out(f.n(), f.parity(), f.degree_cap());
  for (const auto& [k, c] : f.terms()) {
    if (k.first > 0) out.add_term(k.first - 1, k.second, c * static_cast<double>(k.first));
  }
  return out;
}

LocalFunction d_zbar(const LocalFunction& f) {
  LocalFunction out(f.n(), f.parity(), f.degree_cap());
  for (const auto& [k, c] : f.terms()) {
    if (k.second > 0) out.add_term(k.first, k.second - 1, c * static_cast<double>(k.second));
  }
  return out;
}

LocalFunction antiderivative_z(const LocalFunction& f) {
  LocalFunction out(f.n(), f.parity(), f.degree_cap() + 1);
  for (const auto& [k, c] : f.terms()) {
    out.add_term(k.first + 1, k.second, c * (1.0 / (k.first + 1)));
  }
  return out;
}

LocalFunction conjugate_fn(const LocalFunction& f, const ConjugationTable& table) {
  LocalFunction out(f.n(), f.parity(), f.degree_cap());
  for (const auto& [k, c] : f.terms()) out.add_term(k.second, k.first, conjugate(c, table));
  return out;
}

LocalFunction inverse_fn(const LocalFunction& f) {
  if (f.parity() == Parity::Odd) throw ParityError("inverse_fn: argument must be even");
  const GrassmannElement c0 = f.coefficient(0, 0);
  if (c0.body() == Complex{}) throw NotInvertibleError("inverse_fn: zero constant body");
  for (const auto& [k, c] : f.terms()) {
    if (k != LocalFunction::Key{0, 0} && c.body() != Complex{}) {
      throw NotInvertibleError("inverse_fn: body is not constant in z, zbar");
    }
  }
  // f = b (1 + x) with x nilpotent; 1/f = (1/b) sum (-x)^k.
  const Complex b = c0.body();
  const LocalFunction one = LocalFunction::constant(GrassmannElement::one(f.n()), Parity::Even,
                                                    f.degree_cap());
  const LocalFunction x = (1.0 / b) * f - one;
  LocalFunction acc = one;
  LocalFunction power = one;
  for (int k = 1; k <= f.n() / 2 + 1 && !power.is_zero(); ++k) {
    power = -1.0 * (power * x);
    acc = acc + power;
  }
  return (1.0 / b) * acc;
}

LocalMatrix LocalMatrix::zero(int n, int cap) {
  return {LocalFunction(n, Parity::Even, cap), LocalFunction(n, Parity::Odd, cap),
          LocalFunction(n, Parity::Odd, cap), LocalFunction(n, Parity::Even, cap)};
}

LocalMatrix LocalMatrix::identity(int n, int cap) {
  LocalMatrix m = zero(n, cap);
  m.a = LocalFunction::constant(GrassmannElement::one(n), Parity::Even, cap);
  m.d = m.a;
  return m;
}

double LocalMatrix::max_abs() const {
  return std::max({a.max_abs(), beta.max_abs(), gamma.max_abs(), d.max_abs()});
}

SuperMatrix11 LocalMatrix::evaluate(Complex z) const {
  return {a.evaluate(z), beta.evaluate(z), gamma.evaluate(z), d.evaluate(z)};
}

LocalMatrix operator+(const LocalMatrix& x, const LocalMatrix& y) {
  return {x.a + y.a, x.beta + y.beta, x.gamma + y.gamma, x.d + y.d};
}

LocalMatrix operator-(const LocalMatrix& x, const LocalMatrix& y) {
  return {x.a - y.a, x.beta - y.beta, x.gamma - y.gamma, x.d - y.d};
}

LocalMatrix operator*(const LocalMatrix& x, const LocalMatrix& y) {
  return {x.a * y.a + x.beta * y.gamma, x.a * y.beta + x.beta * y.d,
          x.gamma * y.a + x.d * y.gamma, x.gamma * y.beta + x.d * y.d};
}

LocalMatrix d_z(const LocalMatrix& m) { return {d_z(m.a), d_z(m.beta), d_z(m.gamma), d_z(m.d)}; }

LocalMatrix d_zbar(const LocalMatrix& m) {
  return {d_zbar(m.a), d_zbar(m.beta), d_zbar(m.gamma), d_zbar(m.d)};
}

void MetricData::validate() const {
  if (u.parity() != Parity::Even) throw ParityError("metric: u must be even");
  if (rho.parity() != Parity::Odd) throw ParityError("metric: rho must be odd");
  if (u.n() != rho.n() || table.size() != u.n()) {
    throw DomainError("metric: generator counts of u, rho and the conjugation table differ");
  }
}

namespace {

struct Lifted {
  LocalFunction u, rho, rho_bar;
};

Lifted lift(const MetricData& m) {
  m.validate();
  return {m.u.with_cap(kWorkingDegreeCap), m.rho.with_cap(kWorkingDegreeCap),
          m.rho_bar().with_cap(kWorkingDegreeCap)};
}

LocalMatrix scalar_matrix(const LocalFunction& f) {
  LocalMatrix m = LocalMatrix::zero(f.n(), f.degree_cap());
  m.a = f;
  m.d = f;
  return m;
}

LocalMatrix block_inverse(const LocalMatrix& k) {
  const LocalFunction a_inv = inverse_fn(k.a);
  const LocalFunction d_inv = inverse_fn(k.d);
  const LocalFunction sa = inverse_fn(k.a - k.beta * d_inv * k.gamma);
  const LocalFunction sd = inverse_fn(k.d - k.gamma * a_inv * k.beta);
  return {sa, -(a_inv * k.beta * sd), -(d_inv * k.gamma * sa), sd};
}

void require_odd(const LocalFunction& f, const char* what) {
  if (f.parity() != Parity::Odd) throw ParityError(std::string(what) + " must be odd");
}

void require_even(const LocalFunction& f, const char* what) {
  if (f.parity() != Parity::Even) throw ParityError(std::string(what) + " must be even");
}

}  // namespace

LocalMatrix metric_shape(const MetricData& m) {
  const Lifted l = lift(m);
  const int n = m.u.n();
  const LocalFunction one =
      LocalFunction::constant(GrassmannElement::one(n), Parity::Even, kWorkingDegreeCap);
  const LocalFunction half = 0.5 * (l.rho * l.rho_bar);
  return {one - half, l.rho_bar, l.rho, one + half};
}

LocalMatrix chern_form(const MetricData& m) {
  const Lifted l = lift(m);
  const LocalFunction drho = d_z(l.rho);
  const LocalFunction drho_bar = d_z(l.rho_bar);
  const LocalFunction diag = d_z(l.u) - 0.5 * (l.rho_bar * drho) - 0.5 * (l.rho * drho_bar);
  return {diag, drho_bar, drho, diag};
}

LocalMatrix chern_form_by_inversion(const MetricData& m) {
  const Lifted l = lift(m);
  const LocalMatrix k = metric_shape(m);
  return scalar_matrix(d_z(l.u)) + block_inverse(k) * d_z(k);
}

LocalMatrix curvature(const MetricData& m) { return d_zbar(chern_form(m)); }

LocalMatrix HiggsLocal::matrix() const { return {a, delta, gamma, a}; }

LocalMatrix higgs_dagger(const LocalMatrix& phi, const ConjugationTable& table) {
  return {conjugate_fn(phi.a, table), conjugate_fn(phi.gamma, table),
          conjugate_fn(phi.beta, table), conjugate_fn(phi.d, table)};
}

LocalMatrix higgs_commutator(const MetricData& m, const LocalMatrix& phi) {
  const LocalMatrix k = metric_shape(m);
  const LocalMatrix p = {phi.a.with_cap(kWorkingDegreeCap), phi.beta.with_cap(kWorkingDegreeCap),
                         phi.gamma.with_cap(kWorkingDegreeCap), phi.d.with_cap(kWorkingDegreeCap)};
  const LocalMatrix dagger_h = block_inverse(k) * higgs_dagger(p, m.table) * k;
  return p * dagger_h - dagger_h * p;
}

LocalMatrix hitchin_residual(const MetricData& m, const LocalMatrix& phi) {
  require_even(phi.a, "Higgs field diagonal");
  require_even(phi.d, "Higgs field diagonal");
  require_odd(phi.beta, "Higgs field off-diagonal");
  require_odd(phi.gamma, "Higgs field off-diagonal");
  if (!(phi.a - phi.d).is_zero()) throw DomainError("hitchin_residual: supertrace of Phi is nonzero");
  return curvature(m) - higgs_commutator(m, phi);
}

MetricData flat_solution(const LocalFunction& rho_h, const LocalFunction& rho_a,
                         const LocalFunction& v_h, const LocalFunction& v_a,
                         const ConjugationTable& table) {
  require_odd(rho_h, "rho_h");
  require_odd(rho_a, "rho_a");
  require_even(v_h, "v_h");
  require_even(v_a, "v_a");
  if (!rho_h.is_holomorphic()) throw DomainError("flat_solution: rho_h is not holomorphic");
  if (!rho_a.is_antiholomorphic()) throw DomainError("flat_solution: rho_a is not antiholomorphic");
  if (!v_h.is_holomorphic()) throw DomainError("flat_solution: v_h is not holomorphic");
  if (!v_a.is_antiholomorphic()) throw DomainError("flat_solution: v_a is not antiholomorphic");
  const int cap = kWorkingDegreeCap;
  const LocalFunction rh = rho_h.with_cap(cap);
  const LocalFunction ra = rho_a.with_cap(cap);
  LocalFunction u = v_h.with_cap(cap) + v_a.with_cap(cap) +
                    0.5 * (conjugate_fn(rh, table) * rh) + 0.5 * (ra * conjugate_fn(ra, table));
  return {std::move(u), rh + ra, table};
}

MetricData hitchin_solution(const LocalFunction& rho_h, const LocalFunction& rho_a,
                            const LocalFunction& v_h, const LocalFunction& v_a,
                            const LocalFunction& delta, const LocalFunction& gamma,
                            const ConjugationTable& table) {
  require_odd(delta, "delta");
  require_odd(gamma, "gamma");
  if (!delta.is_holomorphic()) throw DomainError("hitchin_solution: delta is not holomorphic");
  if (!gamma.is_holomorphic()) throw DomainError("hitchin_solution: gamma is not holomorphic");
  MetricData m = flat_solution(rho_h, rho_a, v_h, v_a, table);
  const LocalFunction eta = antiderivative_z(delta.with_cap(kWorkingDegreeCap));
  const LocalFunction phi = antiderivative_z(gamma.with_cap(kWorkingDegreeCap));
  m.u = m.u + eta * conjugate_fn(eta, table) + phi * conjugate_fn(phi, table);
  return m;
}

double gauge_naturality_residual(const GrassmannElement& u, const GrassmannElement& rho,
                                 const GrassmannElement& h, const GrassmannElement& alpha,
                                 const GrassmannElement& beta, const ConjugationTable& table) {
  auto bar = [&](const GrassmannElement& x) { return conjugate(x, table); };
  const GrassmannElement rho_bar = bar(rho);
  const SuperMatrix11 lhs = from_coords(GroupCoords::sl(bar(h), bar(beta), bar(alpha))) *
                            from_coords(GroupCoords::sl(u, rho, rho_bar)) *
                            from_coords(GroupCoords::sl(h, alpha, beta));
  const GrassmannElement u2 =
      u + h + bar(h) -
      (alpha * bar(alpha) + beta * bar(beta) + rho * (bar(alpha) - beta) +
       (alpha - bar(beta)) * rho_bar) * 0.5;
  const SuperMatrix11 rhs = from_coords(
      GroupCoords::sl(u2, rho + alpha + bar(beta), rho_bar + beta + bar(alpha)));
  return (lhs - rhs).max_abs();
}

}  // namespace glh
