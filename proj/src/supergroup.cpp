#include "glh/supergroup.hpp"

#include <algorithm>

#include "glh/error.hpp"

namespace glh {

namespace {

void require_invertible(const SuperMatrix11& m, const char* op) {
  if (!m.is_invertible()) {
    throw NotInvertibleError(std::string(op) + ": matrix is not invertible (a or d has zero body)");
  }
}

}  // namespace

SuperMatrix11 SuperMatrix11::identity(int n) {
  return {GrassmannElement::one(n), GrassmannElement::zero(n), GrassmannElement::zero(n),
          GrassmannElement::one(n)};
}

SuperMatrix11 SuperMatrix11::zero(int n) {
  return {GrassmannElement::zero(n), GrassmannElement::zero(n), GrassmannElement::zero(n),
          GrassmannElement::zero(n)};
}

SuperMatrix11 SuperMatrix11::diagonal(const GrassmannElement& a, const GrassmannElement& d) {
  return {a, GrassmannElement::zero(a.n()), GrassmannElement::zero(a.n()), d};
}

bool SuperMatrix11::is_even_matrix() const {
  return a.is_even() && d.is_even() && beta.is_odd() && gamma.is_odd();
}

bool SuperMatrix11::is_invertible() const {
  return a.is_even() && d.is_even() && a.body() != Complex{} && d.body() != Complex{};
}

double SuperMatrix11::max_abs() const {
  return std::max({a.max_abs(), beta.max_abs(), gamma.max_abs(), d.max_abs()});
}

bool SuperMatrix11::approx_equal(const SuperMatrix11& o, double tol) const {
  return (*this - o).max_abs() <= tol;
}

SuperMatrix11 operator+(const SuperMatrix11& x, const SuperMatrix11& y) {
  return {x.a + y.a, x.beta + y.beta, x.gamma + y.gamma, x.d + y.d};
}

SuperMatrix11 operator-(const SuperMatrix11& x, const SuperMatrix11& y) {
  return {x.a - y.a, x.beta - y.beta, x.gamma - y.gamma, x.d - y.d};
}

SuperMatrix11 operator*(const SuperMatrix11& x, const SuperMatrix11& y) {
  return {x.a * y.a + x.beta * y.gamma, x.a * y.beta + x.beta * y.d,
          x.gamma * y.a + x.d * y.gamma, x.gamma * y.beta + x.d * y.d};
}

SuperMatrix11 operator*(Complex c, const SuperMatrix11& x) {
  return {c * x.a, c * x.beta, c * x.gamma, c * x.d};
}

GroupCoords GroupCoords::identity(int n) {
  return {GrassmannElement::zero(n), GrassmannElement::zero(n), GrassmannElement::zero(n),
          GrassmannElement::zero(n)};
}

GroupCoords GroupCoords::sl(GrassmannElement h, GrassmannElement alpha, GrassmannElement beta) {
  const int n = h.n();
  return {std::move(h), GrassmannElement::zero(n), std::move(alpha), std::move(beta)};
}

void GroupCoords::validate() const {
  if (!h.is_even()) throw ParityError("group coordinates: h must be even");
  if (!s.is_even()) throw ParityError("group coordinates: s must be even");
  if (!alpha.is_odd()) throw ParityError("group coordinates: alpha must be odd");
  if (!beta.is_odd()) throw ParityError("group coordinates: beta must be odd");
}

bool GroupCoords::approx_equal(const GroupCoords& o, double tol) const {
  return h.approx_equal(o.h, tol) && s.approx_equal(o.s, tol) &&
         alpha.approx_equal(o.alpha, tol) && beta.approx_equal(o.beta, tol);
}

SuperMatrix11 from_coords(const GroupCoords& c) {
  c.validate();
  const int n = c.n();
  const GrassmannElement half_ab = c.alpha * c.beta * 0.5;
  const GrassmannElement one = GrassmannElement::one(n);
  const GrassmannElement up = exp_even(c.h + c.s * 0.5);    // e^{h + s/2}
  const GrassmannElement down = exp_even(c.h - c.s * 0.5);  // e^{h - s/2}
  return {up * (one - half_ab), down * c.beta, up * c.alpha, down * (one + half_ab)};
}

GroupCoords to_coords(const SuperMatrix11& m) {
  if (!m.is_even_matrix()) throw ParityError("to_coords: not an even supermatrix");
  require_invertible(m, "to_coords");
  const int n = m.n();
  const GrassmannElement s = log_even(sdet(m));
  // a d = e^{2h} and beta_M gamma_M = -e^{2h} alpha beta.
  const GrassmannElement ab = -(m.beta * m.gamma) * inv(m.a * m.d);
  const GrassmannElement up = m.a * (GrassmannElement::one(n) + ab * 0.5);
  const GrassmannElement h = log_even(up) - s * 0.5;
  const GrassmannElement inv_up = inv(up);
  return {h, s, m.gamma * inv_up, m.beta * inv_up * exp_even(s)};
}

SuperMatrix11 mul(const SuperMatrix11& x, const SuperMatrix11& y) { return x * y; }

SuperMatrix11 inverse(const SuperMatrix11& m) {
  if (!m.is_even_matrix()) throw ParityError("inverse: not an even supermatrix");
  require_invertible(m, "inverse");
  const GrassmannElement a_inv = inv(m.a);
  const GrassmannElement d_inv = inv(m.d);
  // Schur complements.
  const GrassmannElement sa = inv(m.a - m.beta * d_inv * m.gamma);
  const GrassmannElement sd = inv(m.d - m.gamma * a_inv * m.beta);
  return {sa, -(a_inv * m.beta * sd), -(d_inv * m.gamma * sa), sd};
}

GroupCoords coords_product(const GroupCoords& c1, const GroupCoords& c2) {
  c1.validate();
  c2.validate();
  const GrassmannElement e_plus = exp_even(c1.s);
  const GrassmannElement e_minus = exp_even(-c1.s);
  GroupCoords r{c1.h + c2.h + (c1.alpha * e_plus * c2.beta - e_minus * c2.alpha * c1.beta) * 0.5,
                c1.s + c2.s, c1.alpha + e_minus * c2.alpha, c1.beta + e_plus * c2.beta};
  return r;
}

GroupCoords coords_inverse(const GroupCoords& c) {
  c.validate();
  return {-c.h, -c.s, -(exp_even(c.s) * c.alpha), -(exp_even(-c.s) * c.beta)};
}

GrassmannElement sdet(const SuperMatrix11& m) {
  require_invertible(m, "sdet");
  const GrassmannElement a_inv = inv(m.a);
  const GrassmannElement d_inv = inv(m.d);
  const GrassmannElement one = GrassmannElement::one(m.n());
  return m.a * d_inv * (one - m.beta * m.gamma * d_inv * a_inv);
}

GrassmannElement str(const SuperMatrix11& m) { return m.a - m.d; }

HiggsEigenData higgs_eigen(const SuperMatrix11& phi) {
  if (!phi.is_even_matrix()) throw ParityError("higgs_eigen: not an even supermatrix");
  const GrassmannElement st = str(phi);
  if (st.body() == Complex{}) {
    throw NotInvertibleError("non-diagonalizable: supertrace not invertible");
  }
  const GrassmannElement st_inv = inv(st);
  const int n = phi.n();
  // Phi v+ = lambda+ v+ for v+ = (1, gamma/str) forces lambda+ = a + beta gamma / str.
  const GrassmannElement shift = phi.beta * phi.gamma * st_inv;
  SuperMatrix11 p{GrassmannElement::one(n), -(phi.beta * st_inv), phi.gamma * st_inv,
                  GrassmannElement::one(n)};
  return {phi.a + shift, phi.d + shift, std::move(p)};
}

std::pair<GrassmannElement, GrassmannElement> higgs_eigen_invariant(const SuperMatrix11& phi) {
  const GrassmannElement st = str(phi);
  if (st.body() == Complex{}) {
    throw NotInvertibleError("non-diagonalizable: supertrace not invertible");
  }
  const GrassmannElement ratio = str(phi * phi) * inv(st);
  return {(ratio + st) * 0.5, (ratio - st) * 0.5};
}

SuperMatrix11 higgs_transform(const SuperMatrix11& phi, const SuperMatrix11& g) {
  return inverse(g) * phi * g;
}

}  // namespace glh
