#pragma once

// (1|1)x(1|1) supermatrices over the Grassmann algebra, the GL(1|1) /
// SL(1|1) coordinate parametrization and Higgs-field eigen-decomposition.

#include "glh/grassmann.hpp"

namespace glh {

// Block layout [[a, beta], [gamma, d]]: a, d even; beta, gamma odd.
struct SuperMatrix11 {
  GrassmannElement a;
  GrassmannElement beta;
  GrassmannElement gamma;
  GrassmannElement d;

  static SuperMatrix11 identity(int n);
  static SuperMatrix11 zero(int n);
  static SuperMatrix11 diagonal(const GrassmannElement& a, const GrassmannElement& d);

  int n() const { return a.n(); }
  // Parity constraints of an even supermatrix.
  bool is_even_matrix() const;
  bool is_invertible() const;
  double max_abs() const;
  bool approx_equal(const SuperMatrix11& o, double tol = comparison_tolerance()) const;

  friend SuperMatrix11 operator+(const SuperMatrix11& x, const SuperMatrix11& y);
  friend SuperMatrix11 operator-(const SuperMatrix11& x, const SuperMatrix11& y);
  friend SuperMatrix11 operator*(const SuperMatrix11& x, const SuperMatrix11& y);
  friend SuperMatrix11 operator*(Complex c, const SuperMatrix11& x);
};

// g(h, alpha, beta) H_s. s is zero on SL(1|1). h is defined modulo 2 pi i and
// s modulo 4 pi i; to_coords returns principal representatives.
struct GroupCoords {
  GrassmannElement h;
  GrassmannElement s;
  GrassmannElement alpha;
  GrassmannElement beta;

  static GroupCoords identity(int n);
  static GroupCoords sl(GrassmannElement h, GrassmannElement alpha, GrassmannElement beta);

  int n() const { return h.n(); }
  void validate() const;  // throws ParityError
  bool approx_equal(const GroupCoords& o, double tol = comparison_tolerance()) const;
};

struct HiggsEigenData {
  GrassmannElement lambda_plus;
  GrassmannElement lambda_minus;
  SuperMatrix11 diagonalizer;  // columns are the eigenvectors v+, v-
};

SuperMatrix11 from_coords(const GroupCoords& c);
GroupCoords to_coords(const SuperMatrix11& m);

SuperMatrix11 mul(const SuperMatrix11& x, const SuperMatrix11& y);
SuperMatrix11 inverse(const SuperMatrix11& m);

// Closed-form group law on coordinates.
GroupCoords coords_product(const GroupCoords& c1, const GroupCoords& c2);
GroupCoords coords_inverse(const GroupCoords& c);

GrassmannElement sdet(const SuperMatrix11& m);
GrassmannElement str(const SuperMatrix11& m);

// Throws NotInvertibleError ("non-diagonalizable: supertrace not invertible")
// when str(phi) has zero body.
HiggsEigenData higgs_eigen(const SuperMatrix11& phi);
// Eigenvalues from the conjugation invariants str(phi^2) and str(phi).
std::pair<GrassmannElement, GrassmannElement> higgs_eigen_invariant(const SuperMatrix11& phi);

// g^{-1} phi g.
SuperMatrix11 higgs_transform(const SuperMatrix11& phi, const SuperMatrix11& g);

}  // namespace glh
