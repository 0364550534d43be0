#pragma once

// Exact arithmetic in the Grassmann algebra
//   Lambda = C[theta_1..theta_N] / (theta_i theta_j + theta_j theta_i)
// with N <= 64. A monomial theta_{i1}...theta_{ik} (i1 < ... < ik) is stored
// as a bitmask with bit (i-1) set for generator i; every stored sign refers to
// that increasing order.

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace glh {

using Complex = std::complex<double>;
using Monomial = std::uint64_t;

inline constexpr int kMaxGenerators = 64;

enum class Parity { Even, Odd, Mixed };

const char* to_string(Parity p);

// Coefficients with magnitude below this are dropped (default 1e-12).
double canonicalization_threshold();
void set_canonicalization_threshold(double eps);

// Default tolerance for approximate comparisons (default 1e-9).
double comparison_tolerance();
void set_comparison_tolerance(double eps);

namespace monomial {

Monomial from_indices(const std::vector<int>& sorted_indices);
std::vector<int> indices(Monomial m);
int degree(Monomial m);

// Sign of theta_a * theta_b once the concatenated index list is sorted;
// 0 when the two monomials share a generator.
int product_sign(Monomial a, Monomial b);

}  // namespace monomial

// Involution on generator indices used by conjugation (1-based).
class ConjugationTable {
 public:
  explicit ConjugationTable(std::vector<int> pairing);

  // i <-> i + N/2; requires N even.
  static ConjugationTable halves(int n);
  static ConjugationTable self_conjugate(int n);

  int size() const { return static_cast<int>(pairing_.size()); }
  int partner(int i) const;
  const std::vector<int>& pairing() const { return pairing_; }

  friend bool operator==(const ConjugationTable&, const ConjugationTable&) = default;

 private:
  std::vector<int> pairing_;
};

class GrassmannElement {
 public:
  using Term = std::pair<Monomial, Complex>;

  explicit GrassmannElement(int n);
  // Duplicate monomials are summed; the result is canonicalized.
  GrassmannElement(int n, std::vector<Term> terms);

  static GrassmannElement zero(int n) { return GrassmannElement(n); }
  static GrassmannElement scalar(int n, Complex c);
  static GrassmannElement one(int n) { return scalar(n, 1.0); }
  static GrassmannElement generator(int n, int i);
  // c * theta_{i1} theta_{i2} ... in the given order (any order, sign applied).
  static GrassmannElement product_of(int n, const std::vector<int>& indices, Complex c = 1.0);

  int n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(Monomial m) const;

  Parity parity() const;
  bool is_even() const;
  bool is_odd() const;
  GrassmannElement even_part() const;
  GrassmannElement odd_part() const;

  Complex body() const { return coefficient(0); }
  GrassmannElement soul() const;

  double max_abs() const;
  bool approx_equal(const GrassmannElement& other, double tol = comparison_tolerance()) const;

  GrassmannElement operator-() const;
  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  GrassmannElement& operator*=(Complex c);

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(GrassmannElement a, Complex c) { return a *= c; }
  friend GrassmannElement operator*(Complex c, GrassmannElement a) { return a *= c; }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);

  // Exact structural equality (after canonicalization).
  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b);

  std::string to_string() const;

 private:
  void canonicalize();

  int n_;
  std::vector<Term> terms_;  // sorted by monomial, no small coefficients
};

GrassmannElement add(const GrassmannElement& x, const GrassmannElement& y);
GrassmannElement mul(const GrassmannElement& x, const GrassmannElement& y);

// e^{body} * sum_k soul^k / k!. Throws ParityError unless x is even.
GrassmannElement exp_even(const GrassmannElement& x);
// Principal-branch logarithm of an even element with nonzero body.
GrassmannElement log_even(const GrassmannElement& x);
// Inverse of an even element; NotInvertibleError on zero body.
GrassmannElement inv(const GrassmannElement& x);

// Antilinear anti-automorphism: conj(uv) = conj(v) conj(u), generators
// relabelled through the table.
GrassmannElement conjugate(const GrassmannElement& x, const ConjugationTable& table);

// Left derivative d/dtheta_i.
GrassmannElement left_derivative(const GrassmannElement& x, int i);

}  // namespace glh
