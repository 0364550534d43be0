#pragma once

// Polynomials in formal z, zbar with Grassmann coefficients on one chart,
// the metric H = g(u, rho, rhobar), its Chern connection and curvature, and
// residuals of the zero-curvature and Hitchin equations.

#include <map>
#include <utility>

#include "glh/supergroup.hpp"

namespace glh {

inline constexpr int kDefaultDegreeCap = 8;
inline constexpr int kWorkingDegreeCap = 64;

class LocalFunction {
 public:
  using Key = std::pair<int, int>;  // (power of z, power of zbar)

  // Parity::Mixed disables the coefficient parity check.
  LocalFunction(int n, Parity parity, int degree_cap = kDefaultDegreeCap);

  static LocalFunction constant(const GrassmannElement& c, Parity parity,
                                int degree_cap = kDefaultDegreeCap);
  static LocalFunction term(int p, int q, const GrassmannElement& c, Parity parity,
                            int degree_cap = kDefaultDegreeCap);

  int n() const { return n_; }
  Parity parity() const { return parity_; }
  int degree_cap() const { return cap_; }
  LocalFunction with_cap(int cap) const;

  // Adds c z^p zbar^q. Throws ParityError / DegreeOverflowError.
  void add_term(int p, int q, const GrassmannElement& c);
  const std::map<Key, GrassmannElement>& terms() const { return terms_; }
  GrassmannElement coefficient(int p, int q) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_holomorphic() const;      // no zbar
  bool is_antiholomorphic() const;  // no z
  double max_abs() const;
  // Evaluation with zbar = conj(z).
  GrassmannElement evaluate(Complex z) const;

  LocalFunction operator-() const;
  friend LocalFunction operator+(const LocalFunction& f, const LocalFunction& g);
  friend LocalFunction operator-(const LocalFunction& f, const LocalFunction& g);
  friend LocalFunction operator*(const LocalFunction& f, const LocalFunction& g);
  friend LocalFunction operator*(Complex c, const LocalFunction& f);

 private:
  int n_;
  Parity parity_;
  int cap_;
  std::map<Key, GrassmannElement> terms_;
};

LocalFunction d_z(const LocalFunction& f);
LocalFunction d_zbar(const LocalFunction& f);
// Primitive in z with no z-constant term.
LocalFunction antiderivative_z(const LocalFunction& f);
// Swaps z and zbar and conjugates every coefficient through the table.
LocalFunction conjugate_fn(const LocalFunction& f, const ConjugationTable& table);
// Inverse of an even function whose Grassmann body is a nonzero constant.
LocalFunction inverse_fn(const LocalFunction& f);

struct LocalMatrix {
  LocalFunction a, beta, gamma, d;

  static LocalMatrix zero(int n, int cap = kWorkingDegreeCap);
  static LocalMatrix identity(int n, int cap = kWorkingDegreeCap);
  double max_abs() const;
  SuperMatrix11 evaluate(Complex z) const;

  friend LocalMatrix operator+(const LocalMatrix& x, const LocalMatrix& y);
  friend LocalMatrix operator-(const LocalMatrix& x, const LocalMatrix& y);
  friend LocalMatrix operator*(const LocalMatrix& x, const LocalMatrix& y);
};

LocalMatrix d_z(const LocalMatrix& m);
LocalMatrix d_zbar(const LocalMatrix& m);

struct MetricData {
  LocalFunction u;    // even
  LocalFunction rho;  // odd
  ConjugationTable table;

  void validate() const;  // parities, matching generator counts
  LocalFunction rho_bar() const { return conjugate_fn(rho, table); }
};

// K = g(0, rho, rhobar), so H = e^u K.
LocalMatrix metric_shape(const MetricData& m);
// H^{-1} dH from the closed form: diagonal du - rhobar drho / 2 - rho drhobar / 2,
// upper drhobar, lower drho.
LocalMatrix chern_form(const MetricData& m);
// du I + K^{-1} dK with K^{-1} from the block inverse.
LocalMatrix chern_form_by_inversion(const MetricData& m);
LocalMatrix curvature(const MetricData& m);

// Local sl(1|1) Higgs field [[a, delta], [gamma, a]].
struct HiggsLocal {
  LocalFunction a;      // even
  LocalFunction delta;  // odd
  LocalFunction gamma;  // odd

  LocalMatrix matrix() const;
};

// Phi^dagger = [[abar, gammabar], [deltabar, abar]].
LocalMatrix higgs_dagger(const LocalMatrix& phi, const ConjugationTable& table);
// [Phi, H^{-1} Phi^dagger H].
LocalMatrix higgs_commutator(const MetricData& m, const LocalMatrix& phi);
// F - [Phi, Phi^dagger_H]. Throws DomainError unless str Phi = 0,
// ParityError on odd diagonal / even off-diagonal entries.
LocalMatrix hitchin_residual(const MetricData& m, const LocalMatrix& phi);

// u = v_h + v_a + rhobar_h rho_h / 2 + rho_a rhobar_a / 2, rho = rho_h + rho_a.
MetricData flat_solution(const LocalFunction& rho_h, const LocalFunction& rho_a,
                         const LocalFunction& v_h, const LocalFunction& v_a,
                         const ConjugationTable& table);
// flat_solution plus eta etabar + phi phibar with eta, phi the z-primitives of
// delta, gamma.
MetricData hitchin_solution(const LocalFunction& rho_h, const LocalFunction& rho_a,
                            const LocalFunction& v_h, const LocalFunction& v_a,
                            const LocalFunction& delta, const LocalFunction& gamma,
                            const ConjugationTable& table);

// Pointwise gauge law: g(hbar, betabar, alphabar) g(u, rho, rhobar) g(h, alpha, beta)
// against g(u', rho + alpha + betabar, rhobar + beta + alphabar) with
// u' = u + h + hbar - (alpha alphabar + beta betabar + rho (alphabar - beta)
//      + (alpha - betabar) rhobar) / 2. Returns the max entry difference.
double gauge_naturality_residual(const GrassmannElement& u, const GrassmannElement& rho,
                                 const GrassmannElement& h, const GrassmannElement& alpha,
                                 const GrassmannElement& beta, const ConjugationTable& table);

}  // namespace glh
