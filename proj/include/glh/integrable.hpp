#pragma once

// The (1|1) Hitchin system on the sphere with m marked points: residue
// matrices, Garnier Hamiltonians and their super-Poisson brackets, and the
// gl(1|1) Gaudin model on the 2^m-dimensional module C[theta_1..theta_m].
//
// Classical observables live in a Grassmann algebra with N = 2m generators:
// theta_i is generator 2i - 1 and eta_i is generator 2i.

#include <vector>

#include <Eigen/Sparse>

#include "glh/report.hpp"
#include "glh/supergroup.hpp"

namespace glh {

struct Site {
  Complex z;
  Complex u;  // a + b
  Complex v;  // a - b
};

struct ParabolicData {
  std::vector<Site> sites;
  Complex hbar = 1.0;

  int m() const { return static_cast<int>(sites.size()); }
  int generators() const { return 2 * m(); }
  // Throws DomainError when two marked points are closer than 1e-8 (relative).
  void validate() const;
};

ParabolicData random_parabolic(int m, class Rng& rng);

int theta_index(int site);  // 1-based generator of theta_site (site is 0-based)
int eta_index(int site);

// [[a - theta eta, theta], [(a - b) eta, b - theta eta]].
SuperMatrix11 residue_matrix(const ParabolicData& p, int i);
// g A' g^{-1} with A' = [[a, theta], [0, b]] and g = [[1, 0], [eta, 1]].
SuperMatrix11 residue_by_conjugation(const ParabolicData& p, int i);
// Sum_i A_i / (z - z_i). Throws DomainError at a marked point.
SuperMatrix11 higgs_value(const ParabolicData& p, Complex z);

// Sum_{j != i} str(A_i A_j) / (z_i - z_j).
GrassmannElement garnier_hamiltonian(const ParabolicData& p, int i);
// Same observable from the expanded pair term
// (u_i - 2 theta_i eta_i) v_j / 2 + v_i (u_j - 2 theta_j eta_j) / 2
//   + theta_i v_j eta_j - v_i eta_i theta_j.
GrassmannElement garnier_expanded(const ParabolicData& p, int i);

// {F, G} = sum_i (d_theta_i F d_eta_i G + d_eta_i F d_theta_i G), left
// derivatives. m is the number of sites. Throws ParityError on mixed input.
GrassmannElement poisson_bracket(const GrassmannElement& f, const GrassmannElement& g, int m);

using Operator = Eigen::SparseMatrix<Complex>;

// Basis of C[theta_1..theta_m] ordered by monomial bitmask.
Operator theta_op(int m, int i);  // left multiplication by theta_i
Operator d_theta_op(int m, int i);
Operator identity_op(int m);

struct GaudinGenerators {
  Operator n, e, psi_plus, psi_minus;
};

// N = u/2 - theta d_theta, E = v, Psi- = theta, Psi+ = v d_theta.
GaudinGenerators gaudin_generators(const ParabolicData& p, int i);
// hbar sum_{j != i} (E_i N_j + N_i E_j + Psi-_i Psi+_j - Psi+_i Psi-_j) / (z_i - z_j).
Operator gaudin_hamiltonian(const ParabolicData& p, int i, Complex hbar);
Operator total_number_op(int m);

// eta_i -> hbar d_theta_i with theta placed before d. Every Garnier term
// carries exactly one factor of u or eta, so u -> hbar u contributes the
// same overall hbar. Throws DomainError unless h equals one of the
// garnier_hamiltonian(p, i).
Operator quantize(const ParabolicData& p, const GrassmannElement& h, Complex hbar);
// Direct substitution eta_i -> d_theta_i without the hbar bookkeeping.
Operator substitute_operators(int m, const GrassmannElement& x);

double max_abs(const Operator& a);
double frobenius(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

Report garnier_report(const ParabolicData& p, double tol = 1e-9);
Report gaudin_relations_report(const ParabolicData& p, double tol = 1e-9);
Report gaudin_commute_report(const ParabolicData& p, double tol = 1e-9);
Report quantize_report(const ParabolicData& p, double tol = 1e-9);

}  // namespace glh
