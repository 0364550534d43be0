#pragma once

// Cech cochains with constant Grassmann values on an abstract nerve, the
// SL(1|1) / GL(1|1) transition-function cocycle identities and the Higgs
// gluing constraints.

#include <map>
#include <string>
#include <vector>

#include "glh/report.hpp"
#include "glh/supergroup.hpp"

namespace glh {

using Simplex = std::vector<int>;

std::string simplex_key(const Simplex& s);  // "0,1,2"
Simplex parse_simplex_key(const std::string& key);

// Sorts s in place and returns the sign of the sorting permutation
// (0 if an index repeats).
int sort_simplex(Simplex& s);

class Nerve {
 public:
  // simplices may be given in any vertex order; they are stored sorted.
  // Throws DomainError on repeated vertices, unknown vertices, dimension > 3
  // or a missing face.
  Nerve(std::vector<int> vertices, std::vector<Simplex> simplices);

  static Nerve triangle();
  static Nerve tetrahedron();
  static Nerve tetrahedron_boundary();
  // Four charts, six overlaps and one triple overlap {0,1,2}: first Betti
  // number 2, like a torus.
  static Nerve genus1();

  const std::vector<int>& vertices() const { return vertices_; }
  // dim 0 lists the vertices as singletons.
  const std::vector<Simplex>& simplices(int dim) const;
  bool contains(Simplex s) const;
  // Position in simplices(dim) of a sorted simplex, or -1.
  int index(const Simplex& sorted) const;

 private:
  std::vector<int> vertices_;
  std::vector<Simplex> by_dim_[4];
  std::map<Simplex, int> lookup_;
};

// Values are stored on sorted simplices and extended to other vertex orders
// by the alternating rule.
class Cochain {
 public:
  Cochain(int degree, int n);

  int degree() const { return degree_; }
  int n() const { return n_; }

  void set(Simplex s, GrassmannElement v);
  // Zero for simplices without a stored value.
  GrassmannElement get(Simplex s) const;
  const std::map<Simplex, GrassmannElement>& values() const { return values_; }
  double max_abs() const;

 private:
  int degree_;
  int n_;
  std::map<Simplex, GrassmannElement> values_;
};

Cochain coboundary(const Nerve& nerve, const Cochain& c);
Cochain cup_product(const Nerve& nerve, const Cochain& u, const Cochain& v);

struct CoboundarySolution {
  bool consistent = false;
  Cochain f;             // least-norm solution (least-squares if inconsistent)
  double residual = 0;   // max |delta f - g| coefficient
  int kernel_dim = 0;    // dimension of the solution space per monomial
  std::string message;
};

// Solves delta f = g for f of degree deg(g) - 1, monomial by monomial.
CoboundarySolution solve_coboundary(const Nerve& nerve, const Cochain& g, double rank_tol = 1e-9);

enum class GroupMode { SL, GL };

// Transition functions g_ij for i < j with g_ik = g_ij g_jk on triple
// overlaps (up to 2 pi i n_ijk in h).
struct TransitionData {
  GroupMode mode = GroupMode::SL;
  int n = 0;
  bool modulo_2pi_i = false;
  std::map<Simplex, GroupCoords> edges;  // sorted pairs
  std::map<Simplex, long> windings;      // sorted triples, default 0

  explicit TransitionData(int n_gen, GroupMode m = GroupMode::SL) : mode(m), n(n_gen) {}

  // g_ij for either order: g_ji = g_ij^{-1}. Identity for missing edges.
  GroupCoords oriented(int i, int j) const;
  long winding(const Simplex& sorted_triple) const;
  void set(int i, int j, GroupCoords g);  // stores g_ij, inverting if i > j
};

Report check_sl_cocycle(const Nerve& nerve, const TransitionData& data, double tol = 1e-9);
Report check_gl_cocycle(const Nerve& nerve, const TransitionData& data, double tol = 1e-9);

// g_ijk = 1/2 (alpha_ij e^{s_ij} beta_jk - e^{-s_ij} alpha_jk beta_ij).
// Throws DomainError if data fails the cocycle check.
Cochain two_cocycle_g(const Nerve& nerve, const TransitionData& data, double tol = 1e-9);
// Evaluates the defining formula on an arbitrary vertex order.
GrassmannElement two_cocycle_entry(const TransitionData& data, int i, int j, int k);
// Total antisymmetry over all vertex orders and delta g = 0.
Report check_two_cocycle(const Nerve& nerve, const TransitionData& data, double tol = 1e-9);

struct HiggsVertex {
  GrassmannElement a, b, delta, gamma;
};

struct HiggsCechData {
  std::map<int, HiggsVertex> vertices;
  // Also require c_ij = a_i - a_j for the supplied a.
  bool check_a = false;
};

struct HiggsObstruction {
  Cochain t;
  Cochain eta;
  bool exact = false;
  Report report;
};

// t_ij = delta_i alpha_ij - beta_ij gamma_i; exact iff t = delta eta.
HiggsObstruction sl_higgs_obstruction(const Nerve& nerve, const TransitionData& data,
                                      const HiggsCechData& higgs, double tol = 1e-9);

// c_ij = beta_ij gamma_i - delta_i alpha_ij - beta_ij alpha_ij b_i.
GrassmannElement gl_c_entry(const TransitionData& data, const HiggsCechData& higgs, int i, int j);
Report gl_higgs_constraints(const Nerve& nerve, const TransitionData& data,
                            const HiggsCechData& higgs, double tol = 1e-9);

// Cocycle data g_ij = r_i r_j^{-1} from random vertex potentials r_i.
TransitionData random_cocycle_data(const Nerve& nerve, int n, GroupMode mode, class Rng& rng);
// Data satisfying the GL gluing relations: b_i constant invertible,
// s_ij = sigma_j - sigma_i, alpha and beta solved from the relations.
std::pair<TransitionData, HiggsCechData> random_admissible_gl(const Nerve& nerve, int n, Rng& rng);

}  // namespace glh
