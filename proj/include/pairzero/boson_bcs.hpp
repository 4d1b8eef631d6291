// boson_bcs.hpp: uniform-coupling bosonic pairing model on L+1 levels,
// H = sum_l eps_l n_l + (gamma/4) sum_{k,l} b_k^+ b_k^+ b_l b_l.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace pairzero {

using Occupation = std::vector<int>;

struct BosonModel {
  int L = 1;
  std::vector<double> levels;  // eps_0 <= ... <= eps_L
  double gamma = 0.0;
  int N = 0;

  // Checks sizes, ordering and the desk-scale bounds L <= 4, N <= 20.
  void validate() const;
  // |eps_k - eps_l| > 1e-9 for all k != l
  bool distinct_levels() const;
};

// All occupations with sum N over L+1 levels, in descending lexicographic
// order: (N,0,..), (N-1,1,..), ...
std::vector<Occupation> fock_basis(int L, int N);

struct BcsHamiltonian {
  std::shared_ptr<const std::vector<Occupation>> basis;
  Eigen::SparseMatrix<double> matrix;
  double norm() const;  // max absolute row sum
};

BcsHamiltonian build_bcs_hamiltonian(const BosonModel& model);

struct BosonState {
  int L = 1;
  int N = 0;
  std::shared_ptr<const std::vector<Occupation>> basis;
  std::vector<std::complex<double>> coeffs;  // normalized
  std::vector<int> nu;                       // per-level seniority, L+1 entries

  int pairs() const;  // M = (N - sum nu) / 2
};

struct BosonEigenpair {
  double energy = 0.0;
  BosonState state;
  bool degenerate = false;  // same-block gap below 1e-9 ||H||
  bool cross_block_degenerate = false;
};

struct BosonSpectrum {
  double h_norm = 0.0;
  std::vector<BosonEigenpair> levels;  // ascending energy
};

// Dense diagonalization of every seniority block (n_l mod 2 fixed).
BosonSpectrum diagonalize_bcs(const BosonModel& model);

struct BosonPaironSet {
  std::vector<int> nu;  // L+1 seniorities
  std::vector<std::complex<double>> e;

  // xi_l^2 = (2 eps_l - conj e) / (conj e - 2 eps_0), l = 1..L, for pairon alpha
  std::vector<std::complex<double>> axes_squared(const BosonModel& model, std::size_t alpha) const;
};

// prod_alpha (sum_l b_l^+ b_l^+ / (2 eps_l - e_alpha)) |nu>, normalized. Each
// factor is multiplied through by prod_l (2 eps_l - e_alpha), so pairons at a
// pole stay finite.
BosonState reconstruct_boson_state(const BosonPaironSet& p, const BosonModel& model);

// <psi|zeta> with the SU(L+1) coherent state, zeta.size() == L
std::complex<double> boson_husimi_amplitude(const BosonState& state, const std::vector<std::complex<double>>& zeta);

struct BosonExtraction {
  BosonPaironSet pairons;
  double energy = 0.0;
  bool pole_flag = false;      // some pairon at 2 eps_l
  bool infinity_flag = false;  // slice root at xi^2 = -1
};

// Pairons from the axis slice where only zeta_{slice} is nonzero (after
// dividing out zeta_l^{nu_l} of the other levels); slice in 1..L.
BosonExtraction extract_boson_pairons(const BosonModel& model, const BosonSpectrum& spectrum, int state_index,
                                      int slice);
BosonExtraction extract_boson_pairons(const BosonModel& model, int state_index, int slice);

struct EllipsoidReport {
  double max_relative = 0.0;  // max |amplitude| / sum of |terms|
  int points = 0;
  bool ok = false;            // max_relative <= 1e-9
};

// For every pairon, `samples` random points zeta_l = xi_l u_l with
// sum_l u_l^2 = 1 on its quadric.
EllipsoidReport verify_ellipsoid(const BosonPaironSet& p, const BosonState& state, const BosonModel& model,
                                 int samples, std::uint64_t seed);

// sum_l eps_l nu_l + sum_alpha e_alpha; throws InconsistencyError when the
// imaginary parts do not cancel to 1e-8.
double boson_energy(const BosonPaironSet& p, const BosonModel& model);

}  // namespace pairzero
