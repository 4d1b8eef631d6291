// spin_core.hpp: LMG model in the Dicke basis |j,m>: parameters, states,
// Hamiltonian matrix, parity sectors and eigen-decomposition.
//
// Dicke slot convention: coefficient index i = j + m, i = 0..2j. In the
// two-boson picture slot i is the Fock state |n_a = 2j - i, n_b = i>.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pairzero {

using Complex = std::complex<double>;

enum class Parity { even, odd, mixed };

std::string_view to_string(Parity p) noexcept;

// Accepts a real-valued quasispin and returns it as an integer; rejects
// j < 1, half-integers and non-finite input.
int checked_spin(double j);

class ModelParams {
 public:
  // H = eps*Jz + lambda/2 (J+^2 + J-^2) + gamma/2 (J+J- + J-J+)
  static ModelParams from_couplings(double j, double epsilon, double lambda, double gamma);
  // gamma_x = (2j-1)(gamma+lambda)/eps, gamma_y = (2j-1)(gamma-lambda)/eps
  static ModelParams from_control(double j, double gamma_x, double gamma_y, double epsilon = 1.0);

  int j() const noexcept { return j_; }
  double epsilon() const noexcept { return epsilon_; }
  double lambda() const noexcept { return lambda_; }
  double gamma() const noexcept { return gamma_; }
  double gamma_x() const noexcept { return gamma_x_; }
  double gamma_y() const noexcept { return gamma_y_; }

  // sqrt(|gamma_x / gamma_y|); empty when gamma_y == 0.
  std::optional<double> t() const noexcept;

 private:
  ModelParams(int j, double epsilon, double lambda, double gamma, double gx, double gy)
      : j_(j), epsilon_(epsilon), lambda_(lambda), gamma_(gamma), gamma_x_(gx), gamma_y_(gy) {}

  int j_;
  double epsilon_;
  double lambda_;
  double gamma_;
  double gamma_x_;
  double gamma_y_;
};

// Pure state of a spin-j system, always stored normalized.
class StateVector {
 public:
  // coeffs[i] multiplies |j, i - j>. Throws on wrong size or zero norm.
  StateVector(int j, std::vector<Complex> coeffs);

  static StateVector dicke(int j, int m);

  int j() const noexcept { return j_; }
  int dimension() const noexcept { return 2 * j_ + 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex coeff(int m) const { return coeffs_.at(static_cast<std::size_t>(m + j_)); }
  // even <=> c_m == 0 exactly whenever j + m is odd.
  Parity parity() const noexcept { return parity_; }
  bool is_real() const noexcept;

  Eigen::VectorXcd to_eigen() const;

 private:
  int j_;
  std::vector<Complex> coeffs_;
  Parity parity_;
};

// |<a|b>|
double fidelity(const StateVector& a, const StateVector& b);

class HamiltonianMatrix {
 public:
  HamiltonianMatrix(int j, Eigen::MatrixXd dense) : j_(j), dense_(std::move(dense)) {}

  int j() const noexcept { return j_; }
  const Eigen::MatrixXd& dense() const noexcept { return dense_; }
  double operator()(int m, int n) const { return dense_(m + j_, n + j_); }
  // max absolute row sum
  double norm() const noexcept;

 private:
  int j_;
  Eigen::MatrixXd dense_;
};

HamiltonianMatrix build_hamiltonian(const ModelParams& params);

// One parity sector as a symmetric tridiagonal matrix.
struct Sector {
  Parity parity = Parity::even;
  std::vector<int> slots;      // block index -> Dicke slot (j + m)
  Eigen::VectorXd diagonal;
  Eigen::VectorXd off_diagonal;  // size() - 1 entries, coupling m and m+2
  Eigen::MatrixXd block() const;
  int size() const noexcept { return static_cast<int>(slots.size()); }
};

struct ParityBlocks {
  Sector even;  // j + m even
  Sector odd;   // j + m odd
};

ParityBlocks split_parity(const HamiltonianMatrix& h);

struct Eigenpair {
  double energy = 0.0;
  StateVector state;
  Parity parity = Parity::even;
  int sector_index = 0;  // position within its parity sector, ascending
  // gap to a same-sector neighbour below 1e-9 ||H||: eigenvector not well defined
  bool degenerate = false;
  // shares its energy with a level of the other sector; eigenvector still well defined
  bool cross_parity_degenerate = false;
  double residual = 0.0;  // ||H v - E v||
};

struct Spectrum {
  double h_norm = 0.0;
  std::vector<Eigenpair> levels;  // ascending energy
};

inline constexpr double kDegeneracyThreshold = 1e-9;

// Per-sector tridiagonal solve; eigenvectors are recomputed with a twisted
// three-term recurrence so that exponentially small coefficients keep their
// relative accuracy. Throws ConvergenceError naming the sector on failure.
Spectrum diagonalize(const HamiltonianMatrix& h);

// Ascending eigenvalues of a single sector, no eigenvectors.
std::vector<double> sector_eigenvalues(const Sector& s);

}  // namespace pairzero
