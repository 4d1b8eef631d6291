#include "pairzero/spin_core.hpp"

#include "pairzero/detail/tridiagonal.hpp"
#include "pairzero/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace pairzero {

std::string_view to_string(Parity p) noexcept {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::mixed: return "mixed";
  }
  return "mixed";
}

int checked_spin(double j) {
  if (!std::isfinite(j) || j < 1.0)
    throw std::invalid_argument("quasispin j must be >= 1, got " + std::to_string(j));
  if (j != std::floor(j))
    throw std::invalid_argument("half-integer or fractional quasispin j is not supported");
  if (j > 4096) throw std::invalid_argument("quasispin j too large");
  return static_cast<int>(j);
}

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

ModelParams ModelParams::from_couplings(double j, double epsilon, double lambda, double gamma) {
  const int jj = checked_spin(j);
  require_finite(epsilon, "epsilon");
  require_finite(lambda, "lambda");
  require_finite(gamma, "gamma");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const double f = (2.0 * jj - 1.0) / epsilon;
  return ModelParams(jj, epsilon, lambda, gamma, f * (gamma + lambda), f * (gamma - lambda));
}

ModelParams ModelParams::from_control(double j, double gamma_x, double gamma_y, double epsilon) {
  const int jj = checked_spin(j);
  require_finite(epsilon, "epsilon");
  require_finite(gamma_x, "gamma_x");
  require_finite(gamma_y, "gamma_y");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const double f = epsilon / (2.0 * (2.0 * jj - 1.0));
  return ModelParams(jj, epsilon, f * (gamma_x - gamma_y), f * (gamma_x + gamma_y), gamma_x,
                     gamma_y);
}

std::optional<double> ModelParams::t() const noexcept {
  if (gamma_y_ == 0.0) return std::nullopt;
  return std::sqrt(std::abs(gamma_x_ / gamma_y_));
}

// ---------------------------------------------------------------------------

namespace {

Parity detect_parity(const std::vector<Complex>& c) {
  bool has_even = false;
  bool has_odd = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == Complex(0.0)) continue;
    // slot i = j + m
    if (i % 2 == 0)
      has_even = true;
    else
      has_odd = true;
  }
  if (has_even && has_odd) return Parity::mixed;
  return has_odd ? Parity::odd : Parity::even;
}

}  // namespace

StateVector::StateVector(int j, std::vector<Complex> coeffs) : j_(j), coeffs_(std::move(coeffs)) {
  if (j < 1) throw std::invalid_argument("StateVector: j must be >= 1");
  if (coeffs_.size() != static_cast<std::size_t>(2 * j + 1))
    throw std::invalid_argument("StateVector: expected 2j+1 coefficients");
  double n2 = 0.0;
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("StateVector: non-finite coefficient");
    n2 += std::norm(c);
  }
  if (!(n2 > 0.0)) throw std::invalid_argument("StateVector: zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : coeffs_) c *= inv;
  parity_ = detect_parity(coeffs_);
}

StateVector StateVector::dicke(int j, int m) {
  if (m < -j || m > j) throw std::invalid_argument("StateVector::dicke: |m| > j");
  std::vector<Complex> c(static_cast<std::size_t>(2 * j + 1), Complex(0.0));
  c[static_cast<std::size_t>(m + j)] = 1.0;
  return StateVector(j, std::move(c));
}

bool StateVector::is_real() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return c.imag() == 0.0; });
}

Eigen::VectorXcd StateVector::to_eigen() const {
  Eigen::VectorXcd v(dimension());
  for (int i = 0; i < dimension(); ++i) v(i) = coeffs_[static_cast<std::size_t>(i)];
  return v;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.j() != b.j()) throw std::invalid_argument("fidelity: states of different j");
  Complex s = 0.0;
  for (int i = 0; i < a.dimension(); ++i) s += std::conj(a.coeffs()[i]) * b.coeffs()[i];
  return std::abs(s);
}

// ---------------------------------------------------------------------------

double HamiltonianMatrix::norm() const noexcept {
  return dense_.cwiseAbs().rowwise().sum().maxCoeff();
}

HamiltonianMatrix build_hamiltonian(const ModelParams& p) {
  const int j = p.j();
  const int n = 2 * j + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  const double jj1 = static_cast<double>(j) * (j + 1);
  for (int i = 0; i < n; ++i) {
    const double m = i - j;
    h(i, i) = p.epsilon() * m + p.gamma() * (jj1 - m * m);
    if (i + 2 < n) {
      // <m+2| J+^2 |m>
      const double amp = std::sqrt((j - m) * (j + m + 1) * (j - m - 1) * (j + m + 2));
      const double v = 0.5 * p.lambda() * amp;
      h(i + 2, i) = v;
      h(i, i + 2) = v;
    }
  }
  return HamiltonianMatrix(j, std::move(h));
}

Eigen::MatrixXd Sector::block() const {
  const int n = size();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    b(i, i) = diagonal(i);
    if (i + 1 < n) {
      b(i, i + 1) = off_diagonal(i);
      b(i + 1, i) = off_diagonal(i);
    }
  }
  return b;
}

ParityBlocks split_parity(const HamiltonianMatrix& h) {
  const int n = 2 * h.j() + 1;
  ParityBlocks out;
  out.even.parity = Parity::even;
  out.odd.parity = Parity::odd;
  for (int i = 0; i < n; ++i) (i % 2 == 0 ? out.even : out.odd).slots.push_back(i);
  for (Sector* s : {&out.even, &out.odd}) {
    const int m = s->size();
    s->diagonal.resize(m);
    s->off_diagonal.resize(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) {
      const int slot = s->slots[static_cast<std::size_t>(k)];
      s->diagonal(k) = h.dense()(slot, slot);
      if (k + 1 < m) s->off_diagonal(k) = h.dense()(slot + 2, slot);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct SectorSolution {
  std::vector<double> energies;
  std::vector<std::vector<double>> vectors;  // in sector coordinates
};

// Splits at exactly-zero couplings so every piece is unreduced.
std::vector<std::pair<int, int>> unreduced_ranges(const Sector& s) {
  std::vector<std::pair<int, int>> ranges;
  int start = 0;
  for (int k = 0; k + 1 < s.size(); ++k) {
    if (s.off_diagonal(k) == 0.0) {
      ranges.emplace_back(start, k + 1);
      start = k + 1;
    }
  }
  ranges.emplace_back(start, s.size());
  return ranges;
}

double residual_norm(const std::vector<double>& d, const std::vector<double>& o,
                     const std::vector<double>& v, double e) {
  double r2 = 0.0;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = (d[i] - e) * v[i];
    if (i > 0) r += o[i - 1] * v[i - 1];
    if (i + 1 < n) r += o[i] * v[i + 1];
    r2 += r * r;
  }
  return std::sqrt(r2);
}

void normalize_sign(std::vector<double>& v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  // first nonzero coefficient positive
  std::size_t first = 0;
  while (first < v.size() && v[first] == 0.0) ++first;
  const double s = (first < v.size() && v[first] < 0.0 ? -1.0 : 1.0) / std::sqrt(n2);
  for (auto& x : v) x *= s;
}

SectorSolution solve_sector(const Sector& s, double h_norm) {
  SectorSolution out;
  const int n = s.size();
  if (n == 0) return out;
  for (const auto& [lo, hi] : unreduced_ranges(s)) {
    const int m = hi - lo;
    std::vector<double> d(static_cast<std::size_t>(m)), o(static_cast<std::size_t>(std::max(m - 1, 0)));
    for (int k = 0; k < m; ++k) d[static_cast<std::size_t>(k)] = s.diagonal(lo + k);
    for (int k = 0; k + 1 < m; ++k) o[static_cast<std::size_t>(k)] = s.off_diagonal(lo + k);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    Eigen::VectorXd dv = Eigen::Map<Eigen::VectorXd>(d.data(), m);
    Eigen::VectorXd ov = Eigen::Map<Eigen::VectorXd>(o.data(), std::max(m - 1, 0));
    es.computeFromTridiagonal(dv, ov, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) {
      throw ConvergenceError(std::string("tridiagonal eigensolver failed in the ") +
                             std::string(to_string(s.parity)) + " sector");
    }
    for (int c = 0; c < m; ++c) {
      const double e = es.eigenvalues()(c);
      Eigen::Index twist = 0;
      es.eigenvectors().col(c).cwiseAbs().maxCoeff(&twist);
      std::vector<double> v = detail::twisted_eigenvector(d, o, e, static_cast<std::size_t>(twist));
      normalize_sign(v);
      std::vector<double> ref(es.eigenvectors().col(c).data(), es.eigenvectors().col(c).data() + m);
      const double r_twisted = residual_norm(d, o, v, e);
      const double r_ref = residual_norm(d, o, ref, e);
      bool ok = std::isfinite(r_twisted) && r_twisted <= std::max(10.0 * r_ref, 1e-14 * h_norm);
      if (!ok) {
        normalize_sign(ref);
        v = std::move(ref);
      }
      std::vector<double> full(static_cast<std::size_t>(n), 0.0);
      std::copy(v.begin(), v.end(), full.begin() + lo);
      out.energies.push_back(e);
      out.vectors.push_back(std::move(full));
    }
  }
  // ascending within the sector
  std::vector<std::size_t> order(out.energies.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.energies[a] < out.energies[b]; });
  SectorSolution sorted;
  for (auto k : order) {
    sorted.energies.push_back(out.energies[k]);
    sorted.vectors.push_back(std::move(out.vectors[k]));
  }
  return sorted;
}

}  // namespace

std::vector<double> sector_eigenvalues(const Sector& s) {
  if (s.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  Eigen::VectorXd od = s.off_diagonal;
  es.computeFromTridiagonal(s.diagonal, od, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw ConvergenceError(std::string("tridiagonal eigensolver failed in the ") +
                           std::string(to_string(s.parity)) + " sector");
  return {es.eigenvalues().data(), es.eigenvalues().data() + s.size()};
}

Spectrum diagonalize(const HamiltonianMatrix& h) {
  const int j = h.j();
  const int n = 2 * j + 1;
  Spectrum spec;
  spec.h_norm = h.norm();
  const double gap_tol = kDegeneracyThreshold * std::max(spec.h_norm, 1e-300);
  const ParityBlocks blocks = split_parity(h);

  for (const Sector* s : {&blocks.even, &blocks.odd}) {
    SectorSolution sol = solve_sector(*s, spec.h_norm);
    for (std::size_t k = 0; k < sol.energies.size(); ++k) {
      std::vector<Complex> c(static_cast<std::size_t>(n), Complex(0.0));
      for (int b = 0; b < s->size(); ++b)
        c[static_cast<std::size_t>(s->slots[static_cast<std::size_t>(b)])] = sol.vectors[k][static_cast<std::size_t>(b)];
      Eigenpair ep{sol.energies[k], StateVector(j, std::move(c)), s->parity, static_cast<int>(k)};
      const Eigen::VectorXd v = ep.state.to_eigen().real();
      ep.residual = (h.dense() * v - ep.energy * v).norm();
      if (!(ep.residual <= 1e-10 * std::max(spec.h_norm, 1e-300))) {
        std::ostringstream msg;
        msg << "eigenpair " << k << " of the " << to_string(s->parity)
            << " sector did not converge (residual " << ep.residual << ")";
        throw ConvergenceError(msg.str());
      }
      if (k > 0 && sol.energies[k] - sol.energies[k - 1] < gap_tol) ep.degenerate = true;
      if (k + 1 < sol.energies.size() && sol.energies[k + 1] - sol.energies[k] < gap_tol)
        ep.degenerate = true;
      spec.levels.push_back(std::move(ep));
    }
  }

  std::stable_sort(spec.levels.begin(), spec.levels.end(),
                   [](const Eigenpair& a, const Eigenpair& b) { return a.energy < b.energy; });
  for (std::size_t k = 0; k < spec.levels.size(); ++k) {
    for (std::size_t l = 0; l < spec.levels.size(); ++l) {
      if (spec.levels[l].parity == spec.levels[k].parity) continue;
      if (std::abs(spec.levels[l].energy - spec.levels[k].energy) < gap_tol)
        spec.levels[k].cross_parity_degenerate = true;
    }
  }
  return spec;
}

}  // namespace pairzero
