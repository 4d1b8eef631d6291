#include "pairzero/boson_bcs.hpp"

#include "pairzero/errors.hpp"
#include "pairzero/roots.hpp"
#include "pairzero/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pairzero {

void BosonModel::validate() const {
  if (L < 1 || L > 4) throw std::invalid_argument("boson model: L must be in 1..4");
  if (N < 0 || N > 20) throw std::invalid_argument("boson model: N must be in 0..20");
  if (levels.size() != static_cast<std::size_t>(L + 1))
    throw std::invalid_argument("boson model: expected L+1 level energies");
  for (double e : levels)
    if (!std::isfinite(e)) throw std::invalid_argument("boson model: non-finite level energy");
  if (!std::is_sorted(levels.begin(), levels.end()))
    throw std::invalid_argument("boson model: level energies must be ascending");
  if (!std::isfinite(gamma)) throw std::invalid_argument("boson model: non-finite gamma");
}

bool BosonModel::distinct_levels() const {
  for (std::size_t a = 0; a < levels.size(); ++a)
    for (std::size_t b = a + 1; b < levels.size(); ++b)
      if (!(std::abs(levels[a] - levels[b]) > 1e-9)) return false;
  return true;
}

std::vector<Occupation> fock_basis(int L, int N) {
  if (L < 1 || N < 0) throw std::invalid_argument("fock_basis: need L >= 1 and N >= 0");
  std::vector<Occupation> out;
  Occupation cur(static_cast<std::size_t>(L + 1), 0);
  // recursive fill, largest occupation of the lowest level first
  auto rec = [&](auto&& self, int level, int left) -> void {
    if (level == L) {
      cur[static_cast<std::size_t>(L)] = left;
      out.push_back(cur);
      return;
    }
    for (int n = left; n >= 0; --n) {
      cur[static_cast<std::size_t>(level)] = n;
      self(self, level + 1, left - n);
    }
  };
  rec(rec, 0, N);
  return out;
}

namespace {

using Cx = std::complex<double>;

std::map<Occupation, int> index_of(const std::vector<Occupation>& basis) {
  std::map<Occupation, int> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], static_cast<int>(i));
  return idx;
}

// column i of H as (row, value) entries
template <class Fn>
void for_each_element(const BosonModel& m, const std::vector<Occupation>& basis, const std::map<Occupation, int>& idx,
                      Fn&& emit) {
  const int nl = m.L + 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Occupation& n = basis[i];
    double diag = 0.0;
    for (int l = 0; l < nl; ++l) diag += m.levels[static_cast<std::size_t>(l)] * n[static_cast<std::size_t>(l)];
    std::map<int, double> col;
    col[static_cast<int>(i)] += diag;
    if (m.gamma != 0.0) {
      for (int l = 0; l < nl; ++l) {
        const int nl_ = n[static_cast<std::size_t>(l)];
        if (nl_ < 2) continue;
        Occupation mid = n;
        mid[static_cast<std::size_t>(l)] -= 2;
        for (int k = 0; k < nl; ++k) {
          const int nk = mid[static_cast<std::size_t>(k)];
          // one sqrt of the integer product keeps H exactly symmetric
          const double amp = std::sqrt(static_cast<double>(nl_) * (nl_ - 1) * (nk + 1) * (nk + 2));
          Occupation fin = mid;
          fin[static_cast<std::size_t>(k)] += 2;
          col[idx.at(fin)] += 0.25 * m.gamma * amp;
        }
      }
    }
    for (const auto& [r, v] : col)
      if (v != 0.0) emit(r, static_cast<int>(i), v);
  }
}

Occupation parity_of(const Occupation& n) {
  Occupation p(n.size());
  for (std::size_t l = 0; l < n.size(); ++l) p[l] = n[l] % 2;
  return p;
}

}  // namespace

double BcsHamiltonian::norm() const {
  Eigen::VectorXd rs = Eigen::VectorXd::Zero(matrix.rows());
  for (int k = 0; k < matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, k); it; ++it) rs(it.row()) += std::abs(it.value());
  return rs.size() ? rs.maxCoeff() : 0.0;
}

BcsHamiltonian build_bcs_hamiltonian(const BosonModel& model) {
  model.validate();
  auto basis = std::make_shared<const std::vector<Occupation>>(fock_basis(model.L, model.N));
  const auto idx = index_of(*basis);
  std::vector<Eigen::Triplet<double>> trip;
  for_each_element(model, *basis, idx, [&](int r, int c, double v) { trip.emplace_back(r, c, v); });
  BcsHamiltonian h;
  h.basis = basis;
  h.matrix.resize(static_cast<Eigen::Index>(basis->size()), static_cast<Eigen::Index>(basis->size()));
  h.matrix.setFromTriplets(trip.begin(), trip.end());
  return h;
}

int BosonState::pairs() const {
  const int v = std::accumulate(nu.begin(), nu.end(), 0);
  return (N - v) / 2;
}

BosonSpectrum diagonalize_bcs(const BosonModel& model) {
  const BcsHamiltonian h = build_bcs_hamiltonian(model);
  const auto& basis = *h.basis;
  BosonSpectrum spec;
  spec.h_norm = h.norm();
  const double gap_tol = kDegeneracyThreshold * std::max(spec.h_norm, 1e-300);

  std::map<Occupation, std::vector<int>> blocks;
  for (std::size_t i = 0; i < basis.size(); ++i) blocks[parity_of(basis[i])].push_back(static_cast<int>(i));
  std::vector<int> pos(basis.size());
  for (const auto& kv : blocks)
    for (std::size_t r = 0; r < kv.second.size(); ++r) pos[static_cast<std::size_t>(kv.second[r])] = static_cast<int>(r);

  for (const auto& [nu, members] : blocks) {
    const int m = static_cast<int>(members.size());
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
    for (int c = 0; c < m; ++c)
      for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, members[static_cast<std::size_t>(c)]); it; ++it)
        b(pos[static_cast<std::size_t>(it.row())], c) = it.value();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) throw ConvergenceError("boson block eigensolver failed");
    for (int k = 0; k < m; ++k) {
      BosonEigenpair ep;
      ep.energy = es.eigenvalues()(k);
      ep.state.L = model.L;
      ep.state.N = model.N;
      ep.state.basis = h.basis;
      ep.state.nu = nu;
      ep.state.coeffs.assign(basis.size(), 0.0);
      const auto col = es.eigenvectors().col(k);
      Eigen::Index first = 0;
      col.cwiseAbs().maxCoeff(&first);
      const double sgn = col(first) < 0.0 ? -1.0 : 1.0;
      for (int r = 0; r < m; ++r) ep.state.coeffs[static_cast<std::size_t>(members[static_cast<std::size_t>(r)])] = sgn * col(r);
      if (k > 0 && ep.energy - es.eigenvalues()(k - 1) < gap_tol) ep.degenerate = true;
      if (k + 1 < m && es.eigenvalues()(k + 1) - ep.energy < gap_tol) ep.degenerate = true;
      spec.levels.push_back(std::move(ep));
    }
  }
  std::stable_sort(spec.levels.begin(), spec.levels.end(),
                   [](const BosonEigenpair& a, const BosonEigenpair& b) { return a.energy < b.energy; });
  auto& lv = spec.levels;
  for (std::size_t a = 0; a < lv.size(); ++a)
    for (std::size_t b = a + 1; b < lv.size() && lv[b].energy - lv[a].energy < gap_tol; ++b)
      if (lv[a].state.nu != lv[b].state.nu) lv[a].cross_block_degenerate = lv[b].cross_block_degenerate = true;
  return spec;
}

std::vector<Cx> BosonPaironSet::axes_squared(const BosonModel& model, std::size_t alpha) const {
  const Cx eb = std::conj(e.at(alpha));
  std::vector<Cx> xi;
  for (int l = 1; l <= model.L; ++l)
    xi.push_back((2.0 * model.levels[static_cast<std::size_t>(l)] - eb) / (eb - 2.0 * model.levels[0]));
  return xi;
}

BosonState reconstruct_boson_state(const BosonPaironSet& p, const BosonModel& model) {
  model.validate();
  const int nl = model.L + 1;
  if (p.nu.size() != static_cast<std::size_t>(nl)) throw std::invalid_argument("reconstruct_boson_state: bad seniorities");
  const int v = std::accumulate(p.nu.begin(), p.nu.end(), 0);
  if (model.N - v != 2 * static_cast<int>(p.e.size()))
    throw std::invalid_argument("reconstruct_boson_state: N - nu must equal twice the number of pairons");

  // pair occupations p_l -> coefficient of prod_l (b_l^+)^{2 p_l + nu_l} |0>
  std::map<Occupation, Cx> cur;
  cur[Occupation(static_cast<std::size_t>(nl), 0)] = 1.0;
  for (const Cx& e : p.e) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw std::invalid_argument("reconstruct_boson_state: non-finite pairon");
    std::vector<Cx> w(static_cast<std::size_t>(nl));
    for (int l = 0; l < nl; ++l) {
      Cx prod = 1.0;
      for (int k = 0; k < nl; ++k)
        if (k != l) prod *= 2.0 * model.levels[static_cast<std::size_t>(k)] - e;
      w[static_cast<std::size_t>(l)] = prod;
    }
    std::map<Occupation, Cx> nxt;
    for (const auto& [occ, c] : cur)
      for (int l = 0; l < nl; ++l) {
        Occupation o = occ;
        ++o[static_cast<std::size_t>(l)];
        nxt[o] += c * w[static_cast<std::size_t>(l)];
      }
    double mx = 0.0;
    for (const auto& kv : nxt) mx = std::max(mx, std::abs(kv.second));
    if (!(mx > 0.0)) throw std::invalid_argument("reconstruct_boson_state: product vanishes identically");
    for (auto& kv : nxt) kv.second /= mx;
    cur = std::move(nxt);
  }

  BosonState s;
  s.L = model.L;
  s.N = model.N;
  s.nu = p.nu;
  s.basis = std::make_shared<const std::vector<Occupation>>(fock_basis(model.L, model.N));
  const auto idx = index_of(*s.basis);
  s.coeffs.assign(s.basis->size(), 0.0);
  double n2 = 0.0;
  for (const auto& [pp, c] : cur) {
    Occupation n(static_cast<std::size_t>(nl));
    double lf = 0.0;
    for (int l = 0; l < nl; ++l) {
      n[static_cast<std::size_t>(l)] = 2 * pp[static_cast<std::size_t>(l)] + p.nu[static_cast<std::size_t>(l)];
      lf += std::lgamma(n[static_cast<std::size_t>(l)] + 1.0);
    }
    const Cx val = c * std::exp(0.5 * lf);
    s.coeffs[static_cast<std::size_t>(idx.at(n))] = val;
    n2 += std::norm(val);
  }
  if (!(n2 > 0.0)) throw std::invalid_argument("reconstruct_boson_state: zero state");
  for (auto& c : s.coeffs) c /= std::sqrt(n2);
  return s;
}

namespace {

// terms conj(c_n) sqrt(N!/prod n!) prod_{l>=1} zeta_l^{n_l}; returns (sum, sum of |terms|)
std::pair<Cx, double> amplitude_terms(const BosonState& s, const std::vector<Cx>& zeta) {
  if (zeta.size() != static_cast<std::size_t>(s.L)) throw std::invalid_argument("boson amplitude: zeta must have L entries");
  Cx sum = 0.0;
  double mag = 0.0;
  const auto& basis = *s.basis;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (s.coeffs[i] == 0.0) continue;
    double lf = std::lgamma(s.N + 1.0);
    Cx mono = 1.0;
    for (int l = 0; l <= s.L; ++l) {
      const int n = basis[i][static_cast<std::size_t>(l)];
      lf -= std::lgamma(n + 1.0);
      if (l >= 1) mono *= std::pow(zeta[static_cast<std::size_t>(l - 1)], n);
    }
    const Cx term = std::conj(s.coeffs[i]) * std::exp(0.5 * lf) * mono;
    sum += term;
    mag += std::abs(term);
  }
  return {sum, mag};
}

}  // namespace

Cx boson_husimi_amplitude(const BosonState& state, const std::vector<Cx>& zeta) {
  double r2 = 1.0;
  for (const auto& z : zeta) r2 += std::norm(z);
  return std::pow(r2, -0.5 * state.N) * amplitude_terms(state, zeta).first;
}

BosonExtraction extract_boson_pairons(const BosonModel& model, int state_index, int slice) {
  return extract_boson_pairons(model, diagonalize_bcs(model), state_index, slice);
}

BosonExtraction extract_boson_pairons(const BosonModel& model, const BosonSpectrum& spectrum, int state_index,
                                      int slice) {
  model.validate();
  if (slice < 1 || slice > model.L) throw std::invalid_argument("slice must be in 1..L");
  if (state_index < 0 || state_index >= static_cast<int>(spectrum.levels.size()))
    throw std::invalid_argument("state index " + std::to_string(state_index) + " out of range");
  if (!model.distinct_levels())
    throw std::invalid_argument("pairon extraction needs pairwise distinct level energies");
  const BosonEigenpair& lv = spectrum.levels[static_cast<std::size_t>(state_index)];
  if (lv.degenerate) throw DegenerateStateError("eigenstate " + std::to_string(state_index) + " is degenerate");

  const BosonState& s = lv.state;
  const int M = s.pairs();
  // coefficient of y^p, y = zeta_slice^2, on the slice
  std::vector<Cx> q(static_cast<std::size_t>(M + 1), 0.0);
  const auto& basis = *s.basis;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Occupation& n = basis[i];
    bool on_slice = true;
    for (int l = 1; l <= model.L; ++l)
      if (l != slice && n[static_cast<std::size_t>(l)] != s.nu[static_cast<std::size_t>(l)]) on_slice = false;
    if (!on_slice) continue;
    double lf = std::lgamma(model.N + 1.0);
    for (int l = 0; l <= model.L; ++l) lf -= std::lgamma(n[static_cast<std::size_t>(l)] + 1.0);
    const int p = (n[static_cast<std::size_t>(slice)] - s.nu[static_cast<std::size_t>(slice)]) / 2;
    q[static_cast<std::size_t>(p)] += std::conj(s.coeffs[i]) * std::exp(0.5 * lf);
  }

  BosonExtraction out;
  out.energy = lv.energy;
  out.pairons.nu = s.nu;
  const double e0 = model.levels[0];
  const double es = model.levels[static_cast<std::size_t>(slice)];
  int top = M;
  while (top > 0 && q[static_cast<std::size_t>(top)] == 0.0) --top;
  int low = 0;
  while (low < top && q[static_cast<std::size_t>(low)] == 0.0) ++low;
  // y = infinity -> e = 2 eps_0, y = 0 -> e = 2 eps_slice
  for (int i = top; i < M; ++i) {
    out.pairons.e.push_back(2.0 * e0);
    out.pole_flag = true;
  }
  for (int i = 0; i < low; ++i) {
    out.pairons.e.push_back(2.0 * es);
    out.pole_flag = true;
  }
  if (top > low) {
    std::vector<Cx> r(q.begin() + low, q.begin() + top + 1);
    auto y = aberth_roots(r);
    if (std::all_of(r.begin(), r.end(), [](const Cx& x) { return x.imag() == 0.0; })) symmetrize_conjugates(y);
    for (const auto& yy : y) {
      const Cx yb = std::conj(yy);
      if (yb == -1.0) {
        out.infinity_flag = true;
        throw StructuralError("slice root at xi^2 = -1 maps to an infinite pairing energy");
      }
      out.pairons.e.push_back(2.0 * (es + e0 * yb) / (1.0 + yb));
    }
  }
  std::stable_sort(out.pairons.e.begin(), out.pairons.e.end(), [](const Cx& a, const Cx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

EllipsoidReport verify_ellipsoid(const BosonPaironSet& p, const BosonState& state, const BosonModel& model,
                                 int samples, std::uint64_t seed) {
  if (model.L < 2) throw std::invalid_argument("verify_ellipsoid: needs L >= 2");
  if (samples < 1) throw std::invalid_argument("verify_ellipsoid: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  EllipsoidReport rep;
  for (std::size_t a = 0; a < p.e.size(); ++a) {
    const auto xi2 = p.axes_squared(model, a);
    for (int s = 0; s < samples; ++s) {
      std::vector<Cx> u(static_cast<std::size_t>(model.L));
      Cx rest = 1.0;
      for (int l = 0; l + 1 < model.L; ++l) {
        u[static_cast<std::size_t>(l)] = Cx(g(rng), g(rng)) * 0.5;
        rest -= u[static_cast<std::size_t>(l)] * u[static_cast<std::size_t>(l)];
      }
      u.back() = std::sqrt(rest);
      std::vector<Cx> zeta(static_cast<std::size_t>(model.L));
      for (int l = 0; l < model.L; ++l)
        zeta[static_cast<std::size_t>(l)] = std::sqrt(xi2[static_cast<std::size_t>(l)]) * u[static_cast<std::size_t>(l)];
      const auto [sum, mag] = amplitude_terms(state, zeta);
      const double rel = mag > 0.0 ? std::abs(sum) / mag : 0.0;
      rep.max_relative = std::max(rep.max_relative, rel);
      ++rep.points;
    }
  }
  rep.ok = rep.max_relative <= 1e-9;
  return rep;
}

double boson_energy(const BosonPaironSet& p, const BosonModel& model) {
  if (p.nu.size() != model.levels.size()) throw std::invalid_argument("boson_energy: bad seniorities");
  double e = 0.0;
  for (std::size_t l = 0; l < p.nu.size(); ++l) e += model.levels[l] * p.nu[l];
  Cx s = 0.0;
  for (const auto& x : p.e) s += x;
  if (!(std::abs(s.imag()) <= 1e-8)) {
    std::ostringstream msg;
    msg << "imaginary parts of the pairons do not cancel (sum " << s.imag() << ")";
    throw InconsistencyError(msg.str());
  }
  return e + s.real();
}

}  // namespace pairzero
