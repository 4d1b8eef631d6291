#include "pairzero/pairon_map.hpp"

#include "pairzero/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pairzero {

Complex pairon_from_zero(const SpherePoint& zeta, double t) {
  const SpherePoint w = zeta.squared();
  if (w.is_infinite()) return -t;
  const Complex wb = std::conj(w.value());
  if (wb == -1.0) {
    std::ostringstream msg;
    msg << "zero " << zeta.value() << " has zeta^2 = -1 and maps to an infinite pairing energy";
    throw StructuralError(msg.str());
  }
  if (std::abs(wb) <= 1.0) return t * (1.0 - wb) / (1.0 + wb);
  const Complex u = 1.0 / wb;
  return t * (u - 1.0) / (u + 1.0);
}

SpherePoint pair_square_from_pairon(Complex e, double t) {
  const Complex eb = std::conj(e);
  if (eb + t == 0.0) return SpherePoint::infinity();
  return SpherePoint::finite((t - eb) / (eb + t));
}

// ---------------------------------------------------------------------------

ZeroPairing pair_zeros(const ZeroSet& zeros, double tol) {
  const std::vector<SpherePoint> pts = zeros.expanded();
  const std::size_t n = pts.size();
  struct Candidate {
    double d;
    std::size_t a, b;
  };
  std::vector<Candidate> cand;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = chordal_distance(pts[a], pts[b].negated());
      if (d <= tol) cand.push_back({d, a, b});
    }
  std::stable_sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) { return x.d < y.d; });

  std::vector<char> used(n, 0);
  ZeroPairing out;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& c : cand) {
    if (used[c.a] || used[c.b]) continue;
    used[c.a] = used[c.b] = 1;
    pairs.emplace_back(c.a, c.b);
    out.max_mismatch = std::max(out.max_mismatch, c.d);
  }
  std::vector<std::size_t> left;
  for (std::size_t a = 0; a < n; ++a)
    if (!used[a]) left.push_back(a);

  auto near_origin = [&](const SpherePoint& p) {
    return !p.is_infinite() && chordal_distance(p, SpherePoint::finite(0.0)) <= tol;
  };
  auto near_infinity = [&](const SpherePoint& p) {
    return chordal_distance(p, SpherePoint::infinity()) <= tol;
  };
  if (left.size() == 2) {
    const auto& p = pts[left[0]];
    const auto& q = pts[left[1]];
    if ((near_origin(p) && near_infinity(q)) || (near_origin(q) && near_infinity(p))) {
      out.nu = 1;
      left.clear();
    }
  }
  if (!left.empty()) {
    const auto& bad = pts[left.front()];
    std::ostringstream msg;
    msg << "zero ";
    if (bad.is_infinite())
      msg << "at infinity";
    else
      msg << bad.value();
    msg << " has no -zeta partner within " << tol << " (" << left.size() << " unpaired)";
    throw StructuralError(msg.str());
  }
  for (const auto& [a, b] : pairs) {
    out.representatives.push_back(pts[a]);
    out.partners.push_back(pts[b]);
  }
  return out;
}

PaironSet pairons_from_pairing(const ZeroPairing& pairing, int j, double t) {
  PaironSet p;
  p.j = j;
  p.nu = pairing.nu;
  for (const auto& z : pairing.representatives) p.e.push_back(pairon_from_zero(z, t));
  if (static_cast<int>(p.e.size()) != j - p.nu)
    throw StructuralError("zero pairing produced the wrong number of pairs");
  return p;
}

PaironSet zeros_to_pairons(const ZeroSet& zeros, double t, double tol) {
  if (zeros.total_multiplicity() != 2 * zeros.j)
    throw std::invalid_argument("zeros_to_pairons: total multiplicity must be 2j");
  return pairons_from_pairing(pair_zeros(zeros, tol), zeros.j, t);
}

ZeroSet pairons_to_zeros(const PaironSet& p, double t) {
  if (p.nu < 0 || p.nu > 1 || static_cast<int>(p.e.size()) != p.j - p.nu)
    throw std::invalid_argument("pairons_to_zeros: expected j - nu pairons with nu in {0, 1}");
  ZeroSet out;
  out.j = p.j;
  for (const auto& e : p.e) {
    const SpherePoint w = pair_square_from_pairon(e, t);
    if (w.is_infinite() || w.value() == 0.0) {
      out.zeros.push_back({w, 2});
      continue;
    }
    const Complex z = std::sqrt(w.value());
    out.zeros.push_back({SpherePoint::finite(z), 1});
    out.zeros.push_back({SpherePoint::finite(-z), 1});
  }
  if (p.nu == 1) {
    out.zeros.push_back({SpherePoint::finite(0.0), 1});
    out.zeros.push_back({SpherePoint::infinity(), 1});
  }
  return out;
}

StateVector reconstruct_state(const PaironSet& p, double t) {
  const int j = p.j;
  const int nu = p.nu;
  const int m_pairs = j - nu;
  if (nu < 0 || nu > 1 || static_cast<int>(p.e.size()) != m_pairs)
    throw std::invalid_argument("reconstruct_state: expected j - nu pairons with nu in {0, 1}");
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("reconstruct_state: t must be positive");

  // sigma[s]: weight of s b-pairs, built one factor (e - t) A + (e + t) B at a time
  std::vector<Complex> sigma(static_cast<std::size_t>(m_pairs + 1), 0.0);
  sigma[0] = 1.0;
  for (int a = 0; a < m_pairs; ++a) {
    const Complex e = p.e[static_cast<std::size_t>(a)];
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw std::invalid_argument("reconstruct_state: non-finite pairon");
    const Complex u = e - t, v = e + t;
    for (int s = a + 1; s >= 0; --s) {
      Complex x = s <= a ? sigma[static_cast<std::size_t>(s)] * u : 0.0;
      if (s > 0) x += sigma[static_cast<std::size_t>(s - 1)] * v;
      sigma[static_cast<std::size_t>(s)] = x;
    }
    double mx = 0.0;
    for (const auto& x : sigma) mx = std::max(mx, std::abs(x));
    if (!(mx > 0.0)) throw std::invalid_argument("reconstruct_state: product vanishes identically");
    for (auto& x : sigma) x /= mx;
  }

  // c at slot 2s + nu is sigma_s sqrt(n_a! n_b!), n_a = 2(M-s)+nu, n_b = 2s+nu; in log form
  std::vector<double> logw(sigma.size());
  double top = -INFINITY;
  for (int s = 0; s <= m_pairs; ++s) {
    const double na = 2.0 * (m_pairs - s) + nu, nb = 2.0 * s + nu;
    const double a = std::abs(sigma[static_cast<std::size_t>(s)]);
    logw[static_cast<std::size_t>(s)] =
        a > 0.0 ? std::log(a) + 0.5 * (std::lgamma(na + 1.0) + std::lgamma(nb + 1.0)) : -INFINITY;
    top = std::max(top, logw[static_cast<std::size_t>(s)]);
  }
  std::vector<Complex> c(static_cast<std::size_t>(2 * j + 1), 0.0);
  for (int s = 0; s <= m_pairs; ++s) {
    const Complex x = sigma[static_cast<std::size_t>(s)];
    if (x == 0.0) continue;
    const double mag = std::exp(logw[static_cast<std::size_t>(s)] - top);
    c[static_cast<std::size_t>(2 * s + nu)] = mag * (x / std::abs(x));
  }
  return StateVector(j, std::move(c));
}

double eigen_residual(const StateVector& state, const ModelParams& params) {
  if (state.j() != params.j()) throw std::invalid_argument("eigen_residual: j mismatch");
  const auto h = build_hamiltonian(params);
  const Eigen::VectorXcd v = state.to_eigen();
  const Eigen::VectorXcd hv = h.dense().cast<Complex>() * v;
  const Complex mean = v.dot(hv);
  const double nrm = h.norm();
  const double r = (hv - mean * v).norm();
  return nrm > 0.0 ? r / nrm : r;
}

// ---------------------------------------------------------------------------

PaironExtraction extract_pairons(const ModelParams& params, int state_index, const ExtractOptions& opts) {
  if (params.gamma_x() == 0.0 || params.gamma_y() == 0.0)
    throw SingularPointError("pairing energies are undefined where gamma_x or gamma_y is zero");
  return extract_pairons(params, diagonalize(build_hamiltonian(params)), state_index, opts);
}

PaironExtraction extract_pairons(const ModelParams& params, const Spectrum& spectrum, int state_index,
                                 const ExtractOptions& opts) {
  if (params.gamma_x() == 0.0 || params.gamma_y() == 0.0)
    throw SingularPointError("pairing energies are undefined where gamma_x or gamma_y is zero");
  if (state_index < 0 || state_index >= static_cast<int>(spectrum.levels.size()))
    throw std::invalid_argument("state index " + std::to_string(state_index) + " out of range [0, " +
                                std::to_string(spectrum.levels.size()) + ")");
  const Eigenpair& lv = spectrum.levels[static_cast<std::size_t>(state_index)];
  if (lv.degenerate)
    throw DegenerateStateError("eigenstate " + std::to_string(state_index) +
                               " is degenerate within its parity sector; its zeros are not defined");
  const double t = *params.t();

  PaironExtraction out;
  const MajoranaPoly poly = majorana_poly(lv.state);
  out.raw_zeros = poly_roots(poly, opts.roots);
  out.zeros = cluster_zeros(out.raw_zeros, opts.cluster_radius);
  out.pairing = pair_zeros(out.zeros, opts.pairing_tol);
  out.pairons = pairons_from_pairing(out.pairing, params.j(), t);

  auto& dg = out.diagnostics;
  dg.energy = lv.energy;
  dg.parity = lv.parity;
  dg.t = t;
  dg.pairing_mismatch = out.pairing.max_mismatch;
  dg.sign_unverified = params.gamma_x() * params.gamma_y() < 0.0;
  dg.cross_parity_degenerate = lv.cross_parity_degenerate;
  const double mx = poly.max_abs();
  for (const auto& z : out.raw_zeros.zeros)
    if (!z.point.is_infinite()) dg.max_root_residual = std::max(dg.max_root_residual, poly.scaled_abs(z.point.value()) / mx);
  for (const auto& e : out.pairons.e)
    if (e == Complex(t) || e == Complex(-t)) ++dg.pole_count;

  const bool parity_ok = (lv.parity == Parity::odd) == (out.pairons.nu == 1);
  if (!parity_ok) throw StructuralError("seniority from the zero pattern disagrees with the state parity");
  return out;
}

}  // namespace pairzero
