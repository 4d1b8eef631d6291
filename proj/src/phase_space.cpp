#include "pairzero/phase_space.hpp"

#include "pairzero/errors.hpp"
#include "pairzero/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pairzero {

std::vector<double> sqrt_binomials(int n) {
  if (n < 0) throw std::invalid_argument("sqrt_binomials: n must be >= 0");
  std::vector<double> b(static_cast<std::size_t>(n + 1));
  b[0] = 1.0;
  for (int k = 0; k < n; ++k)
    b[static_cast<std::size_t>(k + 1)] =
        b[static_cast<std::size_t>(k)] * std::sqrt(static_cast<double>(n - k) / (k + 1));
  return b;
}

// ---------------------------------------------------------------------------

double MajoranaPoly::max_abs() const {
  double m = 0.0;
  for (const auto& x : d) m = std::max(m, std::abs(x));
  return m;
}

Complex MajoranaPoly::evaluate(const SpherePoint& z) const {
  if (z.is_infinite()) return d.back();
  const Complex x = z.value();
  Complex s = 0.0;
  for (std::size_t k = d.size(); k-- > 0;) s = s * x + d[k];
  return s;
}

double MajoranaPoly::scaled_abs(Complex z) const {
  if (std::abs(z) <= 1.0) {
    Complex s = 0.0;
    for (std::size_t k = d.size(); k-- > 0;) s = s * z + d[k];
    return std::abs(s);
  }
  // |P(z)| / |z|^degree = |sum_k d_k w^{degree-k}|, w = 1/z
  const Complex w = 1.0 / z;
  Complex s = 0.0;
  for (int k = 0; k <= degree; ++k) s = s * w + d[static_cast<std::size_t>(k)];
  return std::abs(s);
}

int ZeroSet::total_multiplicity() const noexcept {
  int s = 0;
  for (const auto& z : zeros) s += z.multiplicity;
  return s;
}

std::vector<SpherePoint> ZeroSet::expanded() const {
  std::vector<SpherePoint> out;
  for (const auto& z : zeros)
    for (int k = 0; k < z.multiplicity; ++k) out.push_back(z.point);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Complex> amplitude_coeffs(const StateVector& s) {
  const int n = 2 * s.j();
  const auto sb = sqrt_binomials(n);
  std::vector<Complex> d(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k)
    d[static_cast<std::size_t>(k)] = std::conj(s.coeffs()[static_cast<std::size_t>(k)]) * sb[static_cast<std::size_t>(k)];
  return d;
}

Complex overlap_from_coeffs(const std::vector<Complex>& d, const SpherePoint& z) {
  const int n = static_cast<int>(d.size()) - 1;
  if (z.is_infinite()) return d.back();
  const Complex x = z.value();
  const double r = std::abs(x);
  const double a = 1.0 / std::sqrt(1.0 + r * r);
  if (r <= 1.0) {
    Complex s = 0.0;
    for (std::size_t k = d.size(); k-- > 0;) s = s * x + d[k];
    return std::pow(a, n) * s;
  }
  // (1+|z|^2)^{-j} z^{2j} sum_k d_k z^{k-2j}
  const Complex w = 1.0 / x;
  Complex s = 0.0;
  for (const auto& c : d) s = s * w + c;
  return std::pow(x * a, n) * s;
}

}  // namespace

Complex coherent_overlap(const StateVector& state, const SpherePoint& z) {
  return overlap_from_coeffs(amplitude_coeffs(state), z);
}

double husimi(const StateVector& state, const SpherePoint& z) {
  return std::norm(coherent_overlap(state, z));
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const unsigned un = static_cast<unsigned>(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(un, x);
      const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    const double p = std::legendre(un, x);
    const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
    dp = n * (x * p - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

double husimi_quadrature(const StateVector& state, int n_theta, int n_phi) {
  if (n_theta < 64 || n_phi < 64)
    throw std::invalid_argument("husimi_quadrature: resolution must be at least 64x64");
  const auto d = amplitude_coeffs(state);
  const int n = 2 * state.j();
  std::vector<double> xs, ws;
  gauss_legendre(n_theta, xs, ws);
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  // e^{-i k phi} table
  std::vector<Complex> phase(static_cast<std::size_t>(n_phi) * (n + 1));
  for (int p = 0; p < n_phi; ++p)
    for (int k = 0; k <= n; ++k)
      phase[static_cast<std::size_t>(p) * (n + 1) + k] = std::polar(1.0, -k * p * dphi);

  std::vector<Complex> a(static_cast<std::size_t>(n + 1));
  double total = 0.0;
  for (int t = 0; t < n_theta; ++t) {
    const double x = xs[static_cast<std::size_t>(t)];
    const double c = std::sqrt(0.5 * (1.0 + x));  // cos(theta/2), x = cos(theta)
    const double s = std::sqrt(0.5 * (1.0 - x));
    for (int k = 0; k <= n; ++k)
      a[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(k)] * std::pow(c, n - k) * std::pow(s, k);
    double ring = 0.0;
    for (int p = 0; p < n_phi; ++p) {
      Complex amp = 0.0;
      const Complex* ph = &phase[static_cast<std::size_t>(p) * (n + 1)];
      for (int k = 0; k <= n; ++k) amp += a[static_cast<std::size_t>(k)] * ph[k];
      ring += std::norm(amp);
    }
    total += ws[static_cast<std::size_t>(t)] * ring * dphi;
  }
  return total * (n + 1) / (4.0 * std::numbers::pi);
}

// ---------------------------------------------------------------------------

MajoranaPoly majorana_poly(const StateVector& state, double degree_threshold) {
  if (!(degree_threshold >= 0.0)) throw std::invalid_argument("majorana_poly: threshold must be >= 0");
  MajoranaPoly p;
  p.j = state.j();
  p.d = amplitude_coeffs(state);
  const double mx = p.max_abs();
  if (!(mx > 0.0)) throw std::invalid_argument("majorana_poly: all-zero coefficient vector");
  const double cut = degree_threshold * mx;
  if (cut > 0.0)
    for (auto& x : p.d)
      if (std::abs(x) <= cut) x = 0.0;
  const int n = 2 * p.j;
  p.degree = n;
  while (p.degree > 0 && p.d[static_cast<std::size_t>(p.degree)] == 0.0) --p.degree;
  p.low = 0;
  while (p.low < p.degree && p.d[static_cast<std::size_t>(p.low)] == 0.0) ++p.low;
  return p;
}

StateVector state_from_majorana(const MajoranaPoly& p) {
  const int n = 2 * p.j;
  if (p.d.size() != static_cast<std::size_t>(n + 1))
    throw std::invalid_argument("state_from_majorana: expected 2j+1 coefficients");
  const auto sb = sqrt_binomials(n);
  std::vector<Complex> c(p.d.size());
  for (int k = 0; k <= n; ++k)
    c[static_cast<std::size_t>(k)] = std::conj(p.d[static_cast<std::size_t>(k)]) / sb[static_cast<std::size_t>(k)];
  return StateVector(p.j, std::move(c));
}

// ---------------------------------------------------------------------------

ZeroSet poly_roots(const MajoranaPoly& p, const RootOptions& opts) {
  ZeroSet out;
  out.j = p.j;
  const int n = 2 * p.j;
  if (p.low > 0) out.zeros.push_back({SpherePoint::finite(0.0), p.low});

  std::vector<Complex> r(p.d.begin() + p.low, p.d.begin() + p.degree + 1);
  const bool real = std::all_of(r.begin(), r.end(), [](const Complex& x) { return x.imag() == 0.0; });
  bool pair_form = opts.use_parity;
  for (std::size_t i = 1; i < r.size() && pair_form; i += 2)
    if (r[i] != 0.0) pair_form = false;

  std::vector<Complex> roots;
  if (r.size() > 1) {
    if (pair_form) {
      std::vector<Complex> q;
      for (std::size_t i = 0; i < r.size(); i += 2) q.push_back(r[i]);
      std::vector<Complex> w = aberth_roots(q, opts.max_sweeps);
      if (real) symmetrize_conjugates(w);
      for (const auto& x : w) {
        const Complex s = std::sqrt(x);
        roots.push_back(s);
        roots.push_back(-s);
      }
    } else {
      roots = aberth_roots(r, opts.max_sweeps);
      if (real) symmetrize_conjugates(roots);
    }
  }

  const double bound = opts.residual_tol * p.max_abs();
  for (const auto& z : roots) {
    const double res = p.scaled_abs(z);
    if (!(res <= bound)) {
      std::ostringstream msg;
      msg << "root " << z << " has residual " << res << " above " << bound;
      throw ConvergenceError(msg.str(), roots);
    }
    out.zeros.push_back({SpherePoint::finite(z), 1});
  }
  if (n - p.degree > 0) out.zeros.push_back({SpherePoint::infinity(), n - p.degree});
  return out;
}

ZeroSet cluster_zeros(const ZeroSet& raw, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("cluster_zeros: radius must be > 0");
  const std::size_t n = raw.zeros.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (chordal_distance(raw.zeros[a].point, raw.zeros[b].point) <= radius) {
        const std::size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }

  ZeroSet out;
  out.j = raw.j;
  std::vector<std::size_t> slot(n, n);
  std::vector<std::array<double, 3>> sum;
  std::vector<std::size_t> members;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t r = find(a);
    if (slot[r] == n) {
      slot[r] = out.zeros.size();
      out.zeros.push_back({raw.zeros[a].point, 0});
      sum.push_back({0.0, 0.0, 0.0});
      members.push_back(0);
    }
    const std::size_t c = slot[r];
    const auto e = raw.zeros[a].point.embedding();
    const int m = raw.zeros[a].multiplicity;
    for (int i = 0; i < 3; ++i) sum[c][static_cast<std::size_t>(i)] += m * e[static_cast<std::size_t>(i)];
    out.zeros[c].multiplicity += m;
    ++members[c];
  }
  for (std::size_t c = 0; c < out.zeros.size(); ++c)
    if (members[c] > 1) out.zeros[c].point = SpherePoint::from_embedding(sum[c]);
  return out;
}

double collapse_radius(int multiplicity) {
  if (multiplicity < 1) throw std::invalid_argument("collapse_radius: multiplicity must be >= 1");
  return 10.0 * std::pow(1e-12, 1.0 / multiplicity);
}

}  // namespace pairzero
