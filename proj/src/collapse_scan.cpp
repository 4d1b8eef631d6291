#include "pairzero/collapse_scan.hpp"

#include "pairzero/errors.hpp"
#include "pairzero/extended.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace pairzero {

std::vector<double> hyperbola_levels(int j) {
  if (j < 1) throw std::invalid_argument("hyperbola_levels: j must be >= 1");
  std::vector<double> h;
  const double a = 2.0 * j - 1.0;
  for (int k = 0; k < j; ++k) {
    const double r = a / (a - 2.0 * k);
    h.push_back(r * r);
  }
  return h;
}

std::vector<int> CollapsePoint::pattern(int j) const {
  std::vector<int> p{2 * (k + 1)};
  for (int i = 0; i < j - k - 1; ++i) p.push_back(2);
  return p;
}

std::vector<CollapsePoint> collapse_points(int j, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("collapse_points: c must be > 0");
  const auto h = hyperbola_levels(j);
  std::vector<CollapsePoint> out;
  for (int k = 0; k < j; ++k) {
    const double rad = c * c / 4.0 - h[static_cast<std::size_t>(k)];
    if (rad < 0.0) continue;
    const double s = std::sqrt(rad);
    out.push_back({k, c / 2.0 - s, -1, h[static_cast<std::size_t>(k)]});
    if (s > 0.0) out.push_back({k, c / 2.0 + s, +1, h[static_cast<std::size_t>(k)]});
  }
  return out;
}

std::vector<CrossingPoint> crossing_points(int j) {
  if (j < 1) throw std::invalid_argument("crossing_points: j must be >= 1");
  std::vector<CrossingPoint> out;
  const int a = 2 * j - 1;
  for (int k = 0; k < j; ++k)
    out.push_back({k, -static_cast<double>(a) / (a - 2 * k), -j + k, -j + k + 1});
  return out;
}

CrossingCheck verify_crossing(int j, const CrossingPoint& cp, double epsilon) {
  const auto params = ModelParams::from_control(j, cp.gamma_x, cp.gamma_x, epsilon);
  const auto h = build_hamiltonian(params);
  const auto blocks = split_parity(h);
  const auto ev = sector_eigenvalues(blocks.even);
  const auto od = sector_eigenvalues(blocks.odd);
  CrossingCheck r;
  r.h_norm = h.norm();
  r.gap = std::numeric_limits<double>::infinity();
  for (double a : ev)
    for (double b : od) r.gap = std::min(r.gap, std::abs(a - b));
  r.pair_gap = std::abs(h(cp.m, cp.m) - h(cp.m_prime, cp.m_prime));
  r.ok = r.gap <= 1e-10 * r.h_norm && r.pair_gap <= 1e-10 * r.h_norm;
  return r;
}

// ---------------------------------------------------------------------------

void TrajectorySpec::validate() const {
  if (steps < 1) throw std::invalid_argument("trajectory: steps must be >= 1");
  if (!std::isfinite(from) || !std::isfinite(to)) throw std::invalid_argument("trajectory: non-finite range");
  if (steps > 1 && !(to > from)) throw std::invalid_argument("trajectory: 'to' must exceed 'from'");
  if (kind == LineKind::sum && !std::isfinite(line_sum)) throw std::invalid_argument("trajectory: non-finite line sum");
  if (state_index < 0 || state_index > 2 * j) throw std::invalid_argument("trajectory: state index out of range");
  if (threads < 1) throw std::invalid_argument("trajectory: threads must be >= 1");
  if (!(margin >= 0.0)) throw std::invalid_argument("trajectory: margin must be >= 0");
  checked_spin(j);
}

double TrajectorySpec::gamma_y(double gx) const { return kind == LineKind::sum ? line_sum - gx : gx; }

double TrajectorySpec::sample(int i) const {
  if (steps == 1) return from;
  if (i == steps - 1) return to;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

void canonical_order(PaironExtraction& ex) {
  const std::size_t n = ex.pairons.e.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  const auto& e = ex.pairons.e;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (e[a].real() != e[b].real()) return e[a].real() < e[b].real();
    return e[a].imag() < e[b].imag();
  });
  PaironExtraction sorted = ex;
  for (std::size_t i = 0; i < n; ++i) {
    sorted.pairons.e[i] = ex.pairons.e[idx[i]];
    sorted.pairing.representatives[i] = ex.pairing.representatives[idx[i]];
    sorted.pairing.partners[i] = ex.pairing.partners[idx[i]];
  }
  ex = std::move(sorted);
}

ScanSample compute_sample(const TrajectorySpec& spec, int i) {
  ScanSample s;
  s.index = i;
  s.gamma_x = spec.sample(i);
  s.gamma_y = spec.gamma_y(s.gamma_x);
  if (std::abs(s.gamma_x) < spec.margin || std::abs(s.gamma_y) < spec.margin) {
    s.skipped = "singular: gamma_x or gamma_y within margin of zero";
    return s;
  }
  try {
    const auto params = ModelParams::from_control(spec.j, s.gamma_x, s.gamma_y, spec.epsilon);
    const auto spectrum = diagonalize(build_hamiltonian(params));
    for (const auto& lv : spectrum.levels) s.energies.push_back(lv.energy);
    auto ex = extract_pairons(params, spectrum, spec.state_index, spec.extract);
    canonical_order(ex);
    s.dispersion = dispersion(ex.pairing);
    s.extraction = std::move(ex);
  } catch (const DegenerateStateError& e) {
    s.skipped = std::string("degenerate: ") + e.what();
  } catch (const SingularPointError& e) {
    s.skipped = std::string("singular: ") + e.what();
  } catch (const NumericalError& e) {
    s.skipped = std::string("numerical: ") + e.what();
  }
  return s;
}

void track_branches(ScanTable& table) {
  const ScanSample* prev = nullptr;
  for (auto& s : table.samples) {
    if (!s.extraction) continue;
    const auto& reps = s.extraction->pairing.representatives;
    const std::size_t n = reps.size();
    s.branch_of.assign(n, 0);
    s.branch_zero.assign(n, SpherePoint());
    if (prev == nullptr || prev->branch_of.size() != n) {
      std::iota(s.branch_of.begin(), s.branch_of.end(), 0);
      for (std::size_t a = 0; a < n; ++a) s.branch_zero[a] = reps[a];
    } else {
      // nearest predecessor in the pair-square variable
      std::vector<SpherePoint> pred(n);
      for (std::size_t a = 0; a < n; ++a)
        pred[static_cast<std::size_t>(prev->branch_of[a])] = prev->branch_zero[a].squared();
      struct Edge {
        double d;
        std::size_t b, a;
      };
      std::vector<Edge> edges;
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a) edges.push_back({chordal_distance(pred[b], reps[a].squared()), b, a});
      std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.d < y.d; });
      std::vector<char> used_b(n, 0), used_a(n, 0);
      for (const auto& e : edges) {
        if (used_b[e.b] || used_a[e.a]) continue;
        used_b[e.b] = used_a[e.a] = 1;
        s.branch_of[e.a] = static_cast<int>(e.b);
      }
      for (std::size_t a = 0; a < n; ++a) {
        SpherePoint last;
        for (std::size_t c = 0; c < n; ++c)
          if (prev->branch_of[c] == s.branch_of[a]) last = prev->branch_zero[c];
        const SpherePoint z = reps[a];
        s.branch_zero[a] = chordal_distance(z, last) <= chordal_distance(z.negated(), last) ? z : z.negated();
      }
    }
    prev = &s;
  }
}

}  // namespace

ScanTable scan_trajectory(const TrajectorySpec& spec) {
  spec.validate();
  ScanTable table;
  table.spec = spec;
  table.samples.resize(static_cast<std::size_t>(spec.steps));
  const int workers = std::min(spec.threads, spec.steps);
  if (workers <= 1) {
    for (int i = 0; i < spec.steps; ++i) table.samples[static_cast<std::size_t>(i)] = compute_sample(spec, i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < spec.steps; i = next++)
          table.samples[static_cast<std::size_t>(i)] = compute_sample(spec, i);
      });
    for (auto& th : pool) th.join();
  }
  track_branches(table);
  return table;
}

// ---------------------------------------------------------------------------

double dispersion(const ZeroPairing& pairing) {
  const auto& r = pairing.representatives;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = a + 1; b < r.size(); ++b)
      best = std::min({best, chordal_distance(r[a], r[b]), chordal_distance(r[a], r[b].negated())});
  return best;
}

double dispersion_at(const ModelParams& params, int state_index) {
  try {
    return dispersion(extract_pairons(params, state_index).pairing);
  } catch (const NumericalError&) {
    return std::numeric_limits<double>::infinity();
  }
}

namespace {

double golden_min(const DispersionFn& f, double a, double b, double& fmin) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  if (fc <= fd) {
    fmin = fc;
    return c;
  }
  fmin = fd;
  return d;
}

}  // namespace

std::vector<CollapseCandidate> detect_collapses(const ScanTable& table, double threshold,
                                                const DispersionFn& refiner, int subdivisions) {
  std::vector<double> xs, ds;
  for (const auto& s : table.samples)
    if (s.extraction && std::isfinite(s.dispersion)) {
      xs.push_back(s.gamma_x);
      ds.push_back(s.dispersion);
    }
  std::vector<CollapseCandidate> found;
  if (refiner) {
    if (subdivisions < 1) throw std::invalid_argument("detect_collapses: subdivisions must be >= 1");
    // resample every gap between valid neighbours; a cusp narrower than the
    // sample spacing need not be a local minimum of the coarse samples
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      fx.push_back(xs[i]);
      fy.push_back(ds[i]);
      if (i + 1 == xs.size()) break;
      for (int q = 1; q < subdivisions; ++q) {
        const double x = xs[i] + (xs[i + 1] - xs[i]) * q / subdivisions;
        fx.push_back(x);
        fy.push_back(refiner(x));
      }
    }
    for (std::size_t u = 1; u + 1 < fx.size(); ++u) {
      if (!(fy[u] <= fy[u - 1] && fy[u] <= fy[u + 1])) continue;
      double fm = 0.0;
      const double xm = golden_min(refiner, fx[u - 1], fx[u + 1], fm);
      if (std::min(fm, fy[u]) < threshold) found.push_back(fm <= fy[u] ? CollapseCandidate{xm, fm} : CollapseCandidate{fx[u], fy[u]});
    }
  } else {
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      if (!(ds[i] <= ds[i - 1] && ds[i] <= ds[i + 1])) continue;
      const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
      const double y0 = ds[i - 1], y1 = ds[i], y2 = ds[i + 1];
      const double den = (x0 - x1) * (x0 - x2) * (x1 - x2);
      double x = x1, y = y1;
      const double A = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / den;
      const double B = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / den;
      if (A > 0.0) {
        const double xv = -B / (2.0 * A);
        if (xv > x0 && xv < x2) {
          x = xv;
          y = std::max(0.0, y1 - A * (x1 - xv) * (x1 - xv));
        }
      }
      if (std::min(y, y1) < threshold) found.push_back({x, std::min(y, y1)});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const CollapseCandidate& a, const CollapseCandidate& b) { return a.gamma_x < b.gamma_x; });
  std::vector<CollapseCandidate> out;
  for (const auto& c : found) {
    if (!out.empty() && std::abs(c.gamma_x - out.back().gamma_x) < 1e-6) {
      if (c.dispersion < out.back().dispersion) out.back() = c;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<int> cluster_pattern(const ZeroSet& zeros, double radius) {
  const ZeroSet cl = cluster_zeros(zeros, radius);
  const std::size_t n = cl.zeros.size();
  std::vector<char> used(n, 0);
  std::vector<int> pattern;
  for (std::size_t a = 0; a < n; ++a) {
    if (used[a]) continue;
    used[a] = 1;
    const SpherePoint& p = cl.zeros[a].point;
    int mult = cl.zeros[a].multiplicity;
    if (chordal_distance(p, p.negated()) > radius) {
      std::size_t best = n;
      double bd = radius;
      for (std::size_t b = 0; b < n; ++b) {
        if (used[b]) continue;
        const double d = chordal_distance(p.negated(), cl.zeros[b].point);
        if (d <= bd) {
          bd = d;
          best = b;
        }
      }
      if (best < n) {
        used[best] = 1;
        mult += cl.zeros[best].multiplicity;
      }
    }
    pattern.push_back(mult);
  }
  std::sort(pattern.rbegin(), pattern.rend());
  return pattern;
}

std::vector<int> pairon_pattern(const std::vector<Complex>& pair_roots, double radius) {
  ZeroSet w;
  for (const auto& x : pair_roots) w.zeros.push_back({SpherePoint::finite(x), 1});
  const ZeroSet cl = cluster_zeros(w, radius);
  std::vector<int> pattern;
  for (const auto& z : cl.zeros) pattern.push_back(z.multiplicity);
  std::sort(pattern.rbegin(), pattern.rend());
  return pattern;
}

CollapseVerification verify_collapse(int j, double c, const CollapsePoint& point, int state_index,
                                     double epsilon) {
  const auto ext = extended_collapse_zeros(j, c, point.k, point.branch, state_index, epsilon);
  // each of the two +- clusters is a root of multiplicity k+1
  const double radius = extended_collapse_radius(point.k + 1);
  CollapseVerification v;
  v.expected = point.pattern(j);
  v.zero_pattern = cluster_pattern(ext.zeros, radius);
  v.pairon_pattern = pairon_pattern(ext.pair_roots, radius);
  std::vector<int> pe{point.k + 1};
  for (int i = 0; i < j - point.k - 1; ++i) pe.push_back(1);
  v.ok = v.zero_pattern == v.expected && v.pairon_pattern == pe;
  return v;
}

}  // namespace pairzero
