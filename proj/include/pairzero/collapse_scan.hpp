// collapse_scan.hpp: sweeps along lines of the (gamma_x, gamma_y) plane,
// analytic collapse and crossing points, and their numerical detection.
#pragma once

#include "pairzero/pairon_map.hpp"
#include "pairzero/spin_core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pairzero {

// ((2j-1)/(2j-1-2k))^2 for k = 0..j-1
std::vector<double> hyperbola_levels(int j);

struct CollapsePoint {
  int k = 0;
  double gamma_x = 0.0;
  int branch = 0;  // -1 for c/2 - sqrt(.), +1 for c/2 + sqrt(.)
  double level = 0.0;
  // one zero pair of multiplicity 2(k+1), j-k-1 of multiplicity 2
  std::vector<int> pattern(int j) const;
};

// Intersections of gamma_x + gamma_y = c with gamma_x gamma_y = h_k, ordered
// by k and then by gamma_x. A tangent point (zero radicand) is listed once.
std::vector<CollapsePoint> collapse_points(int j, double c);

struct CrossingPoint {
  int k = 0;
  double gamma_x = 0.0;  // on gamma_x = gamma_y
  int m = 0;             // the Dicke pair predicted to cross: m and m + 1
  int m_prime = 0;
};

std::vector<CrossingPoint> crossing_points(int j);

struct CrossingCheck {
  double gap = 0.0;        // min |E_even - E_odd| over the two sector spectra
  double pair_gap = 0.0;   // |E(m) - E(m')| of the predicted Dicke pair
  double h_norm = 0.0;
  bool ok = false;         // gap <= 1e-10 ||H||
};

CrossingCheck verify_crossing(int j, const CrossingPoint& cp, double epsilon = 1.0);

// ---------------------------------------------------------------------------

enum class LineKind { sum, diagonal };  // gamma_x + gamma_y = c, or gamma_x = gamma_y

struct TrajectorySpec {
  LineKind kind = LineKind::sum;
  double line_sum = 10.0;
  double from = 0.05;
  double to = 9.95;
  int steps = 200;
  int j = 10;
  int state_index = 0;
  double epsilon = 1.0;
  double margin = 1e-3;  // samples closer than this to gamma_x = 0 or gamma_y = 0 are skipped
  int threads = 1;
  ExtractOptions extract{};

  void validate() const;
  double gamma_y(double gamma_x) const;
  double sample(int i) const;
};

struct ScanSample {
  int index = 0;
  double gamma_x = 0.0;
  double gamma_y = 0.0;
  std::vector<double> energies;  // full spectrum
  // set when the sample was not processed, with the reason
  std::optional<std::string> skipped;
  std::optional<PaironExtraction> extraction;
  // after branch tracking: branch_of[alpha] and the oriented zero per alpha
  std::vector<int> branch_of;
  std::vector<SpherePoint> branch_zero;
  double dispersion = 0.0;
};

struct ScanTable {
  TrajectorySpec spec;
  std::vector<ScanSample> samples;  // ordered by gamma_x
};

// Pure per-sample work runs on spec.threads workers; branch tracking is a
// sequential pass over the ordered samples.
ScanTable scan_trajectory(const TrajectorySpec& spec);

// Minimum chordal distance between zeros belonging to different +- pairs;
// 0 when two pairs coincide. Infinity if fewer than two pairs.
double dispersion(const ZeroPairing& pairing);

struct CollapseCandidate {
  double gamma_x = 0.0;
  double dispersion = 0.0;
};

// Local minima of the dispersion below `threshold`. Without a refiner the
// location is refined by a parabola through three samples. With a refiner
// (dispersion as a function of gamma_x) every gap between samples is
// resampled `subdivisions` times and each fine-grid minimum is polished by
// golden-section search.
using DispersionFn = std::function<double(double)>;
std::vector<CollapseCandidate> detect_collapses(const ScanTable& table, double threshold = 5e-2,
                                                const DispersionFn& refiner = {}, int subdivisions = 10);

// Dispersion of the given state at one point (double-precision pipeline).
double dispersion_at(const ModelParams& params, int state_index);

// Cluster multiplicities with +- partner clusters merged, sorted descending.
std::vector<int> cluster_pattern(const ZeroSet& zeros, double radius);
// Multiplicities of coinciding pairons (clusters of pair squares), sorted descending.
std::vector<int> pairon_pattern(const std::vector<Complex>& pair_roots, double radius);

struct CollapseVerification {
  std::vector<int> expected;
  std::vector<int> zero_pattern;
  std::vector<int> pairon_pattern;
  bool ok = false;
};

// Quad-precision zeros of the state at the analytic point, clustered with
// extended_collapse_radius(k + 1).
CollapseVerification verify_collapse(int j, double c, const CollapsePoint& point, int state_index = 0,
                                     double epsilon = 1.0);

}  // namespace pairzero
