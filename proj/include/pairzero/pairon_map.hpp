// pairon_map.hpp: zeros of the Husimi amplitude <-> pairing energies.
//
// A pair of zeros +-zeta corresponds to e = t (1 - conj(zeta^2)) / (1 + conj(zeta^2)),
// zeta = infinity to e = -t and a double zero at the origin to e = +t.
#pragma once

#include "pairzero/phase_space.hpp"
#include "pairzero/spin_core.hpp"

#include <vector>

namespace pairzero {

struct PaironSet {
  int j = 0;
  int nu = 0;                  // seniority, 0 or 1
  std::vector<Complex> e;      // j - nu pairing energies
};

// Map of one pair (zeta^2 = w) to its pairing energy and back; w may be the
// point at infinity. Throws StructuralError for w = -1 (infinite energy).
Complex pairon_from_zero(const SpherePoint& zeta, double t);
// +-sqrt of the returned point are the two zeros; e = -t gives infinity.
SpherePoint pair_square_from_pairon(Complex e, double t);

struct ZeroPairing {
  int nu = 0;
  std::vector<SpherePoint> representatives;  // one per pair
  std::vector<SpherePoint> partners;         // the matching -zeta
  double max_mismatch = 0.0;                 // max chordal distance partner vs -representative
};

// Greedy matching of every zero with the nearest -zeta (chordal metric,
// tolerance tol). With odd seniority one zero at the origin and one at
// infinity stay unmatched. Throws StructuralError otherwise.
ZeroPairing pair_zeros(const ZeroSet& zeros, double tol = 1e-6);

// Pairons in the order of the pairing representatives.
PaironSet pairons_from_pairing(const ZeroPairing& pairing, int j, double t);
PaironSet zeros_to_pairons(const ZeroSet& zeros, double t, double tol = 1e-6);
ZeroSet pairons_to_zeros(const PaironSet& p, double t);

// Product-state expansion of the pair ansatz. Each factor is used in the
// projective form (e - t) A + (e + t) B, so e = +-t is allowed.
StateVector reconstruct_state(const PaironSet& p, double t);

// ||H psi - <psi|H|psi> psi|| / ||H||
double eigen_residual(const StateVector& state, const ModelParams& params);

struct ExtractOptions {
  double cluster_radius = kDefaultClusterRadius;
  double pairing_tol = 1e-6;
  RootOptions roots{};
};

struct PaironDiagnostics {
  double energy = 0.0;
  Parity parity = Parity::even;
  double t = 0.0;
  double max_root_residual = 0.0;  // max |P(z)| / (max|d| max(1,|z|)^deg)
  double pairing_mismatch = 0.0;
  bool sign_unverified = false;    // gamma_x * gamma_y < 0
  bool cross_parity_degenerate = false;
  int pole_count = 0;              // pairons equal to +-t
};

struct PaironExtraction {
  PaironSet pairons;
  ZeroPairing pairing;  // representatives aligned with pairons.e
  ZeroSet raw_zeros;
  ZeroSet zeros;        // clustered
  PaironDiagnostics diagnostics;
};

// diagonalize -> majorana_poly -> poly_roots -> cluster_zeros -> zeros_to_pairons.
// Throws SingularPointError when gamma_x or gamma_y is zero,
// DegenerateStateError for degenerate levels and std::invalid_argument for a
// bad index.
PaironExtraction extract_pairons(const ModelParams& params, int state_index,
                                 const ExtractOptions& opts = {});
// Same, reusing an already computed spectrum.
PaironExtraction extract_pairons(const ModelParams& params, const Spectrum& spectrum,
                                 int state_index, const ExtractOptions& opts = {});

}  // namespace pairzero
