// extended.hpp: 113-bit recomputation of one LMG eigenstate and its zeros.
//
// Double precision resolves a root of multiplicity m only to about
// u^{1/m}; near collapse points the clusters therefore need more digits.
#pragma once

#include "pairzero/phase_space.hpp"
#include "pairzero/spin_core.hpp"

#include <vector>

namespace pairzero {

struct ExtendedZeros {
  double energy = 0.0;
  Parity parity = Parity::even;
  ZeroSet zeros;                       // raw, one entry per finite root
  std::vector<Complex> pair_roots;     // roots w = zeta^2 of the pair polynomial
};

// Eigenvalue by Sturm bisection and eigenvector by twisted recurrence in
// quad precision, then roots of the pair polynomial by Aberth iteration in
// quad precision. state_index counts all levels in ascending order, as in
// diagonalize().
ExtendedZeros extended_eigenstate_zeros(const ModelParams& params, int state_index);

// Same at the intersection of gamma_x + gamma_y = c with the k-th collapse
// hyperbola (branch -1 or +1), the control values themselves computed in
// quad precision so that the clusters are not split by rounding of gamma_x.
ExtendedZeros extended_collapse_zeros(int j, double c, int k, int branch, int state_index = 0,
                                      double epsilon = 1.0);

// 10 * (1e-24)^{1/m}: the cluster radius law of collapse_radius() with
// 1e-12 squared, matching the doubled number of significant digits.
double extended_collapse_radius(int multiplicity);

}  // namespace pairzero
