// roots.hpp: polynomial roots by Aberth-Ehrlich iteration.
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pairzero {

// All roots of sum_k coeffs[k] z^k, coeffs.front() and coeffs.back() nonzero.
// Throws ConvergenceError (with the partial iterates) when the sweep cap is hit.
std::vector<std::complex<double>> aberth_roots(std::span<const std::complex<double>> coeffs,
                                               int max_sweeps = 500);

// Same in 113-bit floating point, rounded to double on return. Coefficients
// are taken as exact.
std::vector<std::complex<double>> aberth_roots_quad(std::span<const std::complex<double>> coeffs,
                                                    int max_sweeps = 2000);

// Makes a root multiset of a real polynomial exactly conjugation-symmetric:
// roots are matched with their nearest conjugate, each pair is replaced by
// (z, conj z) with z the pair average, and roots matched to themselves
// become real.
void symmetrize_conjugates(std::vector<std::complex<double>>& roots);

}  // namespace pairzero
