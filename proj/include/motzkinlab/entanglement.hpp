#pragma once

#include <cstddef>
#include <vector>

#include "motzkinlab/combinatorics.hpp"

namespace motzkin {

// Half-chain Schmidt coefficients p_m = |C_{0,m}(n/2)|^2 / M_n, m = 0..n/2.
struct SchmidtSpectrum {
  unsigned n = 0;
  std::vector<CountInt> half_class_sizes;  // |C_{0,m}(n/2)|
  CountInt motzkin;                        // M_n
  std::vector<Rational> p;

  std::size_t schmidt_rank() const;
  bool sums_to_one() const;
  std::vector<double> as_doubles() const;
};

SchmidtSpectrum schmidt_spectrum(unsigned n);

struct EntropyPoint {
  unsigned n = 0;
  double entropy_bits = 0.0;
  double c_n = 0.0;  // S - log2(n)/2
  std::size_t schmidt_rank = 0;
  double max_pm_sqrt_n = 0.0;
  // sum_m |C_{0,m}(n/2)|^2 == M_n, checked in integers.
  bool normalization_exact = false;
};

// Streams the exact counts through 160-bit floating point; practical for n
// into the hundreds of thousands.
EntropyPoint entropy(unsigned n);

struct PmAsymptotics {
  unsigned n = 0;
  double max_relative_deviation = 0.0;  // over m in [sqrt(n)/2, 2 sqrt(n)]
  unsigned argmax = 0;
  double argmax_ratio = 0.0;  // argmax / sqrt(n/3)
  double max_pm_sqrt_n = 0.0;
};

// Compares p_m against the normalized profile m^2 exp(-3 m^2 / n).
PmAsymptotics pm_asymptotic_check(unsigned n);

// Eigenvalues (descending) of the half-chain reduced density matrix of the
// explicitly built Motzkin state; n even, n <= 12.
std::vector<double> reduced_density_spectrum(unsigned n);

// Max |psi - sum_m sqrt(p_m) |C_{0,m}>|C_{m,0}>| over amplitudes.
double schmidt_reconstruction_error(unsigned n);

struct TwistedState {
  unsigned n = 0;
  unsigned k = 0;              // last unflipped Schmidt index
  double overlap = 0.0;        // <M_n|phi> before projection
  double orthogonality = 0.0;  // |<M_n|phi~>| after projection
  double energy = 0.0;         // <phi~|H|phi~>
};

// Phase-flipped ground state, projected off |M_n>, energy under the full H
// restricted to the Motzkin space.
TwistedState twisted_state_energy(unsigned n);

}  // namespace motzkin
