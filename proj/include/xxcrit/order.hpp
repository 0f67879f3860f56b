#pragma once

// Decay of off-diagonal correlations: profiles, power-law and exponential
// fits, and a long-range / quasi-long-range / short-range classification.
// Also the two states that separate entanglement from off-diagonal order.

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "xxcrit/hilbert.hpp"
#include "xxcrit/spec.hpp"

namespace xxcrit::order {

enum class Classification { long_range_order, quasi_long_range, short_range };
std::string to_string(Classification c);

/// Least-squares line through log-transformed data.
struct Fit {
  double rate = 0.0;       // exponent p of c / r^p, or inverse length of c e^{-r/xi}
  double amplitude = 0.0;  // c
  double residual = 0.0;   // RMS residual in log(value)
};

struct DecayProfile {
  std::vector<std::pair<int, double>> points;  // (r, |correlator|), sorted by r
  Fit fit_poly;
  Fit fit_exp;
  Classification classification = Classification::short_range;
  /// Fewer than three non-zero values in the fit window.
  bool zero_signal = false;
};

/// Fits on r in [r_max/4, r_max]. Long-range order when the tail mean exceeds ten
/// times its standard deviation; quasi-long-range when the power law fits better
/// and p < 2; short-range otherwise.
DecayProfile classify_profile(std::vector<std::pair<int, double>> points);

/// |<s+_0 s-_r>| for r = 1..r_max, classified.
DecayProfile correlation_profile(const SpinChainSpec& spec, int r_max, Solver solver = Solver::free_fermion);

/// (|0...0> + |1...1>)/sqrt(2) on n spins, 2 <= n <= 12.
hilbert::QuantumState ghz_state(int n);

/// prod_i |alpha>_i in a Fock space truncated at n_max per site (local
/// amplitudes renormalized after truncation). Requires |alpha|^2 <= n_max/4.
hilbert::QuantumState coherent_product_state(std::complex<double> alpha, int n_sites, int n_max);

/// Poisson weight discarded per site by the truncation.
double coherent_truncation_weight(std::complex<double> alpha, int n_max);

}  // namespace xxcrit::order
