#include "xxcrit/order.hpp"

#include <algorithm>
#include <cmath>

#include "xxcrit/errors.hpp"
#include "xxcrit/freefermion.hpp"

namespace xxcrit::order {

namespace {

constexpr double kZeroValue = 1e-15;

Fit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = x[static_cast<std::size_t>(i)];
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  Fit f;
  f.amplitude = std::exp(coef(0));
  f.rate = -coef(1);
  f.residual = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(n));
  return f;
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::long_range_order: return "long_range_order";
    case Classification::quasi_long_range: return "quasi_long_range";
    case Classification::short_range: return "short_range";
  }
  return "unknown";
}

DecayProfile classify_profile(std::vector<std::pair<int, double>> points) {
  if (points.empty()) throw ValidationError("empty correlation profile");
  std::sort(points.begin(), points.end());
  DecayProfile out;
  out.points = points;
  const int r_max = points.back().first;
  std::vector<double> tail, log_r, r_lin, log_v;
  for (auto [r, v] : points) {
    if (r < 1) throw ValidationError("profile distances must be >= 1");
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("profile values must be finite magnitudes");
    if (4 * r < r_max) continue;
    tail.push_back(v);
    if (v > kZeroValue) {
      log_r.push_back(std::log(static_cast<double>(r)));
      r_lin.push_back(static_cast<double>(r));
      log_v.push_back(std::log(v));
    }
  }
  if (log_v.size() < 3) {
    out.zero_signal = true;
    out.classification = Classification::short_range;
    return out;
  }
  out.fit_poly = fit_line(log_r, log_v);
  out.fit_exp = fit_line(r_lin, log_v);
  double mean = 0.0;
  for (double v : tail) mean += v;
  mean /= static_cast<double>(tail.size());
  double var = 0.0;
  for (double v : tail) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(tail.size()));
  if (mean > 10.0 * sd)
    out.classification = Classification::long_range_order;
  else if (out.fit_poly.residual < out.fit_exp.residual && out.fit_poly.rate < 2.0)
    out.classification = Classification::quasi_long_range;
  else
    out.classification = Classification::short_range;
  return out;
}

DecayProfile correlation_profile(const SpinChainSpec& spec, int r_max, Solver solver) {
  spec.validate();
  if (r_max < 8) throw ValidationError("profile fits need r_max >= 8");
  if (!spec.thermodynamic_limit && r_max >= spec.n_sites) throw ValidationError("r_max must be < n_sites");
  std::vector<std::pair<int, double>> points;
  if (solver == Solver::exact_diag) {
    if (spec.thermodynamic_limit) throw ValidationError("exact diagonalization needs a finite chain");
    const hilbert::QuantumState state = hilbert::chain_state(spec);
    for (int r = 1; r <= r_max; ++r)
      points.emplace_back(r, std::abs(hilbert::expectation_value(state, hilbert::sigma_plus(0) * hilbert::sigma_minus(r))));
  } else {
    if (spec.thermodynamic_limit && r_max > freefermion::kMaxStringDistance)
      throw ValidationError("r_max exceeds the configured window of " + std::to_string(freefermion::kMaxStringDistance));
    const freefermion::ChainState state(spec, r_max);
    for (int r = 1; r <= r_max; ++r) points.emplace_back(r, std::abs(state.hopping(0, r)));
  }
  return classify_profile(std::move(points));
}

hilbert::QuantumState ghz_state(int n) {
  if (n < 2 || n > 12) throw ValidationError("GHZ state needs 2 <= n <= 12");
  auto basis = hilbert::Basis::spins(n);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  const hilbert::Code all = (hilbert::Code{1} << n) - 1;
  amp(static_cast<Eigen::Index>(*basis->find(0))) = std::sqrt(0.5);
  amp(static_cast<Eigen::Index>(*basis->find(all))) = std::sqrt(0.5);
  return hilbert::QuantumState::pure(basis, amp);
}

namespace {

Eigen::VectorXcd coherent_amplitudes(std::complex<double> alpha, int n_max) {
  Eigen::VectorXcd c(n_max + 1);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int k = 1; k <= n_max; ++k) c(k) = c(k - 1) * alpha / std::sqrt(static_cast<double>(k));
  return c;
}

}  // namespace

double coherent_truncation_weight(std::complex<double> alpha, int n_max) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  return std::max(0.0, 1.0 - coherent_amplitudes(alpha, n_max).squaredNorm());
}

hilbert::QuantumState coherent_product_state(std::complex<double> alpha, int n_sites, int n_max) {
  if (n_sites < 1) throw ValidationError("n_sites must be >= 1");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  if (!(std::norm(alpha) <= 0.25 * n_max))
    throw ValidationError("|alpha|^2 must be <= n_max/4 for an accurate truncation");
  Eigen::VectorXcd local = coherent_amplitudes(alpha, n_max);
  local /= local.norm();
  auto basis = hilbert::Basis::bosons(n_sites, n_max);
  Eigen::VectorXcd amp(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t idx = 0; idx < basis->size(); ++idx) {
    std::complex<double> a = 1.0;
    for (int s = 0; s < n_sites; ++s) a *= local(basis->occupation(basis->code(idx), s));
    amp(static_cast<Eigen::Index>(idx)) = a;
  }
  return hilbert::QuantumState::pure(basis, amp);
}

}  // namespace xxcrit::order
