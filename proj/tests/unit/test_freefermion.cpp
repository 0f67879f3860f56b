#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "xxcrit/errors.hpp"
#include "xxcrit/freefermion.hpp"
#include "xxcrit/hilbert.hpp"

using namespace xxcrit;
namespace ff = xxcrit::freefermion;
using std::numbers::pi;

namespace {

SpinChainSpec infinite(double mu = 0.0, double t = 0.0) {
  SpinChainSpec s;
  s.thermodynamic_limit = true;
  s.chem_potential = mu;
  s.temperature = t;
  return s;
}

SpinChainSpec ring(int n, double mu = 0.0, double t = 0.0, Boundary b = Boundary::periodic) {
  SpinChainSpec s;
  s.n_sites = n;
  s.chem_potential = mu;
  s.temperature = t;
  s.boundary = b;
  return s;
}

// Periodic trapezoid rule on a smooth band integrand: (1/2pi) int f(k) dk.
template <class F>
double zone_average(F f, int points = 20000) {
  double total = 0.0;
  for (int i = 0; i < points; ++i) total += f(-pi + 2.0 * pi * (i + 0.5) / points);
  return total / points;
}

double fermi(double e, double t) { return 0.5 * (1.0 - std::tanh(0.5 * e / t)); }

}  // namespace

TEST(Dispersion, Examples) {
  auto s = ring(8);
  EXPECT_DOUBLE_EQ(ff::dispersion(0.0, s), -2.0);
  EXPECT_NEAR(ff::dispersion(pi / 2, s), 0.0, 1e-15);
  EXPECT_NEAR(ff::dispersion(-pi / 2, s), 0.0, 1e-15);
  s.chem_potential = 1.0;
  EXPECT_DOUBLE_EQ(ff::dispersion(0.0, s), 0.0);
  s.twist_per_bond = 0.3;
  EXPECT_DOUBLE_EQ(ff::dispersion(-0.3, s), 0.0);
}

TEST(ModeSpectrum, Invariants) {
  testgen::Gen g(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = g.chain(2, 12);
    s.boundary = Boundary::periodic;
    for (auto fb : {ff::FermionBoundary::periodic, ff::FermionBoundary::antiperiodic}) {
      const auto m = ff::mode_spectrum(s, fb);
      ASSERT_EQ(m.momenta.size(), static_cast<std::size_t>(s.n_sites));
      for (std::size_t i = 0; i < m.momenta.size(); ++i) {
        EXPECT_GT(m.momenta[i], -pi);
        EXPECT_LE(m.momenta[i], pi + 1e-15);
        EXPECT_NEAR(m.energies[i], ff::dispersion(m.momenta[i], s), 1e-12);
        EXPECT_GE(m.fillings[i], 0.0);
        EXPECT_LE(m.fillings[i], 1.0);
        const double steps = m.momenta[i] * s.n_sites / (2.0 * pi);
        const double offset = fb == ff::FermionBoundary::periodic ? 0.0 : 0.5;
        EXPECT_NEAR(steps - offset, std::round(steps - offset), 1e-9);
        if (i > 0) {
          EXPECT_LE(m.energies[i - 1], m.energies[i]);
        }
      }
      const auto h = ff::hopping_matrix(s, fb);
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
      for (int i = 0; i < s.n_sites; ++i) EXPECT_NEAR(ev(i), m.energies[i], 1e-10);
    }
  }
}

TEST(Magnetization, Examples) {
  EXPECT_NEAR(ff::magnetization(0.0, 0.0).value, 0.0, 1e-15);
  EXPECT_NEAR(ff::magnetization(0.5, 0.0).value, 1.0 / 3.0, 1e-14);
  for (double mu : {1.0, 1.2, 5.0}) {
    const auto m = ff::magnetization(mu, 0.0);
    EXPECT_EQ(m.value, 1.0);
    EXPECT_TRUE(m.saturated);
  }
  EXPECT_FALSE(ff::magnetization(0.99, 0.0).saturated);
  EXPECT_NEAR(ff::magnetization(-0.5, 0.0).value, -1.0 / 3.0, 1e-14);
}

TEST(Magnetization, FiniteTemperatureMatchesBandAverage) {
  for (double mu : {0.0, 0.4, 1.3}) {
    for (double t : {0.2, 0.5, 2.0}) {
      const double rho = zone_average([&](double k) { return fermi(-2.0 * std::cos(k) + 2.0 * mu, t); });
      EXPECT_NEAR(ff::magnetization(mu, t).value, 1.0 - 2.0 * rho, 1e-10) << mu << " " << t;
    }
  }
}

TEST(Magnetization, MonotoneInMu) {
  for (double t : {0.0, 0.1, 1.0}) {
    double last = -1.0;
    for (double mu = -2.0; mu <= 2.0; mu += 0.05) {
      const double m = ff::magnetization(mu, t).value;
      EXPECT_GE(m, last - 1e-14);
      EXPECT_LE(std::abs(m), 1.0);
      last = m;
    }
  }
}

TEST(FermionCorrelation, HalfFillingClosedForm) {
  const auto g = ff::fermion_correlation_matrix(infinite(), 20);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_NEAR(g[0].real(), 0.5, 1e-14);
  EXPECT_NEAR(g[1].real(), 1.0 / pi, 1e-14);
  EXPECT_NEAR(std::abs(g[2]), 0.0, 1e-14);
  for (int d = 1; d <= 20; ++d) {
    EXPECT_NEAR(g[d].real(), std::sin(pi * d / 2) / (pi * d), 1e-14);
    EXPECT_NEAR(g[d].imag(), 0.0, 1e-14);
  }
}

TEST(FermionCorrelation, EmptyBand) {
  for (double mu : {1.0, 1.7}) {
    const auto g = ff::fermion_correlation_matrix(infinite(mu), 6);
    for (const auto& v : g) EXPECT_EQ(std::abs(v), 0.0);
  }
}

TEST(FermionCorrelation, ThermalMatchesBandAverage) {
  for (double mu : {0.0, 0.6}) {
    for (double t : {0.3, 1.0}) {
      const auto g = ff::fermion_correlation_matrix(infinite(mu, t), 5);
      for (int d = 0; d <= 5; ++d) {
        const double oracle =
            zone_average([&](double k) { return std::cos(k * d) * fermi(-2.0 * std::cos(k) + 2.0 * mu, t); });
        EXPECT_NEAR(g[d].real(), oracle, 1e-10) << mu << " " << t << " " << d;
      }
    }
  }
}

TEST(FermionCorrelation, FiniteRingMatchesStringOperator) {
  // <c^dagger_0 c_d> = <s+_0 prod_{0<l<d} sz_l s-_d> in the spin language.
  for (double t : {0.0, 0.5}) {
    const auto spec = ring(10, 0.3, t);
    if (t == 0.0) {
      ASSERT_FALSE(ff::ring_ground_state(spec).degenerate);
    }
    const auto st = hilbert::chain_state(spec);
    const auto g = ff::fermion_correlation_matrix(spec, 5);
    for (int d = 1; d <= 5; ++d) {
      hilbert::Operator op = hilbert::sigma_plus(0);
      for (int l = 1; l < d; ++l) op = op * hilbert::sigma_z(l);
      op = op * hilbert::sigma_minus(d);
      const auto exact = hilbert::expectation_value(st, op);
      EXPECT_NEAR(std::abs(g[d] - exact), 0.0, 1e-10) << t << " " << d;
    }
  }
}

TEST(NNCorrelators, HalfFillingValues) {
  const auto c = ff::nn_correlators(infinite());
  EXPECT_NEAR(c.xx_nn, 2.0 / pi, 1e-12);
  EXPECT_NEAR(c.yy_nn, 2.0 / pi, 1e-12);
  EXPECT_NEAR(c.zz_nn, -4.0 / (pi * pi), 1e-12);
  EXPECT_NEAR(c.z_single, 0.0, 1e-14);
  EXPECT_EQ(c.source, Solver::free_fermion);
}

TEST(NNCorrelators, SaturatedProductState) {
  for (double mu : {1.0, 1.5}) {
    const auto c = ff::nn_correlators(infinite(mu));
    EXPECT_EQ(c.xx_nn, 0.0);
    EXPECT_EQ(c.zz_nn, 1.0);
    EXPECT_EQ(c.z_single, 1.0);
  }
}

TEST(NNCorrelators, ContinuousAtSaturation) {
  const auto below = ff::nn_correlators(infinite(1.0 - 1e-8));
  EXPECT_LT(below.xx_nn, 1e-3);
  EXPECT_NEAR(below.zz_nn, 1.0, 1e-3);
  EXPECT_NEAR(below.z_single, 1.0, 1e-3);
}

TEST(NNCorrelators, WickAndParticleHole) {
  testgen::Gen gen(4);
  for (int trial = 0; trial < 15; ++trial) {
    const double mu = gen.uniform(-1.4, 1.4);
    const double t = gen.coin() ? 0.0 : gen.uniform(0.05, 2.0);
    const auto g = ff::fermion_correlation_matrix(infinite(mu, t), 1);
    const auto c = ff::nn_correlators(infinite(mu, t));
    EXPECT_NEAR(c.xx_nn, 2.0 * g[1].real(), 1e-12);
    EXPECT_NEAR(c.z_single, 1.0 - 2.0 * g[0].real(), 1e-12);
    EXPECT_NEAR(c.zz_nn, c.z_single * c.z_single - 4.0 * std::norm(g[1]), 1e-12);
    const auto flipped = ff::nn_correlators(infinite(-mu, t));
    EXPECT_NEAR(flipped.z_single, -c.z_single, 1e-10);
    EXPECT_NEAR(flipped.xx_nn, c.xx_nn, 1e-10);
    EXPECT_NEAR(flipped.zz_nn, c.zz_nn, 1e-10);
  }
}

TEST(NNCorrelators, EnergyIdentityOnRings) {
  // Energy per site u = -J xx_nn - mu <sz> on a periodic ring.
  testgen::Gen gen(8);
  for (int trial = 0; trial < 15; ++trial) {
    auto s = gen.chain(3, 40);
    s.boundary = Boundary::periodic;
    s.temperature = 0.0;
    const auto c = ff::nn_correlators(s);
    const double u = ff::ring_ground_state(s).energy / s.n_sites;
    EXPECT_NEAR(u, -s.coupling_j * c.xx_nn - s.chem_potential * c.z_single, 1e-10);
  }
}

TEST(NNCorrelators, MatchExactDiagonalization) {
  const auto spec = ring(10, 0.5, 0.2);
  const auto f = ff::nn_correlators(spec);
  const auto e = hilbert::exact_correlators(spec);
  EXPECT_NEAR(f.xx_nn, e.xx_nn, 1e-9);
  EXPECT_NEAR(f.yy_nn, e.yy_nn, 1e-9);
  EXPECT_NEAR(f.zz_nn, e.zz_nn, 1e-9);
  EXPECT_NEAR(f.z_single, e.z_single, 1e-9);
}

TEST(NNCorrelators, RandomChainsMatchExactDiagonalization) {
  testgen::Gen gen(13);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = gen.chain(2, 9);
    if (s.temperature == 0.0 && s.boundary == Boundary::periodic && ff::ring_ground_state(s).degenerate) continue;
    const auto f = ff::nn_correlators(s, s.n_sites - 1);
    const auto e = hilbert::exact_correlators(s, s.n_sites - 1);
    EXPECT_NEAR(f.xx_nn, e.xx_nn, 1e-9);
    EXPECT_NEAR(f.zz_nn, e.zz_nn, 1e-9);
    EXPECT_NEAR(f.z_single, e.z_single, 1e-9);
    ASSERT_EQ(f.transverse_profile.size(), e.transverse_profile.size());
    for (std::size_t i = 0; i < f.transverse_profile.size(); ++i)
      EXPECT_NEAR(f.transverse_profile[i].second, e.transverse_profile[i].second, 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(TransverseCorrelator, Examples) {
  EXPECT_NEAR(ff::transverse_correlator(1, infinite()), 1.0 / pi, 1e-14);
  EXPECT_NEAR(ff::transverse_correlator(2, infinite()), 2.0 / (pi * pi), 1e-13);
  for (int r : {1, 3, 10}) EXPECT_EQ(ff::transverse_correlator(r, infinite(1.2)), 0.0);
}

TEST(TransverseCorrelator, AsymptoticAmplitude) {
  // <sx_0 sx_r> -> e^{1/2} 2^{2/3} A^{-6} r^{-1/2} (1 - 1/(8 r^2)), A the Glaisher constant.
  const double glaisher = 1.28242712910062263687;
  const double amplitude = std::exp(0.5) * std::cbrt(4.0) / std::pow(glaisher, 6);
  for (int r : {32, 64, 128}) {
    const double xx = 2.0 * ff::transverse_correlator(r, infinite());
    EXPECT_NEAR(xx * std::sqrt(r) / amplitude, 1.0 - 1.0 / (8.0 * r * r), 5e-7) << r;
  }
}

TEST(TransverseCorrelator, LogLogSlope) {
  const auto p = ff::transverse_profile(infinite(), 64);
  const double slope = std::log(p[63] / p[7]) / std::log(64.0 / 8.0);
  EXPECT_NEAR(slope, -0.5, 0.01);
}

TEST(TransverseCorrelator, MatchesExactDiagonalization) {
  testgen::Gen gen(17);
  for (int trial = 0; trial < 12; ++trial) {
    auto s = gen.chain(6, 12);
    s.temperature = trial % 2 == 0 ? 0.0 : gen.uniform(0.2, 1.0);
    if (s.n_sites > 10 && s.temperature > 0.0) s.n_sites = 10;
    if (s.temperature == 0.0 && s.boundary == Boundary::periodic && ff::ring_ground_state(s).degenerate) continue;
    const auto st = hilbert::chain_state(s);
    for (int r = 1; r <= 5; ++r) {
      const double exact = hilbert::expectation_value(st, hilbert::sigma_plus(0) * hilbert::sigma_minus(r)).real();
      EXPECT_NEAR(ff::transverse_correlator(r, s), exact, 1e-9) << s.n_sites << " r=" << r;
    }
  }
}

TEST(TransverseCorrelator, WindowValidation) {
  EXPECT_THROW(ff::transverse_correlator(0, infinite()), ValidationError);
  EXPECT_THROW(ff::transverse_correlator(ff::kMaxStringDistance + 1, infinite()), ValidationError);
  EXPECT_THROW(ff::transverse_correlator(8, ring(8)), ValidationError);
}

TEST(RingGroundState, ParitySectorSelection) {
  // Even particle number lives in the antiperiodic sector, odd in the periodic one.
  for (int n : {4, 6, 7, 10}) {
    for (double mu : {-0.7, -0.2, 0.1, 0.45}) {
      const auto g = ff::ring_ground_state(ring(n, mu));
      const bool even = g.particles % 2 == 0;
      EXPECT_EQ(g.boundary, even ? ff::FermionBoundary::antiperiodic : ff::FermionBoundary::periodic);
      const double exact = hilbert::diagonalize(hilbert::build_xx_hamiltonian(ring(n, mu))).min_energy();
      EXPECT_NEAR(g.energy, exact, 1e-10) << n << " " << mu;
    }
  }
}

TEST(BondHoppings, TranslationInvariantOnRings) {
  const auto h = ff::bond_hoppings(ring(9, 0.2, 0.4));
  ASSERT_EQ(h.size(), 9u);
  for (const auto& v : h) EXPECT_NEAR(std::abs(v - h[0]), 0.0, 1e-12);
  const auto open = ff::bond_hoppings(ring(9, 0.2, 0.4, Boundary::open));
  EXPECT_EQ(open.size(), 8u);
}

TEST(TwistEnergy, SmallTwistCurvature) {
  for (double theta : {1e-3, 2e-3}) {
    const double e = ff::twist_energy_density(infinite(), theta);
    EXPECT_NEAR(e / (theta * theta / pi), 1.0, 1e-5);
  }
  EXPECT_EQ(ff::twist_energy_density(infinite(1.5), 1e-3), 0.0);
}
