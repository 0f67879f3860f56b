#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "xxcrit/entanglement.hpp"
#include "xxcrit/errors.hpp"
#include "xxcrit/freefermion.hpp"
#include "xxcrit/superfluid.hpp"

using namespace xxcrit;
using namespace xxcrit::entanglement;
using std::numbers::pi;

namespace {

SpinChainSpec ring(int n, double mu = 0.0, double t = 0.0) {
  SpinChainSpec s;
  s.n_sites = n;
  s.chem_potential = mu;
  s.temperature = t;
  return s;
}

SpinChainSpec infinite(double mu = 0.0) {
  SpinChainSpec s;
  s.thermodynamic_limit = true;
  s.chem_potential = mu;
  return s;
}

CorrelatorSet inputs(double xx, double zz, double z) {
  CorrelatorSet c;
  c.xx_nn = xx;
  c.yy_nn = xx;
  c.zz_nn = zz;
  c.z_single = z;
  return c;
}

Eigen::Matrix4cd projector(const Eigen::Vector4cd& v) { return v * v.adjoint(); }

Eigen::Vector4cd bell() {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(1) = v(2) = std::sqrt(0.5);  // (|10> + |01>)/sqrt2
  return v;
}

double binary_entropy(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

}  // namespace

TEST(SingleSiteEntropy, Examples) {
  EXPECT_EQ(single_site_entropy(1.0), 0.0);
  EXPECT_EQ(single_site_entropy(-1.0), 0.0);
  EXPECT_NEAR(single_site_entropy(0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(single_site_entropy(1.0 / 3.0), std::log(3.0) - 2.0 / 3.0 * std::log(2.0), 1e-15);
  EXPECT_NEAR(nats_to_bits(std::log(2.0)), 1.0, 1e-15);
  EXPECT_THROW(single_site_entropy(1.1), ValidationError);
  EXPECT_THROW(single_site_entropy(std::nan("")), ValidationError);
}

TEST(SingleSiteEntropy, SymmetricAndMonotone) {
  testgen::Gen g(2);
  for (int i = 0; i < 200; ++i) {
    const double a = g.uniform(0.0, 1.0), b = g.uniform(0.0, 1.0);
    EXPECT_NEAR(single_site_entropy(a), single_site_entropy(-a), 1e-15);
    if (a < b) {
      EXPECT_GE(single_site_entropy(a), single_site_entropy(b));
    }
    EXPECT_NEAR(single_site_entropy(a), binary_entropy((1 + a) / 2), 1e-14);
    EXPECT_LE(single_site_entropy(a), std::log(2.0) + 1e-15);
  }
}

TEST(Concurrence, HalfFillingValue) {
  const auto c = freefermion::nn_correlators(infinite());
  EXPECT_NEAR(concurrence_nn(c), 2.0 / pi + 4.0 / (pi * pi) - 1.0, 1e-12);
  EXPECT_NEAR(concurrence_nn(inputs(2.0 / pi, -4.0 / (pi * pi), 0.0)), 0.0419, 5e-4);
}

TEST(Concurrence, ProductStates) {
  EXPECT_EQ(concurrence_nn(inputs(0.0, 1.0, 1.0)), 0.0);
  EXPECT_EQ(concurrence_u1(inputs(0.0, 1.0, 1.0)), 0.0);
  // Unpolarized product state: all correlators vanish.
  EXPECT_EQ(concurrence_u1(inputs(0.0, 0.0, 0.0)), 0.0);
}

TEST(Concurrence, InconsistentInputs) {
  EXPECT_THROW(concurrence_nn(inputs(0.5, -0.9, 0.9)), NumericError);
  EXPECT_NO_THROW(concurrence_nn(inputs(0.0, 1.0 - 1e-12, 1.0)));
}

TEST(Wootters, ReferenceStates) {
  EXPECT_NEAR(wootters_concurrence(projector(bell())), 1.0, 1e-12);
  Eigen::Vector4cd prod = Eigen::Vector4cd::Zero();
  prod(0) = 1.0;
  EXPECT_NEAR(wootters_concurrence(projector(prod)), 0.0, 1e-12);
  // Werner-type mixture p |bell><bell| + (1-p) I/4: C = max(0, (3p - 1)/2).
  for (double p : {0.1, 1.0 / 3.0, 0.5, 0.9}) {
    const Eigen::Matrix4cd rho = p * projector(bell()) + (1 - p) * Eigen::Matrix4cd::Identity() / 4.0;
    EXPECT_NEAR(wootters_concurrence(rho), std::max(0.0, (3 * p - 1) / 2), 1e-10) << p;
    EXPECT_EQ(fails_ppt(rho), p > 1.0 / 3.0 + 1e-9);
  }
  EXPECT_NEAR(partial_transpose_min_eigenvalue(projector(bell())), -0.5, 1e-12);
}

TEST(Wootters, U1FormulaMatchesReducedStates) {
  testgen::Gen g(19);
  for (int trial = 0; trial < 20; ++trial) {
    // Translation-invariant states only: bond and site averages must equal the (0, 1) values.
    auto s = g.chain(3, 9);
    s.boundary = Boundary::periodic;
    if (s.temperature == 0.0 && freefermion::ring_ground_state(s).degenerate) continue;
    const auto st = hilbert::chain_state(s);
    const auto c = hilbert::chain_correlators(st, s, 0);
    const auto rho = two_site_density(st, 0, 1);
    EXPECT_NEAR(concurrence_u1(c), wootters_concurrence(rho), 1e-9);
  }
}

TEST(Wootters, QuotedFormulaDisagreesWithReducedState) {
  // The quoted closed form keeps the full radical; at mu = 0 it underestimates
  // the reduced-state concurrence by almost an order of magnitude.
  const auto st = hilbert::chain_state(ring(10));
  const auto c = hilbert::chain_correlators(st, ring(10), 0);
  const double exact = wootters_concurrence(two_site_density(st, 0, 1));
  EXPECT_NEAR(concurrence_u1(c), exact, 1e-9);
  EXPECT_GT(exact - concurrence_nn(c), 0.2);
}

TEST(Wootters, TwoSiteGroundState) {
  SpinChainSpec s = ring(2);
  s.boundary = Boundary::open;
  const auto st = hilbert::chain_state(s);
  EXPECT_NEAR(wootters_concurrence(two_site_density(st, 0, 1)), 1.0, 1e-12);
  EXPECT_NEAR(concurrence_u1(hilbert::chain_correlators(st, s, 0)), 1.0, 1e-12);
}

TEST(Entropy, VonNeumann) {
  EXPECT_NEAR(von_neumann_entropy(Eigen::MatrixXcd::Identity(4, 4) / 4.0), std::log(4.0), 1e-14);
  EXPECT_NEAR(von_neumann_entropy(projector(bell())), 0.0, 1e-14);
  const auto st = hilbert::chain_state(ring(8));
  const int site[] = {3};
  EXPECT_NEAR(subsystem_entropy(st, site), std::log(2.0), 1e-10);
  const auto cuts = bipartition_entropies(st);
  EXPECT_EQ(cuts.size(), 7u);
  for (double e : cuts) EXPECT_GT(e, 0.1);
  const auto empty = bipartition_entropies(hilbert::chain_state(ring(8, 2.0)));
  for (double e : empty) EXPECT_NEAR(e, 0.0, 1e-12);
}

TEST(Witness, Superfluid) {
  const auto w = witness_superfluid(2.0 / pi);
  EXPECT_TRUE(w.fired);
  EXPECT_NEAR(w.margin, 2.0 / pi - 0.5, 1e-15);
  EXPECT_FALSE(witness_superfluid(0.4).fired);
  EXPECT_FALSE(witness_superfluid(0.5).fired);
  EXPECT_FALSE(witness_superfluid(0.4).caveat.empty());
  EXPECT_EQ(to_string(w.name), "fs_half");
}

TEST(Witness, HighTemperature) {
  EXPECT_TRUE(witness_high_temperature(0.0, 0.5, 1.0).fired);
  const auto w = witness_high_temperature(0.8, 0.8, 1.0);
  EXPECT_FALSE(w.fired);
  EXPECT_NEAR(w.margin, 1.0 - 1.28, 1e-15);
  EXPECT_FALSE(witness_high_temperature(0.6, 0.8, 1.0).fired);  // on the circle
}

TEST(Witness, FiredMatchesMarginSign) {
  testgen::Gen g(5);
  for (int i = 0; i < 100; ++i) {
    const auto a = witness_high_temperature(g.uniform(-2, 2), g.uniform(0, 2), g.uniform(0.5, 2));
    EXPECT_EQ(a.fired, a.margin > 0.0);
    EXPECT_TRUE(std::isfinite(a.margin));
    const auto b = witness_energy_1d(-g.uniform(0, 1.5), 1.0);
    EXPECT_EQ(b.fired, b.margin > 0.0);
    const auto c = witness_superfluid(g.uniform(0, 1));
    EXPECT_EQ(c.fired, c.margin > 0.0);
  }
}

TEST(Witness, FiringImpliesNegativePartialTranspose) {
  for (int n : {6, 8, 10}) {
    for (double mu : {0.0, 0.2, 0.5, 0.8}) {
      for (double t : {0.0, 0.3}) {
        const auto s = ring(n, mu, t);
        const auto st = hilbert::chain_state(s);
        const auto c = hilbert::chain_correlators(st, s, 0);
        const auto w = witness_superfluid(superfluid::superfluid_fraction_kinetic(c));
        const auto e = witness_energy_1d(-s.coupling_j * c.xx_nn, s.coupling_j);
        if (w.fired || e.fired) {
          EXPECT_TRUE(fails_ppt(two_site_density(st, 0, 1))) << n << " " << mu << " " << t;
        }
      }
    }
  }
}

TEST(ZeroTemperature, EntropySuperfluidCriticalityEquivalent) {
  for (double mu = 0.0; mu <= 1.6; mu += 0.04) {
    const auto c = freefermion::nn_correlators(infinite(mu));
    const bool s_pos = single_site_entropy(c.z_single) > 1e-10;
    const bool f_pos = superfluid::superfluid_fraction_kinetic(c) > 1e-10;
    EXPECT_EQ(s_pos, f_pos) << mu;
    EXPECT_EQ(f_pos, mu < 1.0) << mu;
  }
}

TEST(ExperimentEstimate, Values) {
  EXPECT_NEAR(experiment_entropy_estimate(0.0).entropy, std::log(2.0), 1e-15);
  const auto sat = experiment_entropy_estimate(1.0);
  EXPECT_TRUE(sat.saturated);
  EXPECT_EQ(sat.entropy, 0.0);
  const auto e = experiment_entropy_estimate(0.9);
  EXPECT_NEAR(e.z_expectation, 0.7128674137, 1e-9);
  EXPECT_NEAR(e.entropy, binary_entropy((1 + e.z_expectation) / 2), 1e-14);
  EXPECT_NEAR(e.entropy, 0.4113849, 1e-6);
  const auto far = experiment_entropy_estimate(6.886);
  EXPECT_TRUE(far.saturated);
  EXPECT_EQ(far.entropy, 0.0);
}
