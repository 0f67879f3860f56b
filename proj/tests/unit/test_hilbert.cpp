#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "xxcrit/errors.hpp"
#include "xxcrit/hilbert.hpp"

using namespace xxcrit;
using namespace xxcrit::hilbert;

namespace {

SpinChainSpec chain(int n, double mu = 0.0, Boundary b = Boundary::periodic, double t = 0.0) {
  SpinChainSpec s;
  s.n_sites = n;
  s.chem_potential = mu;
  s.boundary = b;
  s.temperature = t;
  return s;
}

/// sum_b <s+_i s-_j> / n_bonds on an n-site ring.
double bond_hopping(const QuantumState& st, int n, Boundary b) {
  const auto bonds = chain_bonds(n, b);
  Operator o;
  for (auto [i, j] : bonds) o += cplx(1.0 / bonds.size()) * (sigma_plus(i) * sigma_minus(j));
  return expectation(st, o);
}

}  // namespace

TEST(Basis, OrderingAndLookup) {
  auto b = Basis::spins(3);
  ASSERT_EQ(b->size(), 8u);
  ASSERT_EQ(b->sectors().size(), 4u);
  EXPECT_EQ(b->sectors()[1].particles, 1);
  EXPECT_EQ(b->sectors()[1].size, 3u);
  for (std::size_t i = 0; i < b->size(); ++i) EXPECT_EQ(*b->find(b->code(i)), i);
  EXPECT_EQ(b->label(*b->find(0b011)), "110");
  auto bosons = Basis::bosons(3, 2, 2);
  EXPECT_EQ(bosons->size(), 6u);  // (2,0,0) x3 and (1,1,0) x3
}

TEST(Basis, DimensionGuards) {
  EXPECT_THROW(Basis::spins(15), ResourceError);
  EXPECT_THROW(Basis::bosons(11, 3), ResourceError);  // 4^11 > 2^20
  BoseHubbardSpec b;
  b.n_sites = 21;
  EXPECT_THROW(build_bose_hubbard(b), ResourceError);
}

TEST(Operators, PauliAlgebra) {
  auto b = Basis::spins(1);
  auto empty = QuantumState::pure(b, Eigen::Vector2cd(1.0, 0.0));
  EXPECT_DOUBLE_EQ(expectation(empty, sigma_z(0)), 1.0);
  EXPECT_DOUBLE_EQ(expectation(empty, number(0)), 0.0);
  auto plus = QuantumState::pure(b, Eigen::Vector2cd(std::sqrt(0.5), std::sqrt(0.5)));
  EXPECT_NEAR(expectation(plus, sigma_x(0)), 1.0, 1e-15);
  EXPECT_NEAR(expectation(plus, sigma_y(0)), 0.0, 1e-15);
  auto plus_y = QuantumState::pure(b, Eigen::Vector2cd(std::sqrt(0.5), cplx(0.0, std::sqrt(0.5))));
  // sy = i(b - b^dagger) with |0> as sz = +1: (|0> + i|1>)/sqrt2 has <sy> = -1.
  EXPECT_NEAR(expectation(plus_y, sigma_y(0)), -1.0, 1e-15);
  EXPECT_THROW(expectation(plus_y, sigma_plus(0)), ValidationError);  // not Hermitian
  EXPECT_THROW(expectation(plus, sigma_z(3)), ValidationError);
}

TEST(BuildXX, TwoSiteSpectrumOpen) {
  const auto h = build_xx_hamiltonian(chain(2, 0.0, Boundary::open));
  auto e = diagonalize(h).energies();
  const std::vector<double> expected{-1.0, 0.0, 0.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e[i], expected[i], 1e-14);
}

TEST(BuildXX, ChemicalPotentialDiagonal) {
  const auto h = build_xx_hamiltonian(chain(2, 1.0, Boundary::open));
  const auto m = h.entries();
  const auto labels = h.basis_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double expected = labels[i] == "00" ? -2.0 : labels[i] == "11" ? 2.0 : 0.0;
    EXPECT_DOUBLE_EQ(m(i, i).real(), expected) << labels[i];
  }
}

TEST(BuildXX, SaturatedGroundStateIsEmpty) {
  const auto spec = chain(10, 1.5);
  const auto gs = ground_state(build_xx_hamiltonian(spec));
  const auto& b = gs.basis();
  const auto amp = gs.amplitudes();
  EXPECT_NEAR(amp(static_cast<Eigen::Index>(*b.find(0))).real(), 1.0, 1e-12);
  Operator z;
  for (int i = 0; i < 10; ++i) z += cplx(0.1) * sigma_z(i);
  EXPECT_NEAR(expectation(gs, z), 1.0, 1e-12);
  EXPECT_NEAR(*gs.energy, -15.0, 1e-12);
}

TEST(BuildXX, HermitianAndNumberConserving) {
  testgen::Gen g(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto s = g.chain(2, 9);
    s.twist_per_bond = g.uniform(-3.0, 3.0);
    const auto h = build_twisted_hamiltonian(s);
    EXPECT_LE(h.hermiticity_defect(), 1e-12);
    const Eigen::MatrixXcd m = h.entries();
    Eigen::VectorXd sz(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double total = 0.0;
      for (int site = 0; site < s.n_sites; ++site) total += 1 - 2 * h.basis().occupation(h.basis().code(i), site);
      sz(i) = total;
    }
    const Eigen::MatrixXcd comm = m * sz.asDiagonal() - sz.asDiagonal() * m;
    EXPECT_EQ(comm.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(BuildTwisted, ZeroTwistIsBitIdentical) {
  auto s = chain(6, 0.3);
  const auto a = build_xx_hamiltonian(s).entries();
  s.twist_per_bond = 0.0;
  const auto b = build_twisted_hamiltonian(s).entries();
  EXPECT_TRUE((a.array() == b.array()).all());
}

TEST(BuildTwisted, OpenChainIsGaugeInvariant) {
  for (int n : {2, 5, 7}) {
    auto s = chain(n, 0.2, Boundary::open);
    const auto ref = diagonalize(build_twisted_hamiltonian(s)).energies();
    for (double theta : {0.3, 1.0}) {
      s.twist_per_bond = theta;
      const auto e = diagonalize(build_twisted_hamiltonian(s)).energies();
      for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(e[i], ref[i], 1e-10);
    }
  }
}

TEST(BuildTwisted, SpectrumPeriodicInTwist) {
  auto s = chain(5, 0.1);
  s.twist_per_bond = 0.4;
  const auto a = diagonalize(build_twisted_hamiltonian(s)).energies();
  s.twist_per_bond = 0.4 + 2.0 * std::numbers::pi;
  const auto b = diagonalize(build_twisted_hamiltonian(s)).energies();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
}

TEST(BuildTwisted, EnergyCostOfSmallTwist) {
  // Eight-site ring at half filling: four fermions on antiperiodic momenta (2m+1) pi / 8.
  const double theta = 1e-3;
  double expected = 0.0;
  for (int m : {-2, -1, 0, 1}) {
    const double k = (2 * m + 1) * std::numbers::pi / 8;
    expected += -2.0 * std::cos(k + theta) + 2.0 * std::cos(k);
  }
  auto s = chain(8);
  const double e0 = diagonalize(build_xx_hamiltonian(s)).min_energy();
  s.twist_per_bond = theta;
  const double e1 = diagonalize(build_twisted_hamiltonian(s)).min_energy();
  EXPECT_GT(e1 - e0, 0.0);
  EXPECT_NEAR((e1 - e0) / expected, 1.0, 1e-7);
  EXPECT_NEAR((e1 - e0) / (8.0 / std::numbers::pi * theta * theta), 1.0, 0.05);
}

TEST(BoseHubbard, HardCoreMatchesXX) {
  for (int n : {2, 4, 6}) {
    BoseHubbardSpec b;
    b.n_sites = n;
    b.n_max = 1;
    b.onsite_u = 7.0;
    const auto bh = diagonalize(build_bose_hubbard(b)).energies();
    const auto xx = diagonalize(build_xx_hamiltonian(chain(n))).energies();
    ASSERT_EQ(bh.size(), xx.size());
    for (std::size_t i = 0; i < bh.size(); ++i) EXPECT_NEAR(bh[i], xx[i], 1e-10);
  }
}

TEST(BoseHubbard, ChemicalPotentialMapsAffinely) {
  // -mu sum sz = -mu N + 2 mu N_b: per particle-number sector the XX spectrum is shifted.
  const int n = 4;
  const double mu = 0.37;
  const auto xx = diagonalize(build_xx_hamiltonian(chain(n, mu)));
  for (int p = 0; p <= n; ++p) {
    BoseHubbardSpec b;
    b.n_sites = n;
    b.n_particles = p;
    const auto bh = diagonalize(build_bose_hubbard(b)).energies();
    std::vector<double> sector;
    for (const auto& sec : xx.basis->sectors()) {
      if (sec.particles != p) continue;
      for (const auto& blk : xx.blocks)
        if (blk.offset == sec.offset)
          for (Eigen::Index k = 0; k < blk.energies.size(); ++k) sector.push_back(blk.energies(k));
    }
    std::sort(sector.begin(), sector.end());
    ASSERT_EQ(sector.size(), bh.size());
    for (std::size_t i = 0; i < bh.size(); ++i) EXPECT_NEAR(sector[i], bh[i] - mu * n + 2.0 * mu * p, 1e-10);
  }
}

TEST(BoseHubbard, AtomicLimit) {
  BoseHubbardSpec b;
  b.n_sites = 3;
  b.n_max = 2;
  b.coupling_j = 0.0;
  b.onsite_u = 3.0;
  const auto h = build_bose_hubbard(b);
  std::vector<double> expected;
  for (std::size_t i = 0; i < h.basis().size(); ++i) {
    double e = 0.0;
    for (int s = 0; s < 3; ++s) {
      const int k = h.basis().occupation(h.basis().code(i), s);
      e += 1.5 * k * (k - 1);
    }
    expected.push_back(e);
  }
  std::sort(expected.begin(), expected.end());
  const auto e = diagonalize(h).energies();
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(e[i], expected[i], 1e-12);
}

TEST(BoseHubbard, LowDensityApproachesHardCore) {
  BoseHubbardSpec soft;
  soft.n_sites = 8;
  soft.n_max = 3;
  soft.onsite_u = 50.0;
  soft.n_particles = 2;
  BoseHubbardSpec hard = soft;
  hard.n_max = 1;
  const double a = bond_hopping(ground_state(build_bose_hubbard(soft)), 8, Boundary::periodic);
  const double b = bond_hopping(ground_state(build_bose_hubbard(hard)), 8, Boundary::periodic);
  EXPECT_NEAR(a / b, 1.0, 0.02);
  EXPECT_GT(a, b);  // virtual double occupancy only adds kinetic energy gain
}

TEST(BoseHubbard, ConservesParticles) {
  BoseHubbardSpec b;
  b.n_sites = 3;
  b.n_max = 3;
  b.onsite_u = 2.0;
  EXPECT_TRUE(bose_hubbard_operator(b).conserves_particles());
  EXPECT_GT(build_bose_hubbard(b).blocks().size(), 1u);
  EXPECT_LE(build_bose_hubbard(b).hermiticity_defect(), 1e-12);
}

TEST(GroundState, DiagonalMatrix) {
  // f(n) = 3 - 3.5 n + 1.5 n^2 gives diag(3, 1, 2) on one site with n_max = 2.
  auto basis = Basis::bosons(1, 2);
  const Operator op = Operator::identity(3.0) + cplx(-3.5) * number(0) + cplx(1.5) * (number(0) * number(0));
  const auto gs = ground_state(HamiltonianMatrix::from_operator(op, basis));
  const auto amp = gs.amplitudes();
  EXPECT_NEAR(std::abs(amp(1)), 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(amp(1).imag(), 0.0);
  EXPECT_NEAR(*gs.energy, 1.0, 1e-14);
}

TEST(GroundState, TwoSiteEnergy) {
  const auto gs = ground_state(build_xx_hamiltonian(chain(2, 0.0, Boundary::open)));
  EXPECT_NEAR(*gs.energy, -1.0, 1e-14);
  EXPECT_EQ(gs.degeneracy, 1);
  Operator xx = sigma_x(0) * sigma_x(1);
  EXPECT_NEAR(expectation(gs, xx), 1.0, 1e-14);
  EXPECT_NEAR(expectation(gs, Operator::identity()), 1.0, 1e-14);
}

TEST(GroundState, DeterministicAndPhaseCanonical) {
  const auto s = chain(5);  // odd ring at half filling: degenerate
  const auto a = ground_state(build_xx_hamiltonian(s));
  const auto b = ground_state(build_xx_hamiltonian(s));
  EXPECT_GT(a.degeneracy, 1);
  EXPECT_TRUE((a.amplitudes().array() == b.amplitudes().array()).all());
  const auto amp = a.amplitudes();
  Eigen::Index idx;
  amp.cwiseAbs().maxCoeff(&idx);
  EXPECT_NEAR(amp(idx).imag(), 0.0, 1e-14);
  EXPECT_GT(amp(idx).real(), 0.0);
}

TEST(ThermalState, TwoSiteClosedForm) {
  const auto h = build_xx_hamiltonian(chain(2, 0.0, Boundary::open));
  const double beta = 1.0;
  const auto st = thermal_state(h, beta);
  const double z = 2.0 + 2.0 * std::cosh(beta);
  EXPECT_NEAR(expectation(st, h), -2.0 * std::sinh(beta) / z, 1e-14);
  double total = 0.0;
  for (const auto& c : st.components()) total += c.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(ThermalState, Limits) {
  const auto spec = chain(6, 0.3);
  const auto h = build_xx_hamiltonian(spec);
  const auto gs = ground_state(h);
  const auto cold = thermal_state(h, 1e5);
  for (const Operator& op : {sigma_x(0) * sigma_x(1), sigma_z(2), sigma_z(0) * sigma_z(3)})
    EXPECT_NEAR(expectation(cold, op), expectation(gs, op), 1e-8);
  const auto hot = thermal_state(h, 1e-6);
  const Eigen::VectorXd diag = hot.density_matrix().diagonal().real();
  EXPECT_NEAR(diag.maxCoeff(), 1.0 / 64, 1e-7);
  EXPECT_NEAR(diag.minCoeff(), 1.0 / 64, 1e-7);
  EXPECT_THROW(thermal_state(h, 0.0), ValidationError);
  EXPECT_THROW(thermal_state(h, std::numeric_limits<double>::infinity()), ValidationError);
}

TEST(ThermalState, EnergyDecreasesWithBeta) {
  testgen::Gen g(3);
  for (int trial = 0; trial < 5; ++trial) {
    auto s = g.chain(3, 7);
    const auto h = build_xx_hamiltonian(s);
    const auto spec = diagonalize(h);
    double last = std::numeric_limits<double>::infinity();
    for (double beta : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double e = expectation(thermal_state(spec, beta), h);
      EXPECT_LE(e, last + 1e-12);
      last = e;
    }
  }
}

TEST(Expectation, LinearAndDimensionChecked) {
  const auto spec = chain(4, 0.2, Boundary::periodic, 0.7);
  const auto st = chain_state(spec);
  const Operator a = sigma_x(0) * sigma_x(1), b = sigma_z(2);
  EXPECT_NEAR(expectation(st, cplx(2.0) * a + cplx(-3.0) * b), 2.0 * expectation(st, a) - 3.0 * expectation(st, b),
              1e-13);
  const auto other = build_xx_hamiltonian(chain(5));
  EXPECT_THROW(expectation(st, other), ValidationError);
}

TEST(ReducedDensity, ProductAndGhz) {
  const auto empty = chain_state(chain(2, 2.0));
  const int site1[] = {1};
  const Eigen::MatrixXcd r = reduced_density_operator(empty, site1);
  EXPECT_NEAR(r(0, 0).real(), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(r(1, 1)), 0.0, 1e-14);

  auto b = Basis::spins(4);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v(static_cast<Eigen::Index>(*b->find(0))) = std::sqrt(0.5);
  v(static_cast<Eigen::Index>(*b->find(15))) = std::sqrt(0.5);
  const auto ghz = QuantumState::pure(b, v);
  const Eigen::MatrixXcd g = reduced_density_operator(ghz, site1);
  EXPECT_NEAR(g(0, 0).real(), 0.5, 1e-14);
  EXPECT_NEAR(g(1, 1).real(), 0.5, 1e-14);
  EXPECT_NEAR(std::abs(g(0, 1)), 0.0, 1e-14);
  const auto as_state = reduced_density_matrix(ghz, site1);
  EXPECT_EQ(as_state.kind(), StateKind::thermal);
  EXPECT_EQ(as_state.components().size(), 2u);
}

TEST(ReducedDensity, HalfFillingMarginal) {
  const auto st = chain_state(chain(12));
  const int site[] = {6};
  const Eigen::MatrixXcd r = reduced_density_operator(st, site);
  EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-10);
  EXPECT_NEAR(r(1, 1).real(), 0.5, 1e-10);
}

TEST(ReducedDensity, PropertiesOnRandomStates) {
  testgen::Gen g(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = g.chain(3, 8);
    const auto st = chain_state(spec);
    std::vector<int> sites;
    const int k = g.integer(1, std::min(4, spec.n_sites));
    while (static_cast<int>(sites.size()) < k) {
      const int s = g.integer(0, spec.n_sites - 1);
      if (std::find(sites.begin(), sites.end(), s) == sites.end()) sites.push_back(s);
    }
    const Eigen::MatrixXcd r = reduced_density_operator(st, sites);
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-12);
    EXPECT_LE((r - r.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(r).eigenvalues().minCoeff(), -1e-12);
    // Partial trace reproduces single-site expectations.
    const Eigen::MatrixXcd r0 = reduced_density_operator(st, std::span<const int>(sites.data(), 1));
    EXPECT_NEAR((r0(0, 0) - r0(1, 1)).real(), expectation(st, sigma_z(sites[0])), 1e-12);
  }
}

TEST(ReducedDensity, InvalidSites) {
  const auto st = chain_state(chain(4));
  const int bad[] = {4};
  const int dup[] = {1, 1};
  const int many[] = {0, 1, 2, 3, 0};
  EXPECT_THROW(reduced_density_operator(st, bad), ValidationError);
  EXPECT_THROW(reduced_density_operator(st, dup), ValidationError);
  EXPECT_THROW(reduced_density_operator(st, many), ValidationError);
}

TEST(ChainCorrelators, U1Symmetry) {
  testgen::Gen g(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = g.chain(2, 8);
    const auto c = exact_correlators(spec, spec.n_sites - 1);
    EXPECT_NEAR(c.xx_nn, c.yy_nn, 1e-12);
    for (double v : {c.xx_nn, c.zz_nn, c.z_single}) EXPECT_LE(std::abs(v), 1.0 + 1e-12);
  }
  EXPECT_THROW(exact_correlators(chain(4), 4), ValidationError);
}
