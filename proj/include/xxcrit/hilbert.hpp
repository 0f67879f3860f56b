#pragma once

// Brute-force many-body engine: occupation-number bases, a small operator
// algebra, Hamiltonians stored as dense Hermitian blocks per particle-number
// sector, and pure/thermal states built from full spectral decompositions.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xxcrit/correlators.hpp"
#include "xxcrit/spec.hpp"

namespace xxcrit::hilbert {

using cplx = std::complex<double>;
using Code = std::uint64_t;

inline constexpr int kMaxSpinSites = 14;
inline constexpr std::uint64_t kMaxDimension = std::uint64_t{1} << 20;
/// Largest dimension for which a full dense matrix is materialized.
inline constexpr std::size_t kMaxDenseDimension = 4096;

/// Occupation configurations of n sites with cutoff n_max, stored as mixed-radix
/// codes (site i is digit i) and ordered by (particle number, code).
class Basis {
 public:
  struct Sector {
    int particles;
    std::size_t offset;
    std::size_t size;
  };

  /// Hard-core (spin-1/2) lattice: n_max = 1, all particle numbers.
  static std::shared_ptr<const Basis> spins(int n_sites);
  static std::shared_ptr<const Basis> bosons(int n_sites, int n_max, std::optional<int> n_particles = {});

  int n_sites() const { return n_sites_; }
  int n_max() const { return local_dim_ - 1; }
  int local_dim() const { return local_dim_; }
  std::size_t size() const { return codes_.size(); }
  Code code(std::size_t index) const { return codes_[index]; }
  std::optional<std::size_t> find(Code code) const;
  int occupation(Code code, int site) const {
    return static_cast<int>((code / strides_[site]) % static_cast<Code>(local_dim_));
  }
  Code with_occupation(Code code, int site, int n) const;
  std::span<const Sector> sectors() const { return sectors_; }
  /// Occupation string, site 0 first.
  std::string label(std::size_t index) const;

 private:
  Basis(int n_sites, int n_max, std::optional<int> n_particles);

  int n_sites_;
  int local_dim_;
  std::vector<Code> strides_;
  std::vector<Code> codes_;
  std::vector<Sector> sectors_;
  std::vector<std::int64_t> lookup_;
};

enum class LocalOp { create, annihilate, number, sigma_z };

struct Factor {
  int site;
  LocalOp op;
};

/// coeff * f_0 f_1 ... f_k; the rightmost factor acts first.
struct Term {
  cplx coeff;
  std::vector<Factor> factors;
};

class Operator {
 public:
  Operator() = default;
  static Operator identity(cplx coeff = 1.0);
  static Operator local(int site, LocalOp op, cplx coeff = 1.0);

  Operator& add_term(cplx coeff, std::vector<Factor> factors);
  Operator& operator+=(const Operator& other);
  Operator& operator*=(cplx scale);
  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a += cplx(-1.0) * b; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

  const std::vector<Term>& terms() const { return terms_; }
  bool conserves_particles() const;

 private:
  std::vector<Term> terms_;
};

/// Applies one term to a configuration; returns false when the term annihilates it.
bool act(const Term& term, const Basis& basis, Code& code, cplx& amplitude);
/// Throws ValidationError when a factor acts on a site outside the basis.
void check_operator_sites(const Operator& op, const Basis& basis);

// Pauli operators in the hard-core boson language:
// s+ = b^dagger, s- = b, sx = b + b^dagger, sy = i(b - b^dagger), sz = 1 - 2 b^dagger b.
Operator sigma_plus(int site);
Operator sigma_minus(int site);
Operator sigma_x(int site);
Operator sigma_y(int site);
Operator sigma_z(int site);
Operator number(int site);

/// Twisted XX chain; reduces to the plain XX chain when twist_per_bond is 0.
Operator xx_operator(const SpinChainSpec& spec);
/// -i sum_b (s+_i s-_j - s-_i s+_j) over the chain's bonds.
Operator current_operator(int n_sites, Boundary boundary);
/// -J sum_b (b^dagger_i b_j + h.c.) + (U/2) sum_i n_i (n_i - 1)
Operator bose_hubbard_operator(const BoseHubbardSpec& spec);

class HamiltonianMatrix {
 public:
  struct Block {
    std::size_t offset;
    Eigen::MatrixXcd matrix;
  };

  /// Particle-conserving operators are stored as one dense block per sector,
  /// anything else as a single dense block over the full basis.
  static HamiltonianMatrix from_operator(const Operator& op, std::shared_ptr<const Basis> basis);

  std::size_t dimension() const { return basis_->size(); }
  const Basis& basis() const { return *basis_; }
  const std::shared_ptr<const Basis>& basis_ptr() const { return basis_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::vector<std::string> basis_labels() const;
  /// Full dense matrix in basis order; guarded by kMaxDenseDimension.
  Eigen::MatrixXcd entries() const;
  double hermiticity_defect() const;
  /// Largest absolute row sum, an upper bound on the operator norm.
  double norm_bound() const;

 private:
  std::shared_ptr<const Basis> basis_;
  std::vector<Block> blocks_;
};

HamiltonianMatrix build_xx_hamiltonian(const SpinChainSpec& spec);
HamiltonianMatrix build_twisted_hamiltonian(const SpinChainSpec& spec);
HamiltonianMatrix build_bose_hubbard(const BoseHubbardSpec& spec);

struct BlockSpectrum {
  std::size_t offset;
  Eigen::VectorXd energies;
  Eigen::MatrixXcd vectors;
};

struct Spectrum {
  std::shared_ptr<const Basis> basis;
  std::vector<BlockSpectrum> blocks;

  double min_energy() const;
  /// All eigenvalues, ascending.
  std::vector<double> energies() const;
};

Spectrum diagonalize(const HamiltonianMatrix& h);

enum class StateKind { pure, thermal };

/// Normalized vector on the contiguous basis range [offset, offset + size).
struct StateComponent {
  double probability;
  std::size_t offset;
  Eigen::VectorXcd amplitudes;
};

class QuantumState {
 public:
  static QuantumState pure(std::shared_ptr<const Basis> basis, Eigen::VectorXcd amplitudes);
  static QuantumState mixed(std::shared_ptr<const Basis> basis, std::vector<StateComponent> components,
                            double beta);

  StateKind kind() const { return kind_; }
  /// Inverse temperature; infinity for pure states.
  double beta() const { return beta_; }
  const Basis& basis() const { return *basis_; }
  const std::shared_ptr<const Basis>& basis_ptr() const { return basis_; }
  const std::vector<StateComponent>& components() const { return components_; }
  /// Full-basis amplitudes of a pure state.
  Eigen::VectorXcd amplitudes() const;
  Eigen::MatrixXcd density_matrix() const;

  /// Ground-state metadata (energy and ground-space degeneracy), when known.
  std::optional<double> energy;
  int degeneracy = 1;

 private:
  QuantumState() = default;

  StateKind kind_ = StateKind::pure;
  double beta_ = 0.0;
  std::shared_ptr<const Basis> basis_;
  std::vector<StateComponent> components_;
};

/// Lowest eigenvector; ties resolved towards the first sector in basis order,
/// global phase fixed by making the largest amplitude real positive.
QuantumState ground_state(const HamiltonianMatrix& h);
QuantumState ground_state(const Spectrum& spectrum, double norm_bound);
QuantumState thermal_state(const HamiltonianMatrix& h, double beta);
QuantumState thermal_state(const Spectrum& spectrum, double beta);

cplx expectation_value(const QuantumState& state, const Operator& op);
/// Real expectation of a Hermitian observable.
double expectation(const QuantumState& state, const Operator& op);
double expectation(const QuantumState& state, const HamiltonianMatrix& observable);

/// Reduced density matrix on `sites`, indexed by the local code
/// sum_k n_{sites[k]} d^k (first listed site least significant).
Eigen::MatrixXcd reduced_density_operator(const QuantumState& state, std::span<const int> sites);
/// Same, returned as a thermal-kind state (spectral decomposition) over a basis of |sites| sites.
QuantumState reduced_density_matrix(const QuantumState& state, std::span<const int> sites);

/// Ground state (temperature 0) or Gibbs state of the twisted chain.
QuantumState chain_state(const SpinChainSpec& spec);
/// Correlator set from an exact chain state.
CorrelatorSet chain_correlators(const QuantumState& state, const SpinChainSpec& spec, int profile_r_max);
CorrelatorSet exact_correlators(const SpinChainSpec& spec, int profile_r_max = 0);

}  // namespace xxcrit::hilbert
