#include "xxcrit/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "xxcrit/errors.hpp"

namespace xxcrit::hilbert {

namespace {

std::uint64_t checked_power(int base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    result *= static_cast<std::uint64_t>(base);
    if (result > kMaxDimension)
      throw ResourceError("Hilbert-space dimension " + std::to_string(base) + "^" + std::to_string(exponent) +
                          " exceeds the 2^20 guard");
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------- Basis

Basis::Basis(int n_sites, int n_max, std::optional<int> n_particles) : n_sites_(n_sites), local_dim_(n_max + 1) {
  if (n_sites < 1) throw ValidationError("basis needs at least one site");
  if (n_max < 1) throw ValidationError("occupation cutoff must be >= 1");
  const std::uint64_t full = checked_power(local_dim_, n_sites);
  strides_.resize(n_sites);
  Code stride = 1;
  for (int i = 0; i < n_sites; ++i) {
    strides_[i] = stride;
    stride *= static_cast<Code>(local_dim_);
  }
  const int max_particles = n_sites * n_max;
  std::vector<std::vector<Code>> buckets(max_particles + 1);
  for (Code c = 0; c < full; ++c) {
    int count = 0;
    Code rest = c;
    for (int i = 0; i < n_sites; ++i) {
      count += static_cast<int>(rest % local_dim_);
      rest /= local_dim_;
    }
    if (!n_particles || *n_particles == count) buckets[count].push_back(c);
  }
  lookup_.assign(full, -1);
  for (int p = 0; p <= max_particles; ++p) {
    if (buckets[p].empty()) continue;
    sectors_.push_back({p, codes_.size(), buckets[p].size()});
    for (Code c : buckets[p]) {
      lookup_[c] = static_cast<std::int64_t>(codes_.size());
      codes_.push_back(c);
    }
  }
}

std::shared_ptr<const Basis> Basis::spins(int n_sites) {
  if (n_sites > kMaxSpinSites)
    throw ResourceError("exact diagonalization is limited to " + std::to_string(kMaxSpinSites) + " spins");
  return std::shared_ptr<const Basis>(new Basis(n_sites, 1, std::nullopt));
}

std::shared_ptr<const Basis> Basis::bosons(int n_sites, int n_max, std::optional<int> n_particles) {
  return std::shared_ptr<const Basis>(new Basis(n_sites, n_max, n_particles));
}

std::optional<std::size_t> Basis::find(Code code) const {
  if (code >= lookup_.size()) return std::nullopt;
  const std::int64_t idx = lookup_[code];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

Code Basis::with_occupation(Code code, int site, int n) const {
  const int old = occupation(code, site);
  return code - static_cast<Code>(old) * strides_[site] + static_cast<Code>(n) * strides_[site];
}

std::string Basis::label(std::size_t index) const {
  std::string s;
  const Code c = codes_.at(index);
  for (int i = 0; i < n_sites_; ++i) s += std::to_string(occupation(c, i));
  return s;
}

// ---------------------------------------------------------------- Operator algebra

Operator Operator::identity(cplx coeff) {
  Operator op;
  op.add_term(coeff, {});
  return op;
}

Operator Operator::local(int site, LocalOp kind, cplx coeff) {
  Operator op;
  op.add_term(coeff, {Factor{site, kind}});
  return op;
}

Operator& Operator::add_term(cplx coeff, std::vector<Factor> factors) {
  terms_.push_back(Term{coeff, std::move(factors)});
  return *this;
}

Operator& Operator::operator+=(const Operator& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

Operator& Operator::operator*=(cplx scale) {
  for (Term& t : terms_) t.coeff *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  Operator out;
  for (const Term& ta : a.terms())
    for (const Term& tb : b.terms()) {
      std::vector<Factor> f = ta.factors;
      f.insert(f.end(), tb.factors.begin(), tb.factors.end());
      out.add_term(ta.coeff * tb.coeff, std::move(f));
    }
  return out;
}

bool Operator::conserves_particles() const {
  for (const Term& t : terms_) {
    int balance = 0;
    for (const Factor& f : t.factors) {
      if (f.op == LocalOp::create) ++balance;
      if (f.op == LocalOp::annihilate) --balance;
    }
    if (balance != 0) return false;
  }
  return true;
}

bool act(const Term& term, const Basis& basis, Code& code, cplx& amplitude) {
  amplitude = term.coeff;
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
    const int n = basis.occupation(code, it->site);
    switch (it->op) {
      case LocalOp::create:
        if (n >= basis.n_max()) return false;
        amplitude *= std::sqrt(static_cast<double>(n + 1));
        code = basis.with_occupation(code, it->site, n + 1);
        break;
      case LocalOp::annihilate:
        if (n == 0) return false;
        amplitude *= std::sqrt(static_cast<double>(n));
        code = basis.with_occupation(code, it->site, n - 1);
        break;
      case LocalOp::number:
        if (n == 0) return false;
        amplitude *= static_cast<double>(n);
        break;
      case LocalOp::sigma_z:
        amplitude *= static_cast<double>(1 - 2 * n);
        break;
    }
  }
  return true;
}

void check_operator_sites(const Operator& op, const Basis& basis) {
  for (const Term& t : op.terms())
    for (const Factor& f : t.factors)
      if (f.site < 0 || f.site >= basis.n_sites())
        throw ValidationError("operator acts on site " + std::to_string(f.site) + " outside the basis");
}

Operator sigma_plus(int site) { return Operator::local(site, LocalOp::create); }
Operator sigma_minus(int site) { return Operator::local(site, LocalOp::annihilate); }
Operator sigma_x(int site) { return sigma_minus(site) + sigma_plus(site); }
Operator sigma_y(int site) {
  const cplx i(0.0, 1.0);
  return i * sigma_minus(site) + (-i) * sigma_plus(site);
}
Operator sigma_z(int site) { return Operator::local(site, LocalOp::sigma_z); }
Operator number(int site) { return Operator::local(site, LocalOp::number); }

Operator xx_operator(const SpinChainSpec& spec) {
  spec.validate();
  if (spec.thermodynamic_limit) throw ValidationError("exact diagonalization needs a finite chain");
  const double j = spec.coupling_j;
  const cplx phase = std::polar(1.0, spec.twist_per_bond);
  Operator h;
  for (auto [a, b] : chain_bonds(spec.n_sites, spec.boundary)) {
    h.add_term(-j * phase, {{a, LocalOp::create}, {b, LocalOp::annihilate}});
    h.add_term(-j * std::conj(phase), {{a, LocalOp::annihilate}, {b, LocalOp::create}});
  }
  if (spec.chem_potential != 0.0)
    for (int i = 0; i < spec.n_sites; ++i) h.add_term(-spec.chem_potential, {{i, LocalOp::sigma_z}});
  return h;
}

Operator current_operator(int n_sites, Boundary boundary) {
  const cplx i(0.0, 1.0);
  Operator c;
  for (auto [a, b] : chain_bonds(n_sites, boundary)) {
    c.add_term(-i, {{a, LocalOp::create}, {b, LocalOp::annihilate}});
    c.add_term(i, {{a, LocalOp::annihilate}, {b, LocalOp::create}});
  }
  return c;
}

Operator bose_hubbard_operator(const BoseHubbardSpec& spec) {
  spec.validate();
  Operator h;
  for (auto [a, b] : chain_bonds(spec.n_sites, spec.boundary)) {
    h.add_term(-spec.coupling_j, {{a, LocalOp::create}, {b, LocalOp::annihilate}});
    h.add_term(-spec.coupling_j, {{b, LocalOp::create}, {a, LocalOp::annihilate}});
  }
  if (spec.onsite_u != 0.0)
    for (int i = 0; i < spec.n_sites; ++i) {
      h.add_term(0.5 * spec.onsite_u, {{i, LocalOp::number}, {i, LocalOp::number}});
      h.add_term(-0.5 * spec.onsite_u, {{i, LocalOp::number}});
    }
  return h;
}

// ---------------------------------------------------------------- HamiltonianMatrix

HamiltonianMatrix HamiltonianMatrix::from_operator(const Operator& op, std::shared_ptr<const Basis> basis) {
  HamiltonianMatrix h;
  h.basis_ = std::move(basis);
  const Basis& b = *h.basis_;
  check_operator_sites(op, b);
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  if (op.conserves_particles()) {
    for (const auto& s : b.sectors()) ranges.emplace_back(s.offset, s.size);
  } else {
    ranges.emplace_back(0, b.size());
  }
  for (auto [offset, size] : ranges) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t i = 0; i < size; ++i) {
      const Code c = b.code(offset + i);
      for (const Term& t : op.terms()) {
        Code out = c;
        cplx amp;
        if (!act(t, b, out, amp)) continue;
        const auto j = b.find(out);
        if (!j || *j < offset || *j >= offset + size) continue;
        m(static_cast<Eigen::Index>(*j - offset), static_cast<Eigen::Index>(i)) += amp;
      }
    }
    h.blocks_.push_back(Block{offset, std::move(m)});
  }
  return h;
}

std::vector<std::string> HamiltonianMatrix::basis_labels() const {
  std::vector<std::string> labels;
  labels.reserve(basis_->size());
  for (std::size_t i = 0; i < basis_->size(); ++i) labels.push_back(basis_->label(i));
  return labels;
}

Eigen::MatrixXcd HamiltonianMatrix::entries() const {
  const std::size_t n = dimension();
  if (n > kMaxDenseDimension)
    throw ResourceError("refusing to materialize a dense " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Block& blk : blocks_) {
    const auto off = static_cast<Eigen::Index>(blk.offset);
    full.block(off, off, blk.matrix.rows(), blk.matrix.cols()) = blk.matrix;
  }
  return full;
}

double HamiltonianMatrix::hermiticity_defect() const {
  double defect = 0.0;
  for (const Block& blk : blocks_)
    if (blk.matrix.size() > 0) defect = std::max(defect, (blk.matrix - blk.matrix.adjoint()).cwiseAbs().maxCoeff());
  return defect;
}

double HamiltonianMatrix::norm_bound() const {
  double bound = 0.0;
  for (const Block& blk : blocks_)
    if (blk.matrix.size() > 0) bound = std::max(bound, blk.matrix.cwiseAbs().rowwise().sum().maxCoeff());
  return bound;
}

HamiltonianMatrix build_twisted_hamiltonian(const SpinChainSpec& spec) {
  const Operator op = xx_operator(spec);
  return HamiltonianMatrix::from_operator(op, Basis::spins(spec.n_sites));
}

HamiltonianMatrix build_xx_hamiltonian(const SpinChainSpec& spec) {
  SpinChainSpec plain = spec;
  plain.twist_per_bond = 0.0;
  return build_twisted_hamiltonian(plain);
}

HamiltonianMatrix build_bose_hubbard(const BoseHubbardSpec& spec) {
  const Operator op = bose_hubbard_operator(spec);
  return HamiltonianMatrix::from_operator(op, Basis::bosons(spec.n_sites, spec.n_max, spec.n_particles));
}

// ---------------------------------------------------------------- Spectra and states

double Spectrum::min_energy() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks)
    if (b.energies.size() > 0) e = std::min(e, b.energies.minCoeff());
  return e;
}

std::vector<double> Spectrum::energies() const {
  std::vector<double> all;
  for (const auto& b : blocks) all.insert(all.end(), b.energies.data(), b.energies.data() + b.energies.size());
  std::sort(all.begin(), all.end());
  return all;
}

Spectrum diagonalize(const HamiltonianMatrix& h) {
  Spectrum s;
  s.basis = h.basis_ptr();
  for (const auto& blk : h.blocks()) {
    BlockSpectrum bs;
    bs.offset = blk.offset;
    if (blk.matrix.size() == 0) {
      s.blocks.push_back(std::move(bs));
      continue;
    }
    if (blk.matrix.imag().cwiseAbs().maxCoeff() == 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk.matrix.real());
      if (es.info() != Eigen::Success)
        throw NumericError("real symmetric eigensolver failed on a block of size " + std::to_string(blk.matrix.rows()));
      bs.energies = es.eigenvalues();
      bs.vectors = es.eigenvectors().cast<cplx>();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk.matrix);
      if (es.info() != Eigen::Success)
        throw NumericError("Hermitian eigensolver failed on a block of size " + std::to_string(blk.matrix.rows()));
      bs.energies = es.eigenvalues();
      bs.vectors = es.eigenvectors();
    }
    s.blocks.push_back(std::move(bs));
  }
  return s;
}

QuantumState QuantumState::pure(std::shared_ptr<const Basis> basis, Eigen::VectorXcd amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis->size())
    throw ValidationError("amplitude vector does not match the basis dimension");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-12) throw ValidationError("pure state is not normalized");
  QuantumState s;
  s.kind_ = StateKind::pure;
  s.beta_ = std::numeric_limits<double>::infinity();
  s.basis_ = std::move(basis);
  s.components_.push_back(StateComponent{1.0, 0, std::move(amplitudes)});
  return s;
}

QuantumState QuantumState::mixed(std::shared_ptr<const Basis> basis, std::vector<StateComponent> components,
                                 double beta) {
  double total = 0.0;
  for (const auto& c : components) {
    if (c.probability < 0.0) throw ValidationError("negative probability in mixed state");
    if (c.offset + static_cast<std::size_t>(c.amplitudes.size()) > basis->size())
      throw ValidationError("mixed-state component exceeds the basis");
    total += c.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("mixed-state probabilities do not sum to one");
  QuantumState s;
  s.kind_ = StateKind::thermal;
  s.beta_ = beta;
  s.basis_ = std::move(basis);
  s.components_ = std::move(components);
  return s;
}

Eigen::VectorXcd QuantumState::amplitudes() const {
  if (kind_ != StateKind::pure) throw ValidationError("amplitudes requested from a mixed state");
  const auto& c = components_.front();
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_->size()));
  full.segment(static_cast<Eigen::Index>(c.offset), c.amplitudes.size()) = c.amplitudes;
  return full;
}

Eigen::MatrixXcd QuantumState::density_matrix() const {
  const std::size_t n = basis_->size();
  if (n > kMaxDenseDimension) throw ResourceError("density matrix too large to materialize");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& c : components_) {
    const auto off = static_cast<Eigen::Index>(c.offset);
    const auto len = c.amplitudes.size();
    rho.block(off, off, len, len) += c.probability * (c.amplitudes * c.amplitudes.adjoint());
  }
  return rho;
}

namespace {

void canonicalize_phase(Eigen::VectorXcd& v) {
  const double largest = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= largest - 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

}  // namespace

QuantumState ground_state(const Spectrum& spectrum, double norm_bound) {
  const double e0 = spectrum.min_energy();
  const double tol = 1e-10 * std::max(1.0, norm_bound);
  const BlockSpectrum* chosen = nullptr;
  int degeneracy = 0;
  for (const auto& b : spectrum.blocks) {
    for (Eigen::Index k = 0; k < b.energies.size(); ++k)
      if (b.energies(k) <= e0 + tol) ++degeneracy;
    if (!chosen && b.energies.size() > 0 && b.energies(0) <= e0 + tol) chosen = &b;
  }
  if (!chosen) throw NumericError("no ground state found in an empty spectrum");
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(spectrum.basis->size()));
  full.segment(static_cast<Eigen::Index>(chosen->offset), chosen->vectors.rows()) = chosen->vectors.col(0);
  full.normalize();
  canonicalize_phase(full);
  QuantumState s = QuantumState::pure(spectrum.basis, std::move(full));
  s.energy = chosen->energies(0);
  s.degeneracy = degeneracy;
  return s;
}

QuantumState ground_state(const HamiltonianMatrix& h) {
  const Spectrum spectrum = diagonalize(h);
  QuantumState s = ground_state(spectrum, h.norm_bound());
  // Residual check on the block holding the chosen vector.
  const Eigen::VectorXcd psi = s.amplitudes();
  double residual = 0.0;
  for (const auto& blk : h.blocks()) {
    const auto off = static_cast<Eigen::Index>(blk.offset);
    const Eigen::VectorXcd seg = psi.segment(off, blk.matrix.rows());
    residual += (blk.matrix * seg - *s.energy * seg).squaredNorm();
  }
  residual = std::sqrt(residual);
  if (residual > 1e-10 * std::max(1.0, h.norm_bound()))
    throw NumericError("ground-state residual " + std::to_string(residual) + " exceeds tolerance");
  return s;
}

QuantumState thermal_state(const Spectrum& spectrum, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be positive and finite");
  const double e0 = spectrum.min_energy();
  double z = 0.0;
  for (const auto& b : spectrum.blocks)
    for (Eigen::Index k = 0; k < b.energies.size(); ++k) z += std::exp(-beta * (b.energies(k) - e0));
  std::vector<StateComponent> comps;
  double total = 0.0;
  for (const auto& b : spectrum.blocks)
    for (Eigen::Index k = 0; k < b.energies.size(); ++k) {
      const double p = std::exp(-beta * (b.energies(k) - e0)) / z;
      if (p == 0.0) continue;
      total += p;
      comps.push_back(StateComponent{p, b.offset, b.vectors.col(k)});
    }
  for (auto& c : comps) c.probability /= total;
  return QuantumState::mixed(spectrum.basis, std::move(comps), beta);
}

QuantumState thermal_state(const HamiltonianMatrix& h, double beta) { return thermal_state(diagonalize(h), beta); }

cplx expectation_value(const QuantumState& state, const Operator& op) {
  const Basis& basis = state.basis();
  check_operator_sites(op, basis);
  struct Element {
    Eigen::Index from, to;
    cplx amp;
  };
  // Matrix elements inside one block; thermal states reuse them for every eigenvector of that block.
  std::vector<Element> elements;
  std::size_t cached_lo = 0, cached_hi = 0;
  bool cached = false;
  cplx total = 0.0;
  for (const auto& comp : state.components()) {
    const std::size_t lo = comp.offset;
    const std::size_t hi = lo + static_cast<std::size_t>(comp.amplitudes.size());
    if (!cached || lo != cached_lo || hi != cached_hi) {
      elements.clear();
      for (std::size_t i = lo; i < hi; ++i) {
        const Code c = basis.code(i);
        for (const Term& t : op.terms()) {
          Code out = c;
          cplx amp;
          if (!act(t, basis, out, amp)) continue;
          const auto j = basis.find(out);
          if (!j || *j < lo || *j >= hi) continue;
          elements.push_back({static_cast<Eigen::Index>(i - lo), static_cast<Eigen::Index>(*j - lo), amp});
        }
      }
      cached_lo = lo;
      cached_hi = hi;
      cached = true;
    }
    cplx partial = 0.0;
    for (const auto& e : elements) partial += std::conj(comp.amplitudes(e.to)) * e.amp * comp.amplitudes(e.from);
    total += comp.probability * partial;
  }
  return total;
}

double expectation(const QuantumState& state, const Operator& op) {
  const cplx v = expectation_value(state, op);
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    throw ValidationError("expectation has an imaginary part; observable is not Hermitian");
  return v.real();
}

double expectation(const QuantumState& state, const HamiltonianMatrix& observable) {
  if (state.basis().size() != observable.dimension())
    throw ValidationError("observable and state dimensions differ");
  cplx total = 0.0;
  for (const auto& comp : state.components()) {
    const auto lo = static_cast<Eigen::Index>(comp.offset);
    const auto len = comp.amplitudes.size();
    for (const auto& blk : observable.blocks()) {
      const auto bo = static_cast<Eigen::Index>(blk.offset);
      const auto bl = blk.matrix.rows();
      const Eigen::Index start = std::max(lo, bo);
      const Eigen::Index stop = std::min(lo + len, bo + bl);
      if (start >= stop) continue;
      // Amplitudes outside this block's range meet zero matrix entries.
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(bl);
      v.segment(start - bo, stop - start) = comp.amplitudes.segment(start - lo, stop - start);
      total += comp.probability * v.dot(blk.matrix * v);
    }
  }
  if (std::abs(total.imag()) > 1e-9 * std::max(1.0, std::abs(total.real())))
    throw ValidationError("expectation has an imaginary part; observable is not Hermitian");
  return total.real();
}

namespace {

void check_sites(const Basis& basis, std::span<const int> sites) {
  if (sites.empty() || sites.size() > 4) throw ValidationError("reduced density matrices support 1..4 sites");
  for (std::size_t a = 0; a < sites.size(); ++a) {
    if (sites[a] < 0 || sites[a] >= basis.n_sites())
      throw ValidationError("site index " + std::to_string(sites[a]) + " outside the chain");
    for (std::size_t b = 0; b < a; ++b)
      if (sites[a] == sites[b]) throw ValidationError("duplicate site in reduced density matrix request");
  }
}

}  // namespace

Eigen::MatrixXcd reduced_density_operator(const QuantumState& state, std::span<const int> sites) {
  const Basis& basis = state.basis();
  check_sites(basis, sites);
  const int d = basis.local_dim();
  Eigen::Index dim = 1;
  for (std::size_t k = 0; k < sites.size(); ++k) dim *= d;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& comp : state.components()) {
    std::unordered_map<Code, std::vector<std::pair<Eigen::Index, cplx>>> groups;
    for (Eigen::Index i = 0; i < comp.amplitudes.size(); ++i) {
      const cplx a = comp.amplitudes(i);
      if (a == 0.0) continue;
      Code c = basis.code(comp.offset + static_cast<std::size_t>(i));
      Eigen::Index local = 0, weight = 1;
      for (int s : sites) {
        local += basis.occupation(c, s) * weight;
        weight *= d;
        c = basis.with_occupation(c, s, 0);
      }
      groups[c].emplace_back(local, a);
    }
    for (const auto& [rest, entries] : groups)
      for (const auto& [la, aa] : entries)
        for (const auto& [lb, ab] : entries) rho(la, lb) += comp.probability * aa * std::conj(ab);
  }
  return rho;
}

QuantumState reduced_density_matrix(const QuantumState& state, std::span<const int> sites) {
  const Eigen::MatrixXcd rho = reduced_density_operator(state, sites);
  auto sub = Basis::bosons(static_cast<int>(sites.size()), state.basis().n_max());
  // Reorder from local-code order into the sub-basis order.
  const auto n = static_cast<Eigen::Index>(sub->size());
  Eigen::MatrixXcd ordered(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      ordered(a, b) = rho(static_cast<Eigen::Index>(sub->code(static_cast<std::size_t>(a))),
                          static_cast<Eigen::Index>(sub->code(static_cast<std::size_t>(b))));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ordered);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on a reduced density matrix");
  std::vector<StateComponent> comps;
  double total = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double p = es.eigenvalues()(k);
    if (p < -1e-12) throw NumericError("reduced density matrix is not positive semidefinite");
    if (p <= 0.0) continue;
    total += p;
    comps.push_back(StateComponent{p, 0, es.eigenvectors().col(k)});
  }
  for (auto& c : comps) c.probability /= total;
  return QuantumState::mixed(std::move(sub), std::move(comps), std::numeric_limits<double>::quiet_NaN());
}

// ---------------------------------------------------------------- Chain observables

QuantumState chain_state(const SpinChainSpec& spec) {
  const HamiltonianMatrix h = build_twisted_hamiltonian(spec);
  if (spec.temperature == 0.0) return ground_state(h);
  return thermal_state(h, spec.beta());
}

CorrelatorSet chain_correlators(const QuantumState& state, const SpinChainSpec& spec, int profile_r_max) {
  const int n = spec.n_sites;
  if (profile_r_max < 0 || profile_r_max >= n)
    throw ValidationError("transverse profile needs 0 <= r_max < n_sites");
  const auto bonds = chain_bonds(n, spec.boundary);
  const double inv_bonds = 1.0 / static_cast<double>(bonds.size());
  Operator xx, yy, zz, z;
  for (auto [a, b] : bonds) {
    xx += cplx(inv_bonds) * (sigma_x(a) * sigma_x(b));
    yy += cplx(inv_bonds) * (sigma_y(a) * sigma_y(b));
    zz += cplx(inv_bonds) * (sigma_z(a) * sigma_z(b));
  }
  for (int i = 0; i < n; ++i) z += cplx(1.0 / n) * sigma_z(i);
  CorrelatorSet out;
  out.xx_nn = expectation(state, xx);
  out.yy_nn = expectation(state, yy);
  out.zz_nn = expectation(state, zz);
  out.z_single = expectation(state, z);
  for (int r = 1; r <= profile_r_max; ++r)
    out.transverse_profile.emplace_back(r, expectation_value(state, sigma_plus(0) * sigma_minus(r)).real());
  out.source = Solver::exact_diag;
  out.temperature = spec.temperature;
  out.mu_over_j = spec.mu_over_j();
  return out;
}

CorrelatorSet exact_correlators(const SpinChainSpec& spec, int profile_r_max) {
  return chain_correlators(chain_state(spec), spec, profile_r_max);
}

}  // namespace xxcrit::hilbert
