#include "qca/evolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qca/errors.hpp"

namespace qca {

namespace {

// Portable uniform in [0, 1): 53 high bits of the generator output.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct ConfigLess {
  bool operator()(const CommandConfiguration& a, const CommandConfiguration& b) const {
    return a.entries < b.entries;
  }
};

// Tracks where the qubit factors and the pointer go as hops are applied.
struct Frame {
  std::vector<int> cur_of_orig;  // original site -> current site of its qubit factor
  std::vector<int> orig_at_cur;  // inverse permutation
  int pointer_site;

  Frame(int n_sites, int pointer)
      : cur_of_orig(n_sites), orig_at_cur(n_sites), pointer_site(pointer) {
    for (int i = 0; i < n_sites; ++i) cur_of_orig[i] = orig_at_cur[i] = i;
  }

  void apply(const ConfigMove& m) {
    if (m.tag == Command::L) {
      const int oa = orig_at_cur[m.from_site];
      const int ob = orig_at_cur[m.to_site];
      std::swap(cur_of_orig[oa], cur_of_orig[ob]);
      std::swap(orig_at_cur[m.from_site], orig_at_cur[m.to_site]);
    } else if (m.tag == Command::R) {
      if (pointer_site == m.from_site)
        pointer_site = m.to_site;
      else if (pointer_site == m.to_site)
        pointer_site = m.from_site;
    }
  }
};

Frame run_frame(const ChainLayout& layout, const std::vector<ConfigMove>& path) {
  Frame frame(layout.n_sites, layout.pointer_site);
  for (const ConfigMove& m : path) frame.apply(m);
  return frame;
}

// Current sites of the window qubits under a frame, in window order.
std::vector<int> window_sites(const ChainLayout& layout, const Frame& frame) {
  std::vector<int> sites(layout.window_size());
  for (int j = 0; j < layout.window_size(); ++j)
    sites[j] = frame.cur_of_orig[layout.qc_lo + j];
  return sites;
}

// Applies the 36x36 register unitary of one hop to a register state.
void apply_hop(RegisterState& regs, const ConfigMove& m, const GateSet& gates) {
  const int left = m.leftward ? m.to_site : m.from_site;
  const int right = m.leftward ? m.from_site : m.to_site;
  const Eigen::MatrixXcd& u = gates.gate_unitary(m.tag);
  // Accumulate in sorted-key order so the result is bit-identical no matter
  // how the state's support was built up (hop order must not leak into the
  // floating-point summation order).
  std::vector<const AmplitudeMap::value_type*> ordered;
  ordered.reserve(regs.amplitudes.size());
  for (const auto& entry : regs.amplitudes) ordered.push_back(&entry);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });
  AmplitudeMap next;
  next.reserve(regs.amplitudes.size());
  BasisKey scratch;
  for (const auto* entry : ordered) {
    const auto& [key, amp] = *entry;
    const int col = key[left] * kRegisterDim + key[right];
    for (int row = 0; row < kRegisterPairDim; ++row) {
      // Forward hop applies U, the adjoint hop applies U^dagger.
      const Complex v = m.leftward ? u(row, col) : std::conj(u(col, row));
      if (v == Complex(0.0)) continue;
      scratch = key;
      scratch[left] = static_cast<std::uint8_t>(row / kRegisterDim);
      scratch[right] = static_cast<std::uint8_t>(row % kRegisterDim);
      next[scratch] += v * amp;
    }
  }
  for (auto it = next.begin(); it != next.end();) {
    if (it->second == Complex(0.0))
      it = next.erase(it);
    else
      ++it;
  }
  regs.amplitudes = std::move(next);
}

}  // namespace

CommandConfiguration initial_configuration(const ChainLayout& layout) {
  CommandConfiguration c;
  for (int i = 0; i < layout.program.length(); ++i)
    c.entries.emplace_back(layout.program_lo() + i, command_from_char(layout.program_char(i)));
  return c;
}

RegisterState initial_registers(const ChainLayout& layout) {
  layout.validate();
  BasisKey key(layout.n_sites, 0);  // qubit 0, pointer absent
  for (int j = 0; j < layout.window_size(); ++j)
    key[layout.qc_lo + j] = static_cast<std::uint8_t>((layout.qubits[j] - '0') * kPointerDim);
  key[layout.pointer_site] =
      static_cast<std::uint8_t>(key[layout.pointer_site] + static_cast<int>(PointerState::P0));
  RegisterState regs;
  regs.n_sites = layout.n_sites;
  regs.amplitudes.emplace(std::move(key), Complex(1.0, 0.0));
  return regs;
}

ChainState evolve(const ChainState& state, const ChainHamiltonian& h, double t,
                  const EvolveOptions& opts) {
  if (state.n_sites != h.n_sites())
    throw std::invalid_argument("state and Hamiltonian have different chain lengths");
  if (t == 0.0) return state;

  // Deterministic basis: sorted support, then breadth first closure.
  std::vector<BasisKey> keys;
  keys.reserve(state.amplitudes.size());
  for (const auto& [key, amp] : state.amplitudes) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  std::unordered_map<BasisKey, int, BasisKeyHash> index;
  for (std::size_t i = 0; i < keys.size(); ++i) index.emplace(keys[i], static_cast<int>(i));

  BasisKey scratch;
  for (std::size_t qi = 0; qi < keys.size(); ++qi) {
    const BasisKey key = keys[qi];  // copy, keys grows below
    for (const Bond& bond : h.bonds()) {
      const int col = key[bond.left] * kSiteDim + key[bond.right];
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(h.term().matrix, col); it; ++it) {
        scratch = key;
        scratch[bond.left] = static_cast<std::uint8_t>(it.row() / kSiteDim);
        scratch[bond.right] = static_cast<std::uint8_t>(it.row() % kSiteDim);
        if (index.emplace(scratch, static_cast<int>(keys.size())).second) {
          if (keys.size() >= opts.max_dimension)
            throw ResourceLimitError("reachable basis exceeds the cap", keys.size() + 1,
                                     opts.max_dimension);
          keys.push_back(scratch);
        }
      }
    }
  }

  const int dim = static_cast<int>(keys.size());
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < dim; ++i) {
    for (const Bond& bond : h.bonds()) {
      const int col = keys[i][bond.left] * kSiteDim + keys[i][bond.right];
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(h.term().matrix, col); it; ++it) {
        scratch = keys[i];
        scratch[bond.left] = static_cast<std::uint8_t>(it.row() / kSiteDim);
        scratch[bond.right] = static_cast<std::uint8_t>(it.row() % kSiteDim);
        trip.emplace_back(index.at(scratch), i, it.value());
      }
    }
  }
  Eigen::SparseMatrix<Complex> hs(dim, dim);
  hs.setFromTriplets(trip.begin(), trip.end());
  hs.makeCompressed();

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (const auto& [key, amp] : state.amplitudes) v(index.at(key)) = amp;

  if (dim <= opts.dense_threshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(hs)};
    const Complex minus_i(0.0, -1.0);
    Eigen::VectorXcd phases(dim);
    for (int i = 0; i < dim; ++i) phases(i) = std::exp(minus_i * t * es.eigenvalues()(i));
    v = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * v));
  } else {
    krylov_expm_apply([&hs](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { y = hs * x; }, v,
                      t, KrylovOptions{opts.tol, 60});
  }

  ChainState out;
  out.n_sites = state.n_sites;
  out.amplitudes.reserve(dim);
  for (int i = 0; i < dim; ++i)
    if (v(i) != Complex(0.0)) out.amplitudes.emplace(keys[i], v(i));
  return out;
}

std::vector<std::pair<CommandConfiguration, double>> program_distribution(
    const ChainState& state) {
  std::map<CommandConfiguration, double, ConfigLess> acc;
  for (const auto& [key, amp] : state.amplitudes)
    acc[CommandConfiguration::from_key(key)] += std::norm(amp);
  return {acc.begin(), acc.end()};
}

MeasurementOutcome measure_program(const ChainState& state, std::uint64_t seed) {
  const auto dist = program_distribution(state);
  if (dist.empty()) throw PreconditionError("cannot measure the zero state");
  double total = 0.0;
  for (const auto& [config, p] : dist) total += p;
  if (total <= 0.0) throw PreconditionError("cannot measure the zero state");

  std::mt19937_64 rng(seed);
  const double u = uniform01(rng) * total;
  double cum = 0.0;
  std::size_t pick = dist.size() - 1;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    cum += dist[i].second;
    if (u < cum) {
      pick = i;
      break;
    }
  }

  MeasurementOutcome out;
  out.configuration = dist[pick].first;
  out.probability = dist[pick].second / total;
  out.collapsed.n_sites = state.n_sites;
  for (const auto& [key, amp] : state.amplitudes)
    if (CommandConfiguration::from_key(key) == out.configuration)
      out.collapsed.amplitudes.emplace(key, amp);
  out.collapsed.normalize();
  return out;
}

RegisterState replay(const CommandConfiguration& initial,
                     const CommandConfiguration& final_config, const RegisterState& registers,
                     const GateSet& gates) {
  RegisterState regs = registers;
  for (const ConfigMove& m :
       canonical_interleaving(initial, final_config, registers.n_sites))
    apply_hop(regs, m, gates);
  return regs;
}

ReplayResult replay_along(const ChainLayout& layout, const std::vector<ConfigMove>& path,
                          const GateSet& gates) {
  ReplayResult result;
  result.registers = initial_registers(layout);
  Frame frame(layout.n_sites, layout.pointer_site);
  for (const ConfigMove& m : path) {
    apply_hop(result.registers, m, gates);
    frame.apply(m);
  }
  result.qubit_site = frame.cur_of_orig;
  result.pointer_site = frame.pointer_site;
  return result;
}

ReplayResult replay(const ChainLayout& layout, const CommandConfiguration& config,
                    const GateSet& gates) {
  const auto path = canonical_interleaving(initial_configuration(layout), config, layout.n_sites);
  return replay_along(layout, path, gates);
}

bool success_predicate(const CommandConfiguration& config, const ChainLayout& layout) {
  layout.validate();
  std::vector<ConfigMove> path;
  try {
    path = canonical_interleaving(initial_configuration(layout), config, layout.n_sites);
  } catch (const std::invalid_argument&) {
    return false;  // not a configuration this layout can reach
  }
  const Frame frame = run_frame(layout, path);
  int min_window = std::numeric_limits<int>::max();
  for (int site : window_sites(layout, frame)) min_window = std::min(min_window, site);
  for (int j = 0; j < layout.program.l_p(); ++j)
    if (config.entries[j].first >= min_window) return false;
  return true;
}

std::map<std::string, double> readout(const ChainState& state, const ChainLayout& layout,
                                      const MeasurementOutcome& outcome) {
  if (!success_predicate(outcome.configuration, layout))
    throw PreconditionError("readout requires an outcome that passed the success predicate");
  const auto path = canonical_interleaving(initial_configuration(layout),
                                           outcome.configuration, layout.n_sites);
  const Frame frame = run_frame(layout, path);
  const std::vector<int> sites = window_sites(layout, frame);

  std::map<std::string, double> marginal;
  double total = 0.0;
  std::string bits(sites.size(), '0');
  for (const auto& [key, amp] : state.amplitudes) {
    if (!(CommandConfiguration::from_key(key) == outcome.configuration)) continue;
    for (std::size_t j = 0; j < sites.size(); ++j)
      bits[j] = static_cast<char>('0' + site_register(key[sites[j]]) / kPointerDim);
    marginal[bits] += std::norm(amp);
    total += std::norm(amp);
  }
  if (total <= 0.0)
    throw PreconditionError("state carries no weight on the outcome configuration");
  for (auto& [k, p] : marginal) p /= total;
  return marginal;
}

SubspaceEvolver::SubspaceEvolver(const ChainLayout& layout, Boundary boundary,
                                 const GateSet& gates, const EvolveOptions& opts)
    : layout_(layout), gates_(gates), opts_(opts) {
  layout_.validate();
  if (boundary == Boundary::Periodic) {
    // A command winding around the ring acts on the registers, which
    // breaks the configuration <-> register factorization. Only register
    // trivial layouts evolve correctly in the reduced picture.
    const bool all_l = layout_.program.real.find_first_not_of('L') == std::string::npos ||
                       layout_.program.real.empty();
    const bool zero_qubits = layout_.qubits.find_first_not_of('0') == std::string::npos ||
                             layout_.qubits.empty();
    if (!all_l || !zero_qubits)
      throw PreconditionError(
          "periodic subspace evolution requires an all-L program and all-zero qubits");
  }
  basis_ = enumerate_subspace(initial_configuration(layout_), layout_.n_sites, boundary,
                              opts_.max_dimension);
  h_ = basis_.adjacency().cast<Complex>();
  amps_ = Eigen::VectorXcd::Zero(basis_.size());
  amps_(0) = 1.0;
  if (static_cast<int>(basis_.size()) <= opts_.dense_threshold) {
    dense_ = true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(basis_.adjacency())};
    evecs_ = es.eigenvectors().cast<Complex>();
    evals_ = es.eigenvalues();
  }
}

void SubspaceEvolver::evolve(double t) {
  if (t == 0.0) return;
  if (dense_) {
    const Complex minus_i(0.0, -1.0);
    Eigen::VectorXcd phases(evals_.size());
    for (Eigen::Index i = 0; i < evals_.size(); ++i)
      phases(i) = std::exp(minus_i * t * evals_(i));
    amps_ = evecs_ * (phases.asDiagonal() * (evecs_.adjoint() * amps_));
  } else {
    krylov_expm_apply([this](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { y = h_ * x; },
                      amps_, t, KrylovOptions{opts_.tol, 60});
  }
}

double SubspaceEvolver::energy() const { return amps_.dot(h_ * amps_).real(); }

std::vector<std::pair<CommandConfiguration, double>> SubspaceEvolver::distribution() const {
  std::map<CommandConfiguration, double, ConfigLess> acc;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    acc[basis_.configs[i]] = std::norm(amps_(static_cast<Eigen::Index>(i)));
  return {acc.begin(), acc.end()};
}

MeasurementOutcome SubspaceEvolver::measure(std::uint64_t seed) const {
  const double total = amps_.squaredNorm();
  if (total <= 0.0) throw PreconditionError("cannot measure the zero state");
  const auto dist = distribution();
  std::mt19937_64 rng(seed);
  const double u = uniform01(rng) * total;
  double cum = 0.0;
  std::size_t pick = dist.size() - 1;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    cum += dist[i].second;
    if (u < cum) {
      pick = i;
      break;
    }
  }

  MeasurementOutcome out;
  out.configuration = dist[pick].first;
  out.probability = dist[pick].second / total;

  // The collapsed state factorizes as configuration (x) replayed registers.
  const ReplayResult rep = replay(layout_, out.configuration, gates_);
  out.collapsed.n_sites = layout_.n_sites;
  std::vector<Command> program(layout_.n_sites, Command::E);
  for (const auto& [site, tag] : out.configuration.entries) program[site] = tag;
  BasisKey key(layout_.n_sites, 0);
  for (const auto& [regs, amp] : rep.registers.amplitudes) {
    for (int s = 0; s < layout_.n_sites; ++s) key[s] = make_site(regs[s], program[s]);
    out.collapsed.amplitudes[key] += amp;
  }
  out.collapsed.normalize();
  return out;
}

double SubspaceEvolver::success_probability() const {
  const double total = amps_.squaredNorm();
  if (total <= 0.0) throw PreconditionError("cannot measure the zero state");
  if (success_cache_.empty()) {
    success_cache_.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
      success_cache_[i] = success_predicate(basis_.configs[i], layout_) ? 1 : 0;
  }
  double p = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (success_cache_[i]) p += std::norm(amps_(static_cast<Eigen::Index>(i)));
  return p / total;
}

std::map<std::string, double> SubspaceEvolver::readout(
    const CommandConfiguration& config) const {
  if (!success_predicate(config, layout_))
    throw PreconditionError("readout requires an outcome that passed the success predicate");
  const auto path =
      canonical_interleaving(initial_configuration(layout_), config, layout_.n_sites);
  const ReplayResult rep = replay_along(layout_, path, gates_);
  Frame frame = run_frame(layout_, path);
  const std::vector<int> sites = window_sites(layout_, frame);

  std::map<std::string, double> marginal;
  double total = 0.0;
  std::string bits(sites.size(), '0');
  for (const auto& [regs, amp] : rep.registers.amplitudes) {
    for (std::size_t j = 0; j < sites.size(); ++j)
      bits[j] = static_cast<char>('0' + regs[sites[j]] / kPointerDim);
    marginal[bits] += std::norm(amp);
    total += std::norm(amp);
  }
  for (auto& [k, p] : marginal) p /= total;
  return marginal;
}

}  // namespace qca
