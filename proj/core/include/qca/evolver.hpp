#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qca/chain_state.hpp"
#include "qca/configuration.hpp"
#include "qca/hamiltonian.hpp"
#include "qca/krylov.hpp"
#include "qca/layout.hpp"

namespace qca {

struct EvolveOptions {
  double tol = 1e-10;                  // Lanczos propagator accuracy
  std::size_t max_dimension = 200000;  // cap on the closed basis
  int dense_threshold = 2048;          // exact eigensolver below, Lanczos above
};

// Exact evolution exp(-i t H) |state> on the reachable closure of the
// state's support. The closure is found by breadth first search over the
// nonzero columns of the two-site term; its size is capped by
// opts.max_dimension (ResourceLimitError beyond).
ChainState evolve(const ChainState& state, const ChainHamiltonian& h, double t,
                  const EvolveOptions& opts = {});

// Projective measurement of every program register.
struct MeasurementOutcome {
  CommandConfiguration configuration;
  double probability = 0.0;
  ChainState collapsed;  // renormalized restriction to the configuration
};

MeasurementOutcome measure_program(const ChainState& state, std::uint64_t seed);

// Full outcome distribution, sorted by configuration for determinism.
std::vector<std::pair<CommandConfiguration, double>> program_distribution(
    const ChainState& state);

// Register part of the chain: the (qubit, pointer) factors with the
// program registers stripped. Keys hold one index 0..5 per site
// (index = qubit*3 + pointer).
struct RegisterState {
  int n_sites = 0;
  AmplitudeMap amplitudes;
};

// Where the commands start and what the registers hold before evolution.
CommandConfiguration initial_configuration(const ChainLayout& layout);
RegisterState initial_registers(const ChainLayout& layout);

// Register state after the commands have moved from `initial` to `final`:
// every elementary leftward hop applies the command's register unitary
// across the crossed bond, every rightward hop its inverse. The hop order
// is a canonical interleaving; the result is interleaving independent.
// Throws std::invalid_argument when `final` is not reachable from
// `initial` by order preserving hops.
RegisterState replay(const CommandConfiguration& initial, const CommandConfiguration& final_config,
                     const RegisterState& registers, const GateSet& gates);

struct ReplayResult {
  RegisterState registers;
  // qubit_site[s] = current site of the qubit factor that started at site
  // s. L hops swap qubit factors, so the map is a permutation.
  std::vector<int> qubit_site;
  int pointer_site = 0;  // R hops carry the pointer with them
};

// Replay from a layout's own initial configuration and registers, also
// tracking the window frame.
ReplayResult replay(const ChainLayout& layout, const CommandConfiguration& config,
                    const GateSet& gates);

// Same, along an explicit hop sequence (for path independence checks).
ReplayResult replay_along(const ChainLayout& layout, const std::vector<ConfigMove>& path,
                          const GateSet& gates);

// True when every real program command (the first program.l_p() entries;
// trailing entries are padding) sits strictly left of every current
// window qubit site. The window may have moved: L hops drag qubit
// factors, so the current sites come from a position-only replay. A
// configuration that cannot arise from the layout yields false.
bool success_predicate(const CommandConfiguration& config, const ChainLayout& layout);

// Distribution over window bitstrings, window order, after restricting
// the state to the outcome configuration. The bits are read at the
// current (frame shifted) window sites. Precondition: the outcome
// satisfies success_predicate; PreconditionError otherwise.
std::map<std::string, double> readout(const ChainState& state, const ChainLayout& layout,
                                      const MeasurementOutcome& outcome);

// Evolution restricted to the invariant subspace of one configuration
// sector. The basis is the hop graph of the initial configuration and
// the effective Hamiltonian its 0/1 adjacency matrix; registers are
// reconstructed on demand by replay. On periodic chains this requires a
// register trivial layout (all L program, all zero qubits), since a
// command winding around the ring would otherwise act on the registers.
class SubspaceEvolver {
public:
  SubspaceEvolver(const ChainLayout& layout, Boundary boundary, const GateSet& gates,
                  const EvolveOptions& opts = {});

  const SubspaceBasis& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  const ChainLayout& layout() const { return layout_; }

  void evolve(double t);  // advances the current amplitudes by t

  double norm() const { return amps_.norm(); }
  double energy() const;  // <psi| H_eff |psi>

  std::vector<std::pair<CommandConfiguration, double>> distribution() const;
  MeasurementOutcome measure(std::uint64_t seed) const;
  double success_probability() const;
  // Window bitstring distribution conditioned on one configuration.
  std::map<std::string, double> readout(const CommandConfiguration& config) const;

private:
  ChainLayout layout_;
  GateSet gates_;
  EvolveOptions opts_;
  SubspaceBasis basis_;
  Eigen::SparseMatrix<Complex> h_;
  Eigen::VectorXcd amps_;
  bool dense_ = false;
  Eigen::MatrixXcd evecs_;  // dense path
  Eigen::VectorXd evals_;
  mutable std::vector<std::int8_t> success_cache_;
};

}  // namespace qca
