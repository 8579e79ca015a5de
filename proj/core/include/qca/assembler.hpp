#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qca/layout.hpp"

namespace qca {

// An abstract circuit over logical qubits 0..n_qubits-1.  Two-qubit gates
// apply the effective pair unitary realized by the load-move-apply-return
// template; one-qubit gates apply the raw g gate between the target qubit and
// the pointer-internal qubit (which starts, and with the default gate stays,
// in |0>).
enum class GateKind : std::uint8_t { OneQubit, TwoQubit };

struct CircuitGate {
  GateKind kind = GateKind::TwoQubit;
  int a = 0;   // target qubit (OneQubit) or the loaded qubit (TwoQubit)
  int b = -1;  // remote qubit for TwoQubit; unused otherwise

  bool operator==(const CircuitGate&) const = default;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<CircuitGate> gates;

  // Throws std::invalid_argument when there are no qubits, on out-of-range
  // indices, or on a two-qubit gate with coincident endpoints.
  void validate() const;

  bool operator==(const Circuit&) const = default;
};

// JSON form: {"schema_version":1, "n_qubits":2,
//             "gates":[{"g":"G","q":[0,1]}, {"g":"G1","q":[0]}]}
// "G" and "G2" both name the two-qubit gate; "G1" the one-qubit form.
void to_json(nlohmann::json& j, const Circuit& c);
void from_json(const nlohmann::json& j, Circuit& c);
Circuit load_circuit(const std::string& path);
void save_circuit(const std::string& path, const Circuit& c);

// Translates a circuit into a command string over {L,R,S,G}.  Per two-qubit
// gate (a,b): move the pointer to a, S to load qubit a into the pointer,
// move to b, G, move back to a, S to restore.  Per one-qubit gate: move to
// the target and apply G directly.  Every logical qubit ends at its home
// site and the pointer ends at the last gate's anchor, so programs
// concatenate.  Pure function of its arguments.
CommandProgram compile(const Circuit& circuit, int pointer_start = 0);

// Appends n_pad trailing L commands (irrelevant code).  They only walk the
// pointer left through already-finished scratch sites, so the computation on
// the qubit window is unchanged.
CommandProgram pad(const CommandProgram& program, int n_pad);

// Padding that brings the total command count to (l_p + l_q)^2, the sizing
// under which the transport success bound stays above 0.65 for l_p+l_q >= 20.
int recommended_padding(int l_p, int l_q);

// Final state of the abstract pointer machine: qubits live on modeled sites
// [lo, hi) (a superset of the window [0, n_qubits)), plus the pointer's
// internal qubit.  amplitudes has dimension 2^(hi-lo+1); bit (s - lo) holds
// the qubit at site s and the top bit holds the internal qubit.
struct MachineState {
  int n_qubits = 0;
  int lo = 0;
  int hi = 0;
  int pointer = 0;
  Eigen::VectorXcd amplitudes;

  int modeled_sites() const { return hi - lo; }

  // Restriction to (window qubits, internal qubit): dimension 2^(n_qubits+1),
  // bit q = qubit q, top bit = internal.  Throws PreconditionError if any
  // amplitude weight sits outside the all-zero scratch block.
  Eigen::VectorXcd window_state() const;
};

// Runs the sequential semantics: L/R move the pointer, S swaps the site qubit
// under the pointer with the internal qubit, G applies g to (site qubit,
// internal qubit).  qubit_init is a '0'/'1' string giving the window
// contents; sites outside the window start in |0>.  The modeled range is
// sized automatically from the window and the sites S or G fire on; pointer
// movement itself is unbounded (L/R only shift an index), so long padding
// walks cost nothing and never fail.
MachineState interpret(const CommandProgram& program, const std::string& qubit_init,
                       int pointer_start, const Eigen::Matrix4cd& g);

// Same, with an explicit modeled range [lo, hi); a pointer move leaving the
// range throws RangeError.
MachineState interpret(const CommandProgram& program, const std::string& qubit_init,
                       int pointer_start, const Eigen::Matrix4cd& g, int lo, int hi);

// Direct gate-by-gate simulation of the circuit on (n_qubits window, internal
// qubit), dimension 2^(n_qubits+1) with the same bit layout as
// MachineState::window_state().  Ground truth for compile/interpret.
Eigen::VectorXcd simulate_circuit(const Circuit& circuit, const Eigen::Matrix4cd& g,
                                  const std::string& qubit_init);

// The pair unitary a two-qubit gate performs on (qubit a, qubit b): the raw g
// conjugated by the load/restore swaps, i.e. entries reindexed so the remote
// qubit takes g's site slot and the loaded qubit g's internal slot.
Eigen::Matrix4cd effective_two_qubit_gate(const Eigen::Matrix4cd& g);

// Chain layout for a compiled program: window of n_qubits sites with the
// full command block (real program + padding) to its right and an equal-size
// empty margin on the left, so every command can finish strictly left of the
// window.  padding < 0 selects recommended_padding; left_margin < 0 selects
// the total command count.
struct LayoutOptions {
  int pointer_start = 0;
  int padding = -1;
  int left_margin = -1;
};

ChainLayout make_layout(const Circuit& circuit, const std::string& qubit_init,
                        const LayoutOptions& options = {});

}  // namespace qca
