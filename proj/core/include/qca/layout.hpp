#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qca/chain_state.hpp"

namespace qca {

// A program is its real command string plus a count of trailing L
// commands ("padding"): irrelevant code that biases transport leftward
// without affecting the computation.
struct CommandProgram {
  std::string real;  // characters L R S G
  int padding = 0;

  int l_p() const { return static_cast<int>(real.size()); }
  int length() const { return l_p() + padding; }

  friend bool operator==(const CommandProgram&, const CommandProgram&) = default;
};

// Static layout of a run: where the qubits sit, where the pointer starts,
// and the command string written to the right of the qubit window.
//
// Sites [qc_lo, qc_hi) hold the data qubits ("qc window", half open).
// The program occupies sites [qc_hi, qc_hi + program.length()); the
// trailing padding sites hold L commands. All other program registers
// are empty. The boundary condition is not part of the layout; it is a
// property of the Hamiltonian acting on it.
struct ChainLayout {
  int n_sites = 0;
  int qc_lo = 0;
  int qc_hi = 0;
  int pointer_site = 0;  // pointer register starts here, in state P0
  CommandProgram program;
  std::string qubits;  // characters 0 1, one per window site

  int window_size() const { return qc_hi - qc_lo; }
  int program_lo() const { return qc_hi; }
  int program_hi() const { return qc_hi + program.length(); }

  // Command at program slot i (0-based), padding slots included.
  char program_char(int i) const {
    return i < program.l_p() ? program.real[static_cast<std::size_t>(i)] : 'L';
  }

  // Throws LayoutError if any field is out of range or inconsistent.
  void validate() const;
};

void to_json(nlohmann::json& j, const ChainLayout& layout);
void from_json(const nlohmann::json& j, ChainLayout& layout);

ChainLayout load_layout(const std::string& path);
void save_layout(const ChainLayout& layout, const std::string& path);

// Product state described by the layout: qubits in the window, P0 pointer
// at pointer_site, program plus L padding right of the window, all other
// registers empty.
ChainState make_initial_state(const ChainLayout& layout);

// Same, with the qubit string and program supplied separately (they
// replace whatever the layout carries).
ChainState make_initial_state(ChainLayout layout, const std::string& qubit_init,
                              const CommandProgram& program);

}  // namespace qca
