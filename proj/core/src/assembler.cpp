#include "qca/assembler.hpp"

#include <fstream>
#include <stdexcept>

#include "qca/errors.hpp"
#include "qca/gates.hpp"

namespace qca {

namespace {

// Applies u to the ordered factor pair (bit_a, bit_b) of v; joint basis index
// is 2*bit_a + bit_b, matching g's (site qubit, internal qubit) convention.
void apply_pair(Eigen::VectorXcd& v, const Eigen::Matrix4cd& u, int bit_a, int bit_b) {
  const std::int64_t ma = std::int64_t{1} << bit_a;
  const std::int64_t mb = std::int64_t{1} << bit_b;
  for (std::int64_t base = 0; base < v.size(); ++base) {
    if (base & (ma | mb)) continue;
    const std::int64_t idx[4] = {base, base | mb, base | ma, base | ma | mb};
    const Eigen::Vector4cd in{v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
    const Eigen::Vector4cd out = u * in;
    for (int j = 0; j < 4; ++j) v[idx[j]] = out[j];
  }
}

Eigen::Matrix4cd swap_pair() {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 0) = 1;
  s(1, 2) = 1;
  s(2, 1) = 1;
  s(3, 3) = 1;
  return s;
}

void check_qubit_init(const std::string& qubit_init) {
  for (char c : qubit_init)
    if (c != '0' && c != '1')
      throw std::invalid_argument("qubit_init must be a string over {0,1}");
}

std::string full_commands(const CommandProgram& program) {
  std::string cmds = program.real;
  cmds.append(static_cast<std::size_t>(program.padding), 'L');
  return cmds;
}

}  // namespace

void Circuit::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("circuit: n_qubits must be at least 1");
  for (const auto& gate : gates) {
    if (gate.a < 0 || gate.a >= n_qubits)
      throw std::invalid_argument("circuit: gate qubit index out of range");
    if (gate.kind == GateKind::TwoQubit) {
      if (gate.b < 0 || gate.b >= n_qubits)
        throw std::invalid_argument("circuit: gate qubit index out of range");
      if (gate.a == gate.b)
        throw std::invalid_argument("circuit: two-qubit gate needs distinct qubits");
    }
  }
}

void to_json(nlohmann::json& j, const Circuit& c) {
  j = nlohmann::json{{"schema_version", 1}, {"n_qubits", c.n_qubits}};
  auto& gates = j["gates"] = nlohmann::json::array();
  for (const auto& gate : c.gates) {
    if (gate.kind == GateKind::TwoQubit)
      gates.push_back({{"g", "G"}, {"q", {gate.a, gate.b}}});
    else
      gates.push_back({{"g", "G1"}, {"q", {gate.a}}});
  }
}

void from_json(const nlohmann::json& j, Circuit& c) {
  c = Circuit{};
  c.n_qubits = j.at("n_qubits").get<int>();
  for (const auto& entry : j.at("gates")) {
    const auto name = entry.at("g").get<std::string>();
    const auto q = entry.at("q").get<std::vector<int>>();
    CircuitGate gate;
    if (q.size() == 2 && (name == "G" || name == "G2")) {
      gate = {GateKind::TwoQubit, q[0], q[1]};
    } else if (q.size() == 1 && (name == "G" || name == "G1")) {
      gate = {GateKind::OneQubit, q[0], -1};
    } else {
      throw std::invalid_argument("circuit: gate \"" + name + "\" with " +
                                  std::to_string(q.size()) + " qubit(s) is not recognized");
    }
    c.gates.push_back(gate);
  }
  c.validate();
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open circuit file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return j.get<Circuit>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("circuit file " + path + ": " + e.what());
  }
}

void save_circuit(const std::string& path, const Circuit& c) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open circuit file for writing: " + path);
  out << nlohmann::json(c).dump(2) << '\n';
}

CommandProgram compile(const Circuit& circuit, int pointer_start) {
  circuit.validate();
  if (pointer_start < 0 || pointer_start >= std::max(circuit.n_qubits, 1))
    throw std::invalid_argument("compile: pointer_start outside the qubit window");

  std::string out;
  int p = pointer_start;
  auto move_to = [&](int target) {
    for (; p < target; ++p) out += 'R';
    for (; p > target; --p) out += 'L';
  };
  for (const auto& gate : circuit.gates) {
    if (gate.kind == GateKind::TwoQubit) {
      move_to(gate.a);
      out += 'S';
      move_to(gate.b);
      out += 'G';
      move_to(gate.a);
      out += 'S';
    } else {
      move_to(gate.a);
      out += 'G';
    }
  }
  return CommandProgram{out, 0};
}

CommandProgram pad(const CommandProgram& program, int n_pad) {
  if (n_pad < 0) throw std::invalid_argument("pad: n_pad must be non-negative");
  CommandProgram padded = program;
  padded.padding += n_pad;
  return padded;
}

int recommended_padding(int l_p, int l_q) {
  if (l_p < 0 || l_q < 0) throw std::invalid_argument("recommended_padding: negative length");
  const long long side = l_p + l_q;
  const long long total = side * side;
  if (total < l_p) throw std::invalid_argument("recommended_padding: program longer than target");
  return static_cast<int>(total - l_p);
}

Eigen::VectorXcd MachineState::window_state() const {
  const int m = modeled_sites();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(std::int64_t{1} << (n_qubits + 1));
  double leaked = 0.0;
  for (std::int64_t idx = 0; idx < amplitudes.size(); ++idx) {
    const Complex amp = amplitudes[idx];
    if (amp == Complex{}) continue;
    std::int64_t widx = 0;
    bool scratch_clear = true;
    for (int bit = 0; bit < m; ++bit) {
      if (!((idx >> bit) & 1)) continue;
      const int site = lo + bit;
      if (site < 0 || site >= n_qubits) {
        scratch_clear = false;
        break;
      }
      widx |= std::int64_t{1} << site;
    }
    if (!scratch_clear) {
      leaked += std::norm(amp);
      continue;
    }
    if ((idx >> m) & 1) widx |= std::int64_t{1} << n_qubits;
    out[widx] += amp;
  }
  if (leaked > 1e-12)
    throw PreconditionError("window restriction requires scratch sites to remain in |0>");
  return out;
}

namespace {

MachineState interpret_impl(const CommandProgram& program, const std::string& qubit_init,
                            int pointer_start, const Eigen::Matrix4cd& g, int lo, int hi,
                            bool walled) {
  check_qubit_init(qubit_init);
  const int n = static_cast<int>(qubit_init.size());
  if (walled && (pointer_start < lo || pointer_start >= hi))
    throw RangeError("interpret: pointer_start outside the modeled range");
  if (lo > 0 || hi < n)
    throw std::invalid_argument("interpret: modeled range must contain the qubit window");
  const int m = hi - lo;
  if (m + 1 > 24) throw std::invalid_argument("interpret: modeled range too large to simulate");

  MachineState st;
  st.n_qubits = n;
  st.lo = lo;
  st.hi = hi;
  st.pointer = pointer_start;
  st.amplitudes = Eigen::VectorXcd::Zero(std::int64_t{1} << (m + 1));
  std::int64_t idx0 = 0;
  for (int q = 0; q < n; ++q)
    if (qubit_init[static_cast<std::size_t>(q)] == '1') idx0 |= std::int64_t{1} << (q - lo);
  st.amplitudes[idx0] = 1.0;

  const Eigen::Matrix4cd swap = swap_pair();
  for (char c : full_commands(program)) {
    switch (c) {
      case 'L':
        if (walled && st.pointer - 1 < lo)
          throw RangeError("interpret: pointer left the modeled range");
        --st.pointer;
        break;
      case 'R':
        if (walled && st.pointer + 1 >= hi)
          throw RangeError("interpret: pointer left the modeled range");
        ++st.pointer;
        break;
      case 'S':
      case 'G':
        if (st.pointer < lo || st.pointer >= hi)
          throw RangeError("interpret: gate fired outside the modeled range");
        apply_pair(st.amplitudes, c == 'S' ? swap : g, st.pointer - lo, m);
        break;
      default:
        throw std::invalid_argument("interpret: command string may contain only L, R, S, G");
    }
  }
  return st;
}

}  // namespace

MachineState interpret(const CommandProgram& program, const std::string& qubit_init,
                       int pointer_start, const Eigen::Matrix4cd& g) {
  const int n = static_cast<int>(qubit_init.size());
  // Only S and G touch site qubits; L and R just move the pointer. The dense
  // state therefore only needs the window plus every site a gate fires on,
  // which keeps long L padding walks from inflating the simulated space.
  int lo = 0;
  int hi = n;
  int p = pointer_start;
  for (char c : full_commands(program)) {
    if (c == 'L') --p;
    if (c == 'R') ++p;
    if (c == 'S' || c == 'G') {
      lo = std::min(lo, p);
      hi = std::max(hi, p + 1);
    }
  }
  return interpret_impl(program, qubit_init, pointer_start, g, lo, hi, false);
}

MachineState interpret(const CommandProgram& program, const std::string& qubit_init,
                       int pointer_start, const Eigen::Matrix4cd& g, int lo, int hi) {
  return interpret_impl(program, qubit_init, pointer_start, g, lo, hi, true);
}

Eigen::VectorXcd simulate_circuit(const Circuit& circuit, const Eigen::Matrix4cd& g,
                                  const std::string& qubit_init) {
  circuit.validate();
  check_qubit_init(qubit_init);
  if (static_cast<int>(qubit_init.size()) != circuit.n_qubits)
    throw std::invalid_argument("simulate_circuit: qubit_init length must equal n_qubits");
  const int n = circuit.n_qubits;

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(std::int64_t{1} << (n + 1));
  std::int64_t idx0 = 0;
  for (int q = 0; q < n; ++q)
    if (qubit_init[static_cast<std::size_t>(q)] == '1') idx0 |= std::int64_t{1} << q;
  v[idx0] = 1.0;

  const Eigen::Matrix4cd swap = swap_pair();
  for (const auto& gate : circuit.gates) {
    if (gate.kind == GateKind::TwoQubit) {
      // Same primitive sequence the pointer machine performs: load qubit a
      // into the internal slot, hit (qubit b, internal) with g, restore.
      apply_pair(v, swap, gate.a, n);
      apply_pair(v, g, gate.b, n);
      apply_pair(v, swap, gate.a, n);
    } else {
      apply_pair(v, g, gate.a, n);
    }
  }
  return v;
}

Eigen::Matrix4cd effective_two_qubit_gate(const Eigen::Matrix4cd& g) {
  // Conjugation by the pair swap permutes basis indices 1 <-> 2.
  constexpr int perm[4] = {0, 2, 1, 3};
  Eigen::Matrix4cd v;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) v(r, c) = g(perm[r], perm[c]);
  return v;
}

ChainLayout make_layout(const Circuit& circuit, const std::string& qubit_init,
                        const LayoutOptions& options) {
  circuit.validate();
  check_qubit_init(qubit_init);
  if (static_cast<int>(qubit_init.size()) != circuit.n_qubits)
    throw std::invalid_argument("make_layout: qubit_init length must equal n_qubits");
  if (circuit.n_qubits < 1)
    throw std::invalid_argument("make_layout: need at least one qubit");

  CommandProgram program = compile(circuit, options.pointer_start);
  const int l_q = circuit.n_qubits;
  const int n_pad =
      options.padding >= 0 ? options.padding : recommended_padding(program.l_p(), l_q);
  program = pad(program, n_pad);

  const int total = program.length();
  const int margin = options.left_margin >= 0 ? options.left_margin : total;

  ChainLayout layout;
  layout.qc_lo = margin;
  layout.qc_hi = margin + l_q;
  layout.n_sites = margin + l_q + total;
  layout.pointer_site = layout.qc_lo + options.pointer_start;
  layout.qubits = qubit_init;
  layout.program = program;
  layout.validate();
  return layout;
}

}  // namespace qca
