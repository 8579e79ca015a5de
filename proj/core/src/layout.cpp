#include "qca/layout.hpp"

#include <fstream>

#include "qca/errors.hpp"
#include "qca/site.hpp"

namespace qca {

namespace {
constexpr int kSchemaVersion = 1;

void check_schema_version(const nlohmann::json& j) {
  if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion)
    throw LayoutError("unsupported schema_version, expected 1");
}
}  // namespace

void ChainLayout::validate() const {
  if (n_sites < 1) throw LayoutError("n_sites must be at least 1");
  if (qc_lo < 0 || qc_hi < qc_lo || qc_hi > n_sites)
    throw LayoutError("qc_window out of range");
  if (static_cast<int>(qubits.size()) != window_size())
    throw LayoutError("qubits string length must equal the qc_window size");
  for (char c : qubits)
    if (c != '0' && c != '1') throw LayoutError("qubits string may contain only 0 and 1");
  if (pointer_site < 0 || pointer_site >= n_sites)
    throw LayoutError("pointer_site out of range");
  if (program.padding < 0) throw LayoutError("padding must be nonnegative");
  for (char c : program.real) {
    Command cmd = command_from_char(c);
    if (!is_real_command(cmd))
      throw LayoutError("program may contain only the commands L R S G");
  }
  if (program_hi() > n_sites)
    throw LayoutError("program plus padding does not fit on the chain");
}

void to_json(nlohmann::json& j, const ChainLayout& layout) {
  j = nlohmann::json{
      {"schema_version", kSchemaVersion},
      {"n_sites", layout.n_sites},
      {"qc_window", {layout.qc_lo, layout.qc_hi}},
      {"pointer_site", layout.pointer_site},
      {"program", layout.program.real},
      {"qubits", layout.qubits},
      {"padding", layout.program.padding},
  };
}

void from_json(const nlohmann::json& j, ChainLayout& layout) {
  check_schema_version(j);
  try {
    layout.n_sites = j.at("n_sites").get<int>();
    const auto& w = j.at("qc_window");
    if (!w.is_array() || w.size() != 2)
      throw LayoutError("qc_window must be a two-element array [lo, hi)");
    layout.qc_lo = w[0].get<int>();
    layout.qc_hi = w[1].get<int>();
    layout.pointer_site = j.value("pointer_site", layout.qc_lo);
    layout.program.real = j.at("program").get<std::string>();
    layout.program.padding = j.value("padding", 0);
    layout.qubits = j.at("qubits").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw LayoutError(std::string("malformed layout json: ") + e.what());
  }
  layout.validate();
}

ChainLayout load_layout(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LayoutError("cannot open layout file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw LayoutError(std::string("cannot parse layout file: ") + e.what());
  }
  return j.get<ChainLayout>();
}

void save_layout(const ChainLayout& layout, const std::string& path) {
  layout.validate();
  std::ofstream out(path);
  if (!out) throw LayoutError("cannot open output file: " + path);
  nlohmann::json j = layout;
  out << j.dump(2) << "\n";
}

ChainState make_initial_state(const ChainLayout& layout) {
  layout.validate();
  BasisKey key(layout.n_sites, encode_site({0, PointerState::Absent, Command::E}));
  for (int i = 0; i < layout.window_size(); ++i) {
    SiteBasis s = decode_site(key[layout.qc_lo + i]);
    s.qubit = static_cast<std::uint8_t>(layout.qubits[i] - '0');
    key[layout.qc_lo + i] = encode_site(s);
  }
  for (int i = 0; i < layout.program.length(); ++i) {
    SiteBasis s = decode_site(key[layout.program_lo() + i]);
    s.program = command_from_char(layout.program_char(i));
    key[layout.program_lo() + i] = encode_site(s);
  }
  {
    SiteBasis s = decode_site(key[layout.pointer_site]);
    s.pointer = PointerState::P0;
    key[layout.pointer_site] = encode_site(s);
  }
  ChainState state;
  state.n_sites = layout.n_sites;
  state.amplitudes.emplace(std::move(key), Complex(1.0, 0.0));
  return state;
}

ChainState make_initial_state(ChainLayout layout, const std::string& qubit_init,
                              const CommandProgram& program) {
  layout.qubits = qubit_init;
  layout.program = program;
  return make_initial_state(layout);
}

}  // namespace qca
