#include "qca/gates.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qca/errors.hpp"

namespace qca {

using Complex = std::complex<double>;

namespace {

constexpr int kQ = 6;  // single-site register dim

int reg_index(int qubit, PointerState p) { return qubit * kPointerDim + static_cast<int>(p); }
int reg_qubit(int reg) { return reg / kPointerDim; }
PointerState reg_pointer(int reg) { return static_cast<PointerState>(reg % kPointerDim); }

int pair_index(int left, int right) { return left * kQ + right; }

Eigen::MatrixXcd build_swap_qubits() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(kRegisterPairDim, kRegisterPairDim);
  for (int a = 0; a < kQ; ++a)
    for (int b = 0; b < kQ; ++b) {
      const int a2 = reg_index(reg_qubit(b), reg_pointer(a));
      const int b2 = reg_index(reg_qubit(a), reg_pointer(b));
      u(pair_index(a2, b2), pair_index(a, b)) = 1.0;
    }
  return u;
}

Eigen::MatrixXcd build_swap_pointers() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(kRegisterPairDim, kRegisterPairDim);
  for (int a = 0; a < kQ; ++a)
    for (int b = 0; b < kQ; ++b) {
      const int a2 = reg_index(reg_qubit(a), reg_pointer(b));
      const int b2 = reg_index(reg_qubit(b), reg_pointer(a));
      u(pair_index(a2, b2), pair_index(a, b)) = 1.0;
    }
  return u;
}

// Controlled on the pointer being present at the left site, act with a
// 4x4 gate on (left site qubit, pointer internal qubit). The right site
// and pointer-absent states pass through.
Eigen::MatrixXcd build_pointer_controlled(const Eigen::Matrix4cd& gate) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(kRegisterPairDim, kRegisterPairDim);
  for (int a = 0; a < kQ; ++a)
    for (int b = 0; b < kQ; ++b) {
      const PointerState p = reg_pointer(a);
      const int in = pair_index(a, b);
      if (p == PointerState::Absent) {
        u(in, in) = 1.0;
        continue;
      }
      const int q = reg_qubit(a);
      const int internal = p == PointerState::P0 ? 0 : 1;
      for (int q2 = 0; q2 < 2; ++q2)
        for (int i2 = 0; i2 < 2; ++i2) {
          const Complex amp = gate(q2 * 2 + i2, q * 2 + internal);
          if (amp == Complex(0.0)) continue;
          const int a2 = reg_index(q2, i2 == 0 ? PointerState::P0 : PointerState::P1);
          u(pair_index(a2, b), in) += amp;
        }
    }
  return u;
}

Eigen::Matrix4cd swap_gate() {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 0) = s(3, 3) = 1.0;
  s(1, 2) = s(2, 1) = 1.0;
  return s;
}

}  // namespace

Eigen::Matrix4cd default_g_gate() {
  const double theta = M_PI / 8.0;
  Eigen::Matrix2cd ry;
  ry << std::cos(theta / 2.0), -std::sin(theta / 2.0),
        std::sin(theta / 2.0),  std::cos(theta / 2.0);
  Eigen::Matrix4cd cphase = Eigen::Matrix4cd::Identity();
  cphase(3, 3) = std::exp(Complex(0.0, M_PI / 2.0));
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
  // Ry on the site qubit (first factor), identity on the internal qubit.
  for (int q = 0; q < 2; ++q)
    for (int q2 = 0; q2 < 2; ++q2)
      for (int i = 0; i < 2; ++i) g(q2 * 2 + i, q * 2 + i) = ry(q2, q);
  return cphase * g;
}

GateSet GateSet::with_default_gate() { return with_gate(default_g_gate()); }

GateSet GateSet::with_gate(const Eigen::Matrix4cd& g) {
  const double dev = (g.adjoint() * g - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
  if (dev > 1e-12)
    throw std::invalid_argument("g gate is not unitary (deviation " + std::to_string(dev) + ")");
  GateSet gs;
  gs.g_ = g;
  gs.u_l_ = build_swap_qubits();
  gs.u_r_ = build_swap_pointers();
  gs.u_s_ = build_pointer_controlled(swap_gate());
  gs.u_g_ = build_pointer_controlled(g);
  return gs;
}

const Eigen::MatrixXcd& GateSet::gate_unitary(Command c) const {
  switch (c) {
    case Command::L: return u_l_;
    case Command::R: return u_r_;
    case Command::S: return u_s_;
    case Command::G: return u_g_;
    case Command::E: break;
  }
  throw std::invalid_argument("no unitary is associated with the empty command");
}

Eigen::Matrix4cd load_g_gate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LayoutError("cannot open gate file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw LayoutError(std::string("cannot parse gate file: ") + e.what());
  }
  if (j.contains("schema_version") && j.at("schema_version").get<int>() != 1)
    throw LayoutError("unsupported schema_version in gate file, expected 1");
  Eigen::Matrix4cd g;
  try {
    const auto& rows = j.at("g_gate");
    if (!rows.is_array() || rows.size() != 4) throw LayoutError("g_gate must be a 4x4 matrix");
    for (int r = 0; r < 4; ++r) {
      if (!rows[r].is_array() || rows[r].size() != 4)
        throw LayoutError("g_gate must be a 4x4 matrix");
      for (int c = 0; c < 4; ++c) {
        const auto& e = rows[r][c];
        if (!e.is_array() || e.size() != 2)
          throw LayoutError("g_gate entries must be [re, im] pairs");
        g(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw LayoutError(std::string("malformed gate file: ") + e.what());
  }
  return g;
}

void save_g_gate(const Eigen::Matrix4cd& g, const std::string& path) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 4; ++c) row.push_back({g(r, c).real(), g(r, c).imag()});
    rows.push_back(row);
  }
  std::ofstream out(path);
  if (!out) throw LayoutError("cannot open output file: " + path);
  out << nlohmann::json{{"schema_version", 1}, {"g_gate", rows}}.dump(2) << "\n";
}

}  // namespace qca
