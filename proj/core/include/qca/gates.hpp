#pragma once

#include <string>

#include <Eigen/Dense>

#include "qca/site.hpp"

namespace qca {

// Two-site register space: (qubit, pointer) of the left site tensor the
// same of the right site, 6*6 = 36 states. Pair index = left*6 + right.
constexpr int kRegisterPairDim = kRegisterDim * kRegisterDim;

// The four command unitaries on the two-site register space.
//
//   L: swap the two site qubits.
//   R: swap the two pointer registers.
//   S: if the pointer sits on the left site, swap the left site qubit
//      with the pointer's internal qubit; otherwise identity.
//   G: if the pointer sits on the left site, apply the two-qubit gate g
//      to (left site qubit, pointer internal qubit); otherwise identity.
//
// g is pluggable; the default is CPHASE(pi/2) * (Ry(pi/8) x 1) with the
// site qubit as first tensor factor.
class GateSet {
public:
  static GateSet with_default_gate();
  // Throws std::invalid_argument if g is not unitary to 1e-12.
  static GateSet with_gate(const Eigen::Matrix4cd& g);

  const Eigen::Matrix4cd& g_gate() const { return g_; }
  // The 36x36 unitary for a command. Throws std::invalid_argument for E.
  const Eigen::MatrixXcd& gate_unitary(Command c) const;

private:
  GateSet() = default;
  Eigen::Matrix4cd g_;
  Eigen::MatrixXcd u_l_, u_r_, u_s_, u_g_;
};

Eigen::Matrix4cd default_g_gate();

// JSON file with a single 4x4 complex matrix:
//   {"schema_version": 1, "g_gate": [[[re, im], ...], ...]}  (row major)
Eigen::Matrix4cd load_g_gate(const std::string& path);
void save_g_gate(const Eigen::Matrix4cd& g, const std::string& path);

}  // namespace qca
