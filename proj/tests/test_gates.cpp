#include <cmath>
#include <complex>
#include <cstdio>

#include <Eigen/Dense>

#include "doctest.h"

#include "qca/errors.hpp"
#include "qca/gates.hpp"

using namespace qca;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Complex = std::complex<double>;

namespace {

int pair_index(int q_left, int p_left, int q_right, int p_right) {
  return (q_left * 3 + p_left) * 6 + (q_right * 3 + p_right);
}

bool is_unitary(const MatrixXcd& u, double tol) {
  return (u.adjoint() * u - MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_SUITE("gates") {

TEST_CASE("all four command unitaries are unitary on the 36-state pair space") {
  const GateSet gates = GateSet::with_default_gate();
  for (Command c : {Command::L, Command::R, Command::S, Command::G}) {
    const MatrixXcd& u = gates.gate_unitary(c);
    REQUIRE(u.rows() == kRegisterPairDim);
    REQUIRE(u.cols() == kRegisterPairDim);
    CHECK(is_unitary(u, 1e-12));
  }
  CHECK_THROWS_AS(gates.gate_unitary(Command::E), std::invalid_argument);
}

TEST_CASE("L swaps the two site qubits") {
  const GateSet gates = GateSet::with_default_gate();
  const MatrixXcd& u = gates.gate_unitary(Command::L);
  for (int ql = 0; ql < 2; ++ql)
    for (int pl = 0; pl < 3; ++pl)
      for (int qr = 0; qr < 2; ++qr)
        for (int pr = 0; pr < 3; ++pr) {
          const int in = pair_index(ql, pl, qr, pr);
          const int out = pair_index(qr, pl, ql, pr);
          CHECK(u(out, in) == Complex(1.0, 0.0));
        }
}

TEST_CASE("R swaps the two pointer registers") {
  const GateSet gates = GateSet::with_default_gate();
  const MatrixXcd& u = gates.gate_unitary(Command::R);
  for (int ql = 0; ql < 2; ++ql)
    for (int pl = 0; pl < 3; ++pl)
      for (int qr = 0; qr < 2; ++qr)
        for (int pr = 0; pr < 3; ++pr) {
          const int in = pair_index(ql, pl, qr, pr);
          const int out = pair_index(ql, pr, qr, pl);
          CHECK(u(out, in) == Complex(1.0, 0.0));
        }
}

TEST_CASE("S is controlled on a left-site pointer and swaps its internal qubit in") {
  const GateSet gates = GateSet::with_default_gate();
  const MatrixXcd& u = gates.gate_unitary(Command::S);
  for (int ql = 0; ql < 2; ++ql)
    for (int pl = 0; pl < 3; ++pl)
      for (int qr = 0; qr < 2; ++qr)
        for (int pr = 0; pr < 3; ++pr) {
          const int in = pair_index(ql, pl, qr, pr);
          int out = in;  // pointer absent on the left: identity
          if (pl != 0) {
            const int internal = pl - 1;
            out = pair_index(internal, 1 + ql, qr, pr);
          }
          CHECK(u(out, in) == Complex(1.0, 0.0));
        }
}

TEST_CASE("G applies g to (left site qubit, internal qubit) under the same control") {
  const GateSet gates = GateSet::with_default_gate();
  const Matrix4cd& g = gates.g_gate();
  const MatrixXcd& u = gates.gate_unitary(Command::G);
  for (int ql = 0; ql < 2; ++ql)
    for (int pl = 0; pl < 3; ++pl)
      for (int qr = 0; qr < 2; ++qr)
        for (int pr = 0; pr < 3; ++pr) {
          const int in = pair_index(ql, pl, qr, pr);
          if (pl == 0) {
            CHECK(u(in, in) == Complex(1.0, 0.0));
            continue;
          }
          const int joint_in = 2 * ql + (pl - 1);  // 2*site_bit + internal_bit
          for (int joint_out = 0; joint_out < 4; ++joint_out) {
            const int out = pair_index(joint_out / 2, 1 + joint_out % 2, qr, pr);
            CHECK(u(out, in) == g(joint_out, joint_in));
          }
        }
}

TEST_CASE("default gate is CPHASE(pi/2) after a pi/8 y-rotation of the site qubit") {
  const Matrix4cd g = default_g_gate();
  const double c = std::cos(M_PI / 16), s = std::sin(M_PI / 16);
  Matrix4cd ry_x_id = Matrix4cd::Zero();
  // Joint index = 2*site + internal; Ry acts on the site bit.
  ry_x_id(0, 0) = c;  ry_x_id(0, 2) = -s;
  ry_x_id(1, 1) = c;  ry_x_id(1, 3) = -s;
  ry_x_id(2, 0) = s;  ry_x_id(2, 2) = c;
  ry_x_id(3, 1) = s;  ry_x_id(3, 3) = c;
  Matrix4cd cphase = Matrix4cd::Identity();
  cphase(3, 3) = Complex(0.0, 1.0);
  CHECK((g - cphase * ry_x_id).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(is_unitary(g, 1e-14));
}

TEST_CASE("default gate leaves the internal |0> sector closed") {
  const Matrix4cd g = default_g_gate();
  // Columns with internal bit 0 never populate internal bit 1.
  CHECK(g(1, 0) == Complex(0.0));
  CHECK(g(3, 0) == Complex(0.0));
  CHECK(g(1, 2) == Complex(0.0));
  CHECK(g(3, 2) == Complex(0.0));
}

TEST_CASE("custom gates are accepted when unitary and rejected otherwise") {
  Matrix4cd swap = Matrix4cd::Zero();
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  const GateSet custom = GateSet::with_gate(swap);
  CHECK((custom.g_gate() - swap).cwiseAbs().maxCoeff() == 0.0);
  CHECK(is_unitary(custom.gate_unitary(Command::G), 1e-12));

  Matrix4cd bad = Matrix4cd::Identity();
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(GateSet::with_gate(bad), std::invalid_argument);
}

TEST_CASE("gate file roundtrip is exact") {
  const std::string path = "g_gate_roundtrip_tmp.json";
  const Matrix4cd g = default_g_gate();
  save_g_gate(g, path);
  const Matrix4cd back = load_g_gate(path);
  CHECK((back - g).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
  CHECK_THROWS(load_g_gate("missing_gate_tmp.json"));
}

}  // TEST_SUITE
