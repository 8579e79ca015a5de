#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace qca::qma {

// Nearest-neighbor chain Hamiltonian h = sum_j bond[j] acting on sites
// (j, j+1) of an open chain of n sites with d levels each.  Every bond is a
// d^2 x d^2 Hermitian matrix (row-major pair index s_left*d + s_right).
struct InputHamiltonian {
  int n = 0;
  int d = 0;
  std::vector<Eigen::MatrixXcd> bonds;

  // Throws std::invalid_argument on shape mismatch or a bond that is not
  // Hermitian within 1e-12.
  void validate() const;

  // Dense assembly on the d^n-dimensional chain space.
  Eigen::MatrixXcd dense() const;
};

// JSON form: {"n":2,"d":2,"bonds":[[[ [re,im], ... ] x d^2 rows ] ...]}
void to_json(nlohmann::json& j, const InputHamiltonian& h);
void from_json(const nlohmann::json& j, InputHamiltonian& h);
InputHamiltonian load_input_hamiltonian(const std::string& path);
void save_input_hamiltonian(const std::string& path, const InputHamiltonian& h);

// Penalty eigenvalue (1 - w + w*(w-1)) / (n*(n-1)) for a control-qubit
// configuration with w ones; zero exactly at w = 1.  The pair sum runs over
// ordered pairs, as written.
double h_prime_eigenvalue(int n, int w);

// Diagonal of the penalty operator on n control qubits in the product basis
// (bit k of the index = qubit k).  Requires n >= 2.
Eigen::VectorXd build_h_prime(int n);

// The translationally invariant wrapper: a ring of length sites (a multiple
// of n+1), local dimension 2d = (control qubit) x (d inner levels).  The
// operator is  H = H' + (1/n) * sum_{i ring} |1><1|_i (x) h^(i+1..i+n),
// where H' is the penalty diagonal over all ring control qubits and each
// controlled copy of h lives on the inner levels of the n sites following
// the control.  Every elementary term touches at most 3 sites.
class TiQmaHamiltonian {
 public:
  TiQmaHamiltonian(InputHamiltonian input, int ring_multiplier = 1);

  int n() const { return input_.n; }
  int d() const { return input_.d; }
  int length() const { return length_; }
  std::int64_t dim() const { return dim_; }
  const InputHamiltonian& input() const { return input_; }

  // Matrix-free action out = H * in.
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;

  // Dense assembly; throws ResourceLimitError above 4096 dimensions.
  Eigen::MatrixXcd dense() const;

 private:
  InputHamiltonian input_;
  int length_ = 0;
  std::int64_t dim_ = 0;
};

TiQmaHamiltonian build_ti_qma(const InputHamiltonian& input, int ring_multiplier = 1);

enum class EigMethod { Dense, Iterative };

// Minimal eigenvalue of a Hermitian matrix.  The iterative path runs the
// restarted extremal Lanczos iteration and throws NumericalError with the
// achieved residual if it fails to converge.
double min_eigenvalue(const Eigen::MatrixXcd& h, EigMethod method = EigMethod::Dense,
                      double tol = 1e-9);
double min_eigenvalue(const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
                      std::int64_t dim, double tol = 1e-9);

enum class Verdict { ZeroEnergy, GappedAboveBound, Violation };

std::string verdict_name(Verdict v);

struct SpectrumResult {
  int n = 0;
  int d = 0;
  double lambda_min_input = 0.0;  // minimal eigenvalue of the input chain h
  double e0 = 0.0;                // minimal eigenvalue of the wrapper H
  double gap_bound = 0.0;         // min(lambda_min_input/n, 1/(n^2*(n-1)))
  Verdict verdict = Verdict::Violation;
};

void to_json(nlohmann::json& j, const SpectrumResult& r);

struct VerifyOptions {
  double zero_tol = 1e-9;    // |e0| below this reports zero-energy
  int ring_multiplier = 1;
  std::int64_t dense_cap = 4096;  // largest dimension diagonalized densely
};

// Diagonalizes both the input chain and the wrapper and classifies the
// spectrum: zero-energy when |e0| < zero_tol, gapped-above-bound when
// e0 >= gap_bound - zero_tol, violation otherwise (a test-failure signal,
// impossible for valid promise instances).  Throws ResourceLimitError when
// either dense diagonalization would exceed dense_cap.
SpectrumResult verify_promise(const InputHamiltonian& input, const VerifyOptions& options = {});

}  // namespace qca::qma
