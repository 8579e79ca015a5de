#pragma once

#include <functional>

#include <Eigen/Dense>

#include "qca/chain_state.hpp"

namespace qca {

using ApplyFn = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct KrylovOptions {
  double tol = 1e-10;  // relative accuracy of the final vector
  int max_basis = 60;  // Lanczos vectors per substep
};

struct KrylovReport {
  int substeps = 0;
  int matvecs = 0;
  double error_estimate = 0.0;  // accumulated a posteriori bound, relative
};

// v <- exp(-i t H) v for Hermitian H given through its action. Lanczos
// with full reorthogonalization; the time step halves until the standard
// a posteriori estimate fits the per-step error budget. Throws
// NumericalError if the step underflows without converging.
KrylovReport krylov_expm_apply(const ApplyFn& apply_h, Eigen::VectorXcd& v, double t,
                               const KrylovOptions& opts = {});

struct ExtremalReport {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Smallest eigenvalue of a Hermitian operator by restarted Lanczos.
// Deterministic: the start vector comes from a fixed-seed generator.
// Converges when ||H x - theta x|| <= tol * max(1, |theta|).
ExtremalReport lanczos_min_eigenvalue(const ApplyFn& apply_h, int dim, double tol = 1e-10,
                                      int max_restarts = 800);

}  // namespace qca
