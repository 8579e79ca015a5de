#include "qca/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qca/errors.hpp"

namespace qca {

namespace {

// One Lanczos sweep of up to m steps from start (assumed normalized).
// Fills the basis and the tridiagonal coefficients; returns the number of
// basis vectors built and the out-of-basis beta (0 on happy breakdown).
struct LanczosSweep {
  std::vector<Eigen::VectorXcd> basis;
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis[j] and basis[j+1]
  double beta_out = 0.0;
  int matvecs = 0;
};

LanczosSweep lanczos_sweep(const ApplyFn& apply_h, const Eigen::VectorXcd& start, int m) {
  LanczosSweep s;
  s.basis.push_back(start);
  Eigen::VectorXcd w(start.size());
  double scale = 1.0;
  for (int j = 0; j < m; ++j) {
    apply_h(s.basis[j], w);
    ++s.matvecs;
    const double a = s.basis[j].dot(w).real();
    s.alpha.push_back(a);
    w -= a * s.basis[j];
    if (j > 0) w -= s.beta[j - 1] * s.basis[j - 1];
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const Eigen::VectorXcd& v : s.basis) w -= v.dot(w) * v;
    const double b = w.norm();
    scale = std::max({scale, std::abs(a), b});
    if (j + 1 == m || b <= 1e-14 * scale) {
      s.beta_out = b <= 1e-14 * scale ? 0.0 : b;
      break;
    }
    s.beta.push_back(b);
    s.basis.push_back(w / b);
  }
  return s;
}

Eigen::MatrixXd tridiagonal(const LanczosSweep& s) {
  const int k = static_cast<int>(s.basis.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    t(i, i) = s.alpha[i];
    if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = s.beta[i];
  }
  return t;
}

}  // namespace

KrylovReport krylov_expm_apply(const ApplyFn& apply_h, Eigen::VectorXcd& v, double t,
                               const KrylovOptions& opts) {
  KrylovReport report;
  const double vnorm = v.norm();
  if (t == 0.0 || vnorm == 0.0) return report;

  const double total = std::abs(t);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  double remaining = total;
  double dt = total;
  const Complex minus_i(0.0, -1.0);

  while (remaining > 0.0) {
    dt = std::min(dt, remaining);
    const double nv = v.norm();
    LanczosSweep sweep = lanczos_sweep(apply_h, v / nv, opts.max_basis);
    report.matvecs += sweep.matvecs;
    const int k = static_cast<int>(sweep.basis.size());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal(sweep));
    const Eigen::VectorXd overlaps = es.eigenvectors().row(0).transpose();

    for (;;) {
      Eigen::VectorXcd u(k);
      for (int i = 0; i < k; ++i) {
        Complex acc = 0.0;
        for (int q = 0; q < k; ++q)
          acc += es.eigenvectors()(i, q) *
                 std::exp(minus_i * (sgn * dt * es.eigenvalues()(q))) * overlaps(q);
        u(i) = acc;
      }
      const double err = sweep.beta_out * std::abs(u(k - 1));
      const double budget = opts.tol * (dt / total);
      if (err <= budget || sweep.beta_out == 0.0) {
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(v.size());
        for (int i = 0; i < k; ++i) next += u(i) * sweep.basis[i];
        v = nv * next;
        remaining -= dt;
        ++report.substeps;
        report.error_estimate += err;
        if (err < 0.1 * budget) dt *= 2.0;  // step was easy, try longer
        break;
      }
      dt /= 2.0;
      if (dt < total * 1e-12)
        throw NumericalError("time step underflow in the Lanczos propagator", err, budget);
    }
  }
  return report;
}

ExtremalReport lanczos_min_eigenvalue(const ApplyFn& apply_h, int dim, double tol,
                                      int max_restarts) {
  if (dim < 1) throw std::invalid_argument("operator dimension must be positive");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd x(dim);
  for (int i = 0; i < dim; ++i) x(i) = Complex(gauss(rng), gauss(rng));
  x /= x.norm();

  ExtremalReport report;
  const int m = std::min(dim, 40);
  Eigen::VectorXcd hx(dim);
  for (int restart = 0; restart < max_restarts; ++restart) {
    LanczosSweep sweep = lanczos_sweep(apply_h, x, m);
    report.iterations += sweep.matvecs;
    const int k = static_cast<int>(sweep.basis.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal(sweep));
    int lo = 0;
    es.eigenvalues().minCoeff(&lo);
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < k; ++i) next += es.eigenvectors()(i, lo) * sweep.basis[i];
    next /= next.norm();
    x = next;
    report.value = es.eigenvalues()(lo);
    apply_h(x, hx);
    ++report.iterations;
    report.residual = (hx - report.value * x).norm();
    if (report.residual <= tol * std::max(1.0, std::abs(report.value))) return report;
  }
  throw NumericalError("Lanczos eigenvalue iteration did not converge", report.residual, tol);
}

}  // namespace qca
