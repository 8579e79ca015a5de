#include <complex>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"

#include "qca/errors.hpp"
#include "qca/krylov.hpp"

using namespace qca;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

MatrixXcd random_hermitian(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  return 0.5 * (a + a.adjoint().eval());
}

VectorXcd random_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(normal(rng), normal(rng));
  v.normalize();
  return v;
}

ApplyFn matrix_apply(const MatrixXcd& h) {
  return [&h](const VectorXcd& in, VectorXcd& out) { out = h * in; };
}

VectorXcd dense_expm_apply(const MatrixXcd& h, const VectorXcd& v, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h);
  const VectorXcd phases =
      (Complex(0.0, -t) * eig.eigenvalues().array().cast<Complex>()).exp();
  return eig.eigenvectors() * (phases.asDiagonal() * (eig.eigenvectors().adjoint() * v));
}

}  // namespace

TEST_SUITE("krylov") {

TEST_CASE("propagator application matches dense exponentiation") {
  const int dim = 80;
  const MatrixXcd h = random_hermitian(dim, 21);
  const VectorXcd v0 = random_vector(dim, 22);
  for (double t : {0.3, 1.7, -2.5, 11.0}) {
    VectorXcd v = v0;
    const KrylovReport report = krylov_expm_apply(matrix_apply(h), v, t);
    const VectorXcd expected = dense_expm_apply(h, v0, t);
    CHECK((v - expected).norm() < 1e-8);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK(report.matvecs > 0);
  }
}

TEST_CASE("zero time is the identity") {
  const MatrixXcd h = random_hermitian(30, 5);
  const VectorXcd v0 = random_vector(30, 6);
  VectorXcd v = v0;
  krylov_expm_apply(matrix_apply(h), v, 0.0);
  CHECK((v - v0).norm() == 0.0);
}

TEST_CASE("small dimensions finish by exact breakdown") {
  const MatrixXcd h = random_hermitian(5, 31);
  const VectorXcd v0 = random_vector(5, 32);
  VectorXcd v = v0;
  krylov_expm_apply(matrix_apply(h), v, 4.2);
  CHECK((v - dense_expm_apply(h, v0, 4.2)).norm() < 1e-10);
}

TEST_CASE("propagation is deterministic") {
  const MatrixXcd h = random_hermitian(64, 77);
  const VectorXcd v0 = random_vector(64, 78);
  VectorXcd a = v0, b = v0;
  krylov_expm_apply(matrix_apply(h), a, 3.1);
  krylov_expm_apply(matrix_apply(h), b, 3.1);
  CHECK((a - b).norm() == 0.0);
}

TEST_CASE("minimal eigenvalue matches dense diagonalization") {
  const int dim = 200;
  const MatrixXcd h = random_hermitian(dim, 55);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h);
  const double expected = eig.eigenvalues()[0];
  const ExtremalReport report = lanczos_min_eigenvalue(matrix_apply(h), dim, 1e-10);
  CHECK(std::abs(report.value - expected) < 1e-8);
  CHECK(report.residual < 1e-9 * std::max(1.0, std::abs(report.value)));
}

TEST_CASE("minimal eigenvalue of scaled identity and of a known diagonal") {
  const MatrixXcd id = MatrixXcd::Identity(40, 40);
  CHECK(std::abs(lanczos_min_eigenvalue(matrix_apply(id), 40).value - 1.0) < 1e-10);

  VectorXd d(50);
  for (int i = 0; i < 50; ++i) d[i] = 0.25 * i - 3.0;
  const ApplyFn apply = [&d](const VectorXcd& in, VectorXcd& out) {
    out = d.cast<Complex>().asDiagonal() * in;
  };
  CHECK(std::abs(lanczos_min_eigenvalue(apply, 50).value - (-3.0)) < 1e-10);
}

TEST_CASE("minimal eigenvalue search is deterministic") {
  const MatrixXcd h = random_hermitian(120, 91);
  const auto a = lanczos_min_eigenvalue(matrix_apply(h), 120);
  const auto b = lanczos_min_eigenvalue(matrix_apply(h), 120);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("an unreachable tolerance raises a numerical error") {
  const MatrixXcd h = random_hermitian(150, 13);
  CHECK_THROWS_AS(lanczos_min_eigenvalue(matrix_apply(h), 150, 1e-300, 1), NumericalError);
}

}  // TEST_SUITE
