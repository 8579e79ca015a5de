#include "qca/qma.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "qca/errors.hpp"
#include "qca/krylov.hpp"

namespace qca::qma {

namespace {

using Complexd = std::complex<double>;

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (std::int64_t{1} << 62) / base) throw std::invalid_argument("dimension overflow");
    r *= base;
  }
  return r;
}

Eigen::MatrixXcd read_complex_matrix(const nlohmann::json& j) {
  const auto rows = j.get<std::vector<std::vector<std::array<double, 2>>>>();
  const auto r = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != r)
      throw std::invalid_argument("bond matrix is not square");
    for (Eigen::Index k = 0; k < r; ++k) {
      const auto& e = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      m(i, k) = {e[0], e[1]};
    }
  }
  return m;
}

nlohmann::json write_complex_matrix(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void InputHamiltonian::validate() const {
  if (n < 2) throw std::invalid_argument("input chain needs n >= 2 sites");
  if (d < 2) throw std::invalid_argument("input chain needs local dimension d >= 2");
  if (static_cast<int>(bonds.size()) != n - 1)
    throw std::invalid_argument("input chain needs exactly n-1 bond terms");
  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  for (const auto& b : bonds) {
    if (b.rows() != dd || b.cols() != dd)
      throw std::invalid_argument("bond matrix must be d^2 x d^2");
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("bond matrix must be Hermitian within 1e-12");
  }
}

Eigen::MatrixXcd InputHamiltonian::dense() const {
  validate();
  const std::int64_t dim = ipow(d, n);
  if (dim > 1 << 14) throw ResourceLimitError("input chain too large for dense assembly", dim, 1 << 14);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  std::int64_t stride = 1;  // site j occupies base-d digit j (site 0 least significant)
  for (int j = 0; j + 1 < n; ++j, stride *= d) {
    const Eigen::MatrixXcd& bond = bonds[static_cast<std::size_t>(j)];
    for (std::int64_t col = 0; col < dim; ++col) {
      const int sl = static_cast<int>(col / stride % d);
      const int sr = static_cast<int>(col / (stride * d) % d);
      const std::int64_t base = col - sl * stride - sr * stride * d;
      const int in_pair = sl * d + sr;
      for (int ol = 0; ol < d; ++ol)
        for (int or_ = 0; or_ < d; ++or_) {
          const Complexd v = bond(ol * d + or_, in_pair);
          if (v == Complexd{}) continue;
          h(base + ol * stride + or_ * stride * d, col) += v;
        }
    }
  }
  return h;
}

void to_json(nlohmann::json& j, const InputHamiltonian& h) {
  j = nlohmann::json{{"schema_version", 1}, {"n", h.n}, {"d", h.d}};
  auto& bonds = j["bonds"] = nlohmann::json::array();
  for (const auto& b : h.bonds) bonds.push_back(write_complex_matrix(b));
}

void from_json(const nlohmann::json& j, InputHamiltonian& h) {
  h = InputHamiltonian{};
  h.n = j.at("n").get<int>();
  h.d = j.at("d").get<int>();
  for (const auto& b : j.at("bonds")) h.bonds.push_back(read_complex_matrix(b));
  h.validate();
}

InputHamiltonian load_input_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open hamiltonian file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return j.get<InputHamiltonian>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("hamiltonian file " + path + ": " + e.what());
  }
}

void save_input_hamiltonian(const std::string& path, const InputHamiltonian& h) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open hamiltonian file for writing: " + path);
  out << nlohmann::json(h).dump(2) << '\n';
}

double h_prime_eigenvalue(int n, int w) {
  if (n < 2) throw std::invalid_argument("penalty needs n >= 2");
  if (w < 0 || w > n) throw std::invalid_argument("penalty: w must lie in [0, n]");
  return (1.0 - w + static_cast<double>(w) * (w - 1)) / (static_cast<double>(n) * (n - 1));
}

Eigen::VectorXd build_h_prime(int n) {
  if (n < 2) throw std::invalid_argument("penalty needs n >= 2");
  if (n > 24) throw ResourceLimitError("penalty diagonal too large", std::int64_t{1} << n, 1 << 24);
  Eigen::VectorXd diag(std::int64_t{1} << n);
  for (std::int64_t idx = 0; idx < diag.size(); ++idx)
    diag[idx] = h_prime_eigenvalue(n, static_cast<int>(std::popcount(static_cast<std::uint64_t>(idx))));
  return diag;
}

TiQmaHamiltonian::TiQmaHamiltonian(InputHamiltonian input, int ring_multiplier)
    : input_(std::move(input)) {
  input_.validate();
  if (ring_multiplier < 1) throw std::invalid_argument("ring multiplier must be positive");
  length_ = ring_multiplier * (input_.n + 1);
  dim_ = ipow(2 * input_.d, length_);
  if (dim_ > 4'000'000)
    throw ResourceLimitError("ring dimension exceeds the matrix-free cap", dim_, 4'000'000);
}

void TiQmaHamiltonian::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  if (in.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  const int n = input_.n;
  const int d = input_.d;
  const int ld = 2 * d;  // site digit = control*d + inner
  const int L = length_;
  out.setZero(dim_);

  std::vector<std::int64_t> stride(static_cast<std::size_t>(L));
  stride[0] = 1;
  for (int s = 1; s < L; ++s) stride[static_cast<std::size_t>(s)] = stride[static_cast<std::size_t>(s - 1)] * ld;

  std::vector<int> digits(static_cast<std::size_t>(L));
  for (std::int64_t idx = 0; idx < dim_; ++idx) {
    const Complexd amp = in[idx];
    if (amp == Complexd{}) continue;
    std::int64_t rest = idx;
    int w = 0;
    for (int s = 0; s < L; ++s) {
      digits[static_cast<std::size_t>(s)] = static_cast<int>(rest % ld);
      rest /= ld;
      if (digits[static_cast<std::size_t>(s)] >= d) ++w;
    }
    // Ring penalty: same bracket and 1/(n(n-1)) prefactor, with w counted
    // over all ring control qubits (so w may reach length > n).
    const double penalty =
        (1.0 - w + static_cast<double>(w) * (w - 1)) / (static_cast<double>(n) * (n - 1));
    out[idx] += penalty * amp;

    for (int i = 0; i < L; ++i) {
      if (digits[static_cast<std::size_t>(i)] < d) continue;  // control qubit must be |1>
      for (int j = 0; j + 1 < n; ++j) {
        const int sa = (i + 1 + j) % L;
        const int sb = (i + 2 + j) % L;
        const int ia = digits[static_cast<std::size_t>(sa)] % d;
        const int ib = digits[static_cast<std::size_t>(sb)] % d;
        const Eigen::MatrixXcd& bond = input_.bonds[static_cast<std::size_t>(j)];
        const std::int64_t base = idx - ia * stride[static_cast<std::size_t>(sa)] -
                                  ib * stride[static_cast<std::size_t>(sb)];
        for (int oa = 0; oa < d; ++oa)
          for (int ob = 0; ob < d; ++ob) {
            const Complexd v = bond(oa * d + ob, ia * d + ib);
            if (v == Complexd{}) continue;
            out[base + oa * stride[static_cast<std::size_t>(sa)] +
                ob * stride[static_cast<std::size_t>(sb)]] += v * amp / static_cast<double>(n);
          }
      }
    }
  }
}

Eigen::MatrixXcd TiQmaHamiltonian::dense() const {
  if (dim_ > 4096) throw ResourceLimitError("ring dimension exceeds the dense cap", dim_, 4096);
  Eigen::MatrixXcd h(dim_, dim_);
  Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(dim_);
  Eigen::VectorXcd col(dim_);
  for (std::int64_t c = 0; c < dim_; ++c) {
    unit[c] = 1.0;
    apply(unit, col);
    h.col(c) = col;
    unit[c] = 0.0;
  }
  return h;
}

TiQmaHamiltonian build_ti_qma(const InputHamiltonian& input, int ring_multiplier) {
  return TiQmaHamiltonian(input, ring_multiplier);
}

double min_eigenvalue(const Eigen::MatrixXcd& h, EigMethod method, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix must be square");
  if (method == EigMethod::Dense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed", 0.0, tol);
    return solver.eigenvalues()(0);
  }
  const auto apply = [&h](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { out = h * in; };
  return min_eigenvalue(apply, h.rows(), tol);
}

double min_eigenvalue(const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
                      std::int64_t dim, double tol) {
  if (dim > std::numeric_limits<int>::max())
    throw std::invalid_argument("iterative eigensolver dimension too large");
  const auto report = lanczos_min_eigenvalue(apply, static_cast<int>(dim), tol);
  return report.value;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ZeroEnergy: return "zero-energy";
    case Verdict::GappedAboveBound: return "gapped-above-bound";
    case Verdict::Violation: return "violation";
  }
  throw std::invalid_argument("unknown verdict");
}

void to_json(nlohmann::json& j, const SpectrumResult& r) {
  j = nlohmann::json{{"schema_version", 1},
                     {"n", r.n},
                     {"d", r.d},
                     {"lambda_min_input", r.lambda_min_input},
                     {"e0", r.e0},
                     {"gap_bound", r.gap_bound},
                     {"verdict", verdict_name(r.verdict)}};
}

SpectrumResult verify_promise(const InputHamiltonian& input, const VerifyOptions& options) {
  input.validate();
  TiQmaHamiltonian ring(input, options.ring_multiplier);
  if (ring.dim() > options.dense_cap)
    throw ResourceLimitError("instance too large for dense promise verification", ring.dim(),
                             options.dense_cap);

  SpectrumResult result;
  result.n = input.n;
  result.d = input.d;
  result.lambda_min_input = min_eigenvalue(input.dense());
  result.e0 = min_eigenvalue(ring.dense());
  result.gap_bound = std::min(result.lambda_min_input / input.n,
                              1.0 / (static_cast<double>(input.n) * input.n * (input.n - 1)));
  if (std::abs(result.e0) < options.zero_tol)
    result.verdict = Verdict::ZeroEnergy;
  else if (result.e0 >= result.gap_bound - options.zero_tol)
    result.verdict = Verdict::GappedAboveBound;
  else
    result.verdict = Verdict::Violation;
  return result;
}

}  // namespace qca::qma
