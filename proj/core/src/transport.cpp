#include "qca/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/special_functions/bessel.hpp>

#include "qca/errors.hpp"

namespace qca::transport {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ring(int N, int M) {
  if (M < 1) throw std::invalid_argument("ring needs at least one site");
  if (N < 1 || N > M) throw std::invalid_argument("block length N must satisfy 1 <= N <= M");
}

int wrap(long long d, int M) {
  long long r = d % M;
  if (r < 0) r += M;
  return static_cast<int>(r);
}

int thread_count() {
  if (const char* env = std::getenv("QCA_THREADS")) {
    const int k = std::atoi(env);
    if (k >= 1) return k;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [begin, end) across threads in fixed-size chunks.
// Deterministic as long as each fn(i) writes only to slot i of shared output.
void parallel_for(int begin, int end, int chunk, const std::function<void(int)>& fn) {
  const int total = end - begin;
  if (total <= 0) return;
  const int workers = std::min(thread_count(), (total + chunk - 1) / chunk);
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  const int n_chunks = (total + chunk - 1) / chunk;
  auto work = [&] {
    for (;;) {
      const int c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const int lo = begin + c * chunk;
      const int hi = std::min(lo + chunk, end);
      for (int i = lo; i < hi; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

void check_sites(const std::vector<int>& sites, int M, const char* what) {
  std::vector<int> sorted = sites;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= M)
      throw std::invalid_argument(std::string(what) + ": site index outside the ring");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument(std::string(what) + ": repeated site");
  }
}

}  // namespace

double dispersion(int q, int M) {
  if (M < 1) throw std::invalid_argument("ring needs at least one site");
  return 2.0 * std::cos(2.0 * kPi * q / M);
}

Complex propagator(int d, double t, int M) {
  if (M < 1) throw std::invalid_argument("ring needs at least one site");
  const int dm = wrap(d, M);
  Complex sum = 0.0;
  for (int q = 1; q <= M; ++q) {
    // q*d reduced mod M keeps the lattice phase small; the t*energy part is
    // irreducible and sets the usual large-argument cosine accuracy.
    const double phase =
        2.0 * kPi * wrap(static_cast<long long>(q) * dm, M) / M + dispersion(q, M) * t;
    sum += Complex{std::cos(phase), std::sin(phase)};
  }
  return sum / static_cast<double>(M);
}

std::vector<double> propagator_abs2_row(double t, int M) {
  std::vector<double> row(static_cast<std::size_t>(M));
  parallel_for(0, M, 64, [&](int d) { row[static_cast<std::size_t>(d)] = std::norm(propagator(d, t, M)); });
  return row;
}

double bessel_propagator_abs(int d, double t) {
  return std::abs(boost::math::cyl_bessel_j(std::abs(d), 2.0 * t));
}

double p1(int N, int M, double t) {
  check_ring(N, M);
  // Displacements beyond the ring alias back: (N-|d|) weights at d and d-M
  // combine, so cap the distinct displacements at M.
  std::vector<double> weight(static_cast<std::size_t>(M), 0.0);
  for (int d = -(N - 1); d <= N - 1; ++d)
    weight[static_cast<std::size_t>(wrap(d, M))] += N - std::abs(d);
  double sum = 0.0;
  for (int d = 0; d < M; ++d) {
    if (weight[static_cast<std::size_t>(d)] == 0.0) continue;
    sum += weight[static_cast<std::size_t>(d)] * std::norm(propagator(d, t, M));
  }
  return sum / N;
}

double p1_double_sum(int N, int M, double t) {
  check_ring(N, M);
  if (N > 64) throw std::invalid_argument("p1_double_sum is a validation path; use p1 for large N");
  double sum = 0.0;
  for (int y = 0; y < N; ++y)
    for (int x = 0; x < N; ++x) sum += std::norm(propagator(x - y, t, M));
  return sum / N;
}

double success_bound(double p1_value, int N, int k) {
  if (N < 1) throw std::invalid_argument("success_bound: N must be positive");
  if (k < 1 || k > N) throw std::invalid_argument("success_bound: k must satisfy 1 <= k <= N");
  if (p1_value < 0.0 || p1_value > 1.0)
    throw std::invalid_argument("success_bound: p1 must lie in [0, 1]");
  const double p = 1.0 - p1_value;
  return (1.0 - k + N * p) / (1.0 - k + N);
}

double expected_departures(int N, int M, double t) { return N * (1.0 - p1(N, M, t)); }

std::vector<double> density(const std::vector<int>& initial_sites, double t, int M) {
  check_sites(initial_sites, M, "density");
  const std::vector<double> row = propagator_abs2_row(t, M);
  std::vector<double> rho(static_cast<std::size_t>(M), 0.0);
  for (int x = 0; x < M; ++x)
    for (int y : initial_sites) rho[static_cast<std::size_t>(x)] += row[static_cast<std::size_t>(wrap(x - y, M))];
  return rho;
}

double slater_config_probability(const std::vector<int>& initial_sites,
                                 const std::vector<int>& final_sites, double t, int M) {
  if (initial_sites.size() != final_sites.size())
    throw std::invalid_argument("slater: initial and final configurations differ in size");
  check_sites(initial_sites, M, "slater initial");
  check_sites(final_sites, M, "slater final");
  const int n = static_cast<int>(initial_sites.size());
  if (n == 0) return 1.0;

  std::vector<Complex> kernel(static_cast<std::size_t>(M));
  for (int d = 0; d < M; ++d) kernel[static_cast<std::size_t>(d)] = propagator(d, t, M);

  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      a(j, k) = kernel[static_cast<std::size_t>(wrap(final_sites[static_cast<std::size_t>(j)] -
                                                         initial_sites[static_cast<std::size_t>(k)],
                                                     M))];
  return std::norm(a.determinant());
}

std::vector<std::pair<std::vector<int>, double>> slater_distribution(
    const std::vector<int>& initial_sites, double t, int M) {
  check_sites(initial_sites, M, "slater initial");
  const int n = static_cast<int>(initial_sites.size());
  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos = combos * (M - i) / (i + 1);
  if (combos > 500000.0)
    throw ResourceLimitError("slater_distribution: configuration space too large",
                             static_cast<std::size_t>(std::min(combos, 1e18)), 500000);

  std::vector<Complex> kernel(static_cast<std::size_t>(M));
  for (int d = 0; d < M; ++d) kernel[static_cast<std::size_t>(d)] = propagator(d, t, M);

  std::vector<std::pair<std::vector<int>, double>> out;
  std::vector<int> final_sites(static_cast<std::size_t>(n));
  Eigen::MatrixXcd a(n, n);
  auto emit = [&]() {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        a(j, k) = kernel[static_cast<std::size_t>(wrap(final_sites[static_cast<std::size_t>(j)] -
                                                           initial_sites[static_cast<std::size_t>(k)],
                                                       M))];
    out.emplace_back(final_sites, n == 0 ? 1.0 : std::norm(a.determinant()));
  };
  // Lexicographic enumeration of all size-n subsets of [0, M).
  auto recurse = [&](auto&& self, int pos, int next) -> void {
    if (pos == n) {
      emit();
      return;
    }
    for (int s = next; s <= M - (n - pos); ++s) {
      final_sites[static_cast<std::size_t>(pos)] = s;
      self(self, pos + 1, s + 1);
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

double f_exact(int delta, double t, int M) {
  if (delta < 1 || delta > M) throw std::invalid_argument("f_exact: delta must lie in [1, M]");
  double sum = 0.0;
  for (int q = 1; q <= M - delta; ++q)
    sum += std::cos((dispersion(q, M) - dispersion(q + delta, M)) * t);
  return 2.0 * sum;
}

double f_bessel(int delta, double t, int M) {
  return 2.0 * M * boost::math::cyl_bessel_j(0, 4.0 * t * delta * kPi / M);
}

double g_weight(int delta, int N, int M) {
  if (delta < 1) throw std::invalid_argument("g_weight: delta must be positive");
  const double s = std::sin(static_cast<double>(N) * kPi * delta / M);
  return s * s / (static_cast<double>(delta) * delta);
}

SplitEstimate split_estimate(int N, int M, double t, double eps) {
  check_ring(N, M);
  if (N == M) throw std::invalid_argument("split_estimate needs N < M");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("split_estimate: eps in (0,1)");

  SplitEstimate est;
  est.N = N;
  est.M = M;
  est.t = t;
  est.eps = eps;
  est.d1 = std::min(static_cast<int>(eps * M / N), M);
  est.d2 = std::min(static_cast<int>(2.0 * M / N), M);
  if (est.d2 < est.d1) est.d2 = est.d1;

  // All reductions run over a precomputed per-delta table in increasing
  // delta order, so the result is identical for any thread count.
  std::vector<double> f_values(static_cast<std::size_t>(M) + 1, 0.0);
  parallel_for(1, M + 1, 64,
               [&](int delta) { f_values[static_cast<std::size_t>(delta)] = f_exact(delta, t, M); });

  const double prefactor = 1.0 / (N * kPi * kPi);
  double max_abs_f2 = 0.0;
  double max_dev = 0.0;
  for (int delta = 1; delta <= M; ++delta) {
    const double contribution = prefactor * g_weight(delta, N, M) * f_values[static_cast<std::size_t>(delta)];
    if (delta <= est.d1)
      est.term1 += contribution;
    else if (delta <= est.d2)
      est.term2 += contribution;
    else
      est.term3 += contribution;
    if (delta > est.d1 && delta <= est.d2)
      max_abs_f2 = std::max(max_abs_f2, std::abs(f_values[static_cast<std::size_t>(delta)]) / (2.0 * M));
    if (delta <= est.d2)
      max_dev = std::max(max_dev,
                         std::abs(f_values[static_cast<std::size_t>(delta)] - f_bessel(delta, t, M)) / (2.0 * M));
  }
  est.total = est.term1 + est.term2 + est.term3;
  est.term1_bound = 2.0 * eps;
  est.term2_bound = max_abs_f2;
  est.total_bound = est.term1_bound + est.term2_bound + est.term3;
  est.bessel_max_dev = max_dev;
  est.ballistic_crossing = 2.0 * t / M;
  return est;
}

}  // namespace qca::transport
