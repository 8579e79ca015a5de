#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace qca::transport {

using Complex = std::complex<double>;

// Single-particle eigenvalue of the hopping ring: energy(q) = 2*cos(2*pi*q/M)
// for mode q in 1..M.
double dispersion(int q, int M);

// Ring propagator K_t(d) = (1/M) * sum_{q=1}^{M} exp(i*2*pi*q*d/M +
// i*dispersion(q)*t).  Depends on d only mod M and satisfies K(d) = K(-d).
// The +i*energy*t sign matches the mover convention used throughout; every
// reported quantity is a squared modulus, so the sign never shows.
Complex propagator(int d, double t, int M);

// |K_t(d)|^2 for d = 0..M-1 in one pass.
std::vector<double> propagator_abs2_row(double t, int M);

// Infinite-line amplitude |J_d(2t)|: the M -> infinity limit of
// |propagator(d, t, M)|.
double bessel_propagator_abs(int d, double t);

// Probability that a particle of the initially filled N-site block is still
// inside the block at time t, computed via the displacement aggregation
// p1 = (1/N) * sum_{d=-(N-1)}^{N-1} (N - |d|) * |K_t(d)|^2   (cost O(N*M)).
// Accepts 1 <= N <= M; N = M gives 1 for all t.
double p1(int N, int M, double t);

// Literal double sum (1/N) sum_{x,y in block} |K_t(x-y)|^2; O(N^2) after the
// row precompute, kept as an independent validation path and gated to small N.
double p1_double_sum(int N, int M, double t);

// Worst-case success bound (1 - k + N*p)/(1 - k + N) with p = 1 - p1, from
// the two-point distribution argument: either k-1 or all N commands have
// left, and needing k departures the bad branch is as heavy as possible.
// Requires 1 <= k <= N and p1 in [0, 1].
double success_bound(double p1, int N, int k);

// N * (1 - p1): mean number of particles found outside the block.
double expected_departures(int N, int M, double t);

// One-body density at each ring site for orbitals started at initial_sites:
// density[x] = sum_j |K_t(x - y_j)|^2.  Sums to N.
std::vector<double> density(const std::vector<int>& initial_sites, double t, int M);

// Probability of finding the N fermions exactly on final_sites:
// |det A|^2 with A_jk = K_t(final_j - initial_k).  Sites are 0-based ring
// positions; each list must be duplicate-free and of equal size.
double slater_config_probability(const std::vector<int>& initial_sites,
                                 const std::vector<int>& final_sites, double t, int M);

// All C(M, N) final configurations with their probabilities, sorted
// lexicographically.  Guarded to small instances.
std::vector<std::pair<std::vector<int>, double>> slater_distribution(
    const std::vector<int>& initial_sites, double t, int M);

// Exact kernel f(delta) = 2 * sum_{q=1}^{M-delta} cos[(dispersion(q) -
// dispersion(q+delta)) * t]; equals 2*(M - delta) at t = 0.
double f_exact(int delta, double t, int M);

// Stationary-phase approximation f(delta) ~= 2*M*J0(4*t*delta*pi/M).
double f_bessel(int delta, double t, int M);

// Envelope weight g(delta) = sin^2(N*pi*delta/M) / delta^2.
double g_weight(int delta, int N, int M);

// Integral-approximation form of p1 split at delta boundaries eps*M/N and
// 2*M/N: p1 ~ (1/(N*pi^2)) * sum_{delta=1}^{M} g(delta)*f(delta).  The three
// reported terms partition [1, M] disjointly at d1 = floor(eps*M/N) and
// d2 = floor(2*M/N).
struct SplitEstimate {
  int N = 0;
  int M = 0;
  double t = 0.0;
  double eps = 0.0;
  int d1 = 0;
  int d2 = 0;
  double term1 = 0.0;  // exact partial sums, prefactor 1/(N*pi^2) included
  double term2 = 0.0;
  double term3 = 0.0;
  double total = 0.0;            // term1 + term2 + term3
  double term1_bound = 0.0;      // 2*eps, from g <= (N*pi/M)^2 and f <= 2M
  double term2_bound = 0.0;      // max over d1 < delta <= d2 of |f(delta)|/(2M)
  double total_bound = 0.0;      // term1_bound + term2_bound + term3
  double bessel_max_dev = 0.0;   // max over delta <= d2 of |f_exact-f_bessel|/(2M)
  double ballistic_crossing = 0.0;  // 2t/M; > 1 means excitations wrapped the ring
};

SplitEstimate split_estimate(int N, int M, double t, double eps);

}  // namespace qca::transport
