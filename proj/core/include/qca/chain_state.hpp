#pragma once

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace qca {

using Complex = std::complex<double>;

// One product basis vector of the chain: the encoded site index (0..29)
// at every site, left to right.
using BasisKey = std::vector<std::uint8_t>;

struct BasisKeyHash {
  std::size_t operator()(const BasisKey& k) const noexcept {
    // FNV-1a over the site bytes.
    std::size_t h = 1469598103934665603ull;
    for (std::uint8_t b : k) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};

using AmplitudeMap = std::unordered_map<BasisKey, Complex, BasisKeyHash>;

// Sparse state vector over the chain product basis. Only nonzero
// amplitudes are stored; keys all have length n_sites.
struct ChainState {
  int n_sites = 0;
  AmplitudeMap amplitudes;

  double norm() const;
  // Drops entries with |amplitude| <= threshold.
  void prune(double threshold = 0.0);
  // Scales so that norm() == 1. Throws PreconditionError on the zero state.
  void normalize();
};

Complex inner_product(const ChainState& a, const ChainState& b);

}  // namespace qca
