#include "qca/chain_state.hpp"

#include <cmath>

#include "qca/errors.hpp"

namespace qca {

double ChainState::norm() const {
  double s = 0.0;
  for (const auto& [key, amp] : amplitudes) s += std::norm(amp);
  return std::sqrt(s);
}

void ChainState::prune(double threshold) {
  for (auto it = amplitudes.begin(); it != amplitudes.end();) {
    if (std::abs(it->second) <= threshold)
      it = amplitudes.erase(it);
    else
      ++it;
  }
}

void ChainState::normalize() {
  const double n = norm();
  if (n == 0.0) throw PreconditionError("cannot normalize the zero state");
  for (auto& [key, amp] : amplitudes) amp /= n;
}

Complex inner_product(const ChainState& a, const ChainState& b) {
  // Iterate the smaller map.
  const ChainState& small = a.amplitudes.size() <= b.amplitudes.size() ? a : b;
  const ChainState& large = a.amplitudes.size() <= b.amplitudes.size() ? b : a;
  const bool conj_small = (&small == &a);
  Complex s = 0.0;
  for (const auto& [key, amp] : small.amplitudes) {
    auto it = large.amplitudes.find(key);
    if (it == large.amplitudes.end()) continue;
    s += conj_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return s;
}

}  // namespace qca
