#include "qca/hamiltonian.hpp"

#include <stdexcept>

namespace qca {

TwoSiteTerm build_two_site_term(const GateSet& gates) {
  std::vector<Eigen::Triplet<Complex>> trip;
  const int d2 = kSiteDim * kSiteDim;
  for (Command c : {Command::L, Command::R, Command::S, Command::G}) {
    const Eigen::MatrixXcd& u = gates.gate_unitary(c);
    for (int rl = 0; rl < kRegisterDim; ++rl)
      for (int rr = 0; rr < kRegisterDim; ++rr) {
        const int pair_in = rl * kRegisterDim + rr;
        for (int rl2 = 0; rl2 < kRegisterDim; ++rl2)
          for (int rr2 = 0; rr2 < kRegisterDim; ++rr2) {
            const Complex v = u(rl2 * kRegisterDim + rr2, pair_in);
            if (v == Complex(0.0)) continue;
            // Forward: (e, C) -> (C, e) with U^C on the registers.
            const int in_f = make_site(rl, Command::E) * kSiteDim + make_site(rr, c);
            const int out_f = make_site(rl2, c) * kSiteDim + make_site(rr2, Command::E);
            trip.emplace_back(out_f, in_f, v);
            // Adjoint: (C, e) -> (e, C) with the conjugate entry mirrored.
            trip.emplace_back(in_f, out_f, std::conj(v));
          }
      }
  }
  TwoSiteTerm term;
  term.matrix.resize(d2, d2);
  term.matrix.setFromTriplets(trip.begin(), trip.end());
  term.matrix.makeCompressed();
  return term;
}

std::vector<Bond> chain_bonds(int n_sites, Boundary boundary) {
  if (n_sites < 1) throw std::invalid_argument("chain needs at least one site");
  std::vector<Bond> bonds;
  for (int i = 0; i + 1 < n_sites; ++i) bonds.push_back({i, i + 1});
  if (boundary == Boundary::Periodic && n_sites > 2) bonds.push_back({n_sites - 1, 0});
  return bonds;
}

ChainHamiltonian::ChainHamiltonian(int n_sites, Boundary boundary, const GateSet& gates)
    : n_sites_(n_sites),
      boundary_(boundary),
      bonds_(chain_bonds(n_sites, boundary)),
      term_(build_two_site_term(gates)),
      gates_(gates) {}

ChainState ChainHamiltonian::apply(const ChainState& state) const {
  ChainState out;
  out.n_sites = state.n_sites;
  if (state.n_sites != n_sites_)
    throw std::invalid_argument("state and Hamiltonian have different chain lengths");
  BasisKey scratch;
  for (const auto& [key, amp] : state.amplitudes) {
    for (const Bond& bond : bonds_) {
      const int col = key[bond.left] * kSiteDim + key[bond.right];
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(term_.matrix, col); it; ++it) {
        scratch = key;
        scratch[bond.left] = static_cast<std::uint8_t>(it.row() / kSiteDim);
        scratch[bond.right] = static_cast<std::uint8_t>(it.row() % kSiteDim);
        out.amplitudes[scratch] += it.value() * amp;
      }
    }
  }
  return out;
}

Complex ChainHamiltonian::expectation(const ChainState& state) const {
  return inner_product(state, apply(state));
}

ChainHamiltonian build_chain_hamiltonian(int n_sites, Boundary boundary, const GateSet& gates) {
  return ChainHamiltonian(n_sites, boundary, gates);
}

}  // namespace qca
