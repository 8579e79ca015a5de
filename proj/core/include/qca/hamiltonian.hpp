#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qca/bonds.hpp"
#include "qca/chain_state.hpp"
#include "qca/gates.hpp"
#include "qca/site.hpp"

namespace qca {

// Nearest neighbor term on the full two-site space (30*30 = 900 states,
// index = left_site*30 + right_site):
//
//   h = sum_C |C><e| (x) |e><C| (x) U^C  +  h.c.
//
// The first factor lives on the left program register, the second on the
// right one, U^C on the register pair. The forward block moves a command
// one site to the left and applies U^C; the adjoint block moves it right
// and applies the inverse.
struct TwoSiteTerm {
  Eigen::SparseMatrix<Complex> matrix;

  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

TwoSiteTerm build_two_site_term(const GateSet& gates);

// Translation invariant sum of the two-site term over the bonds of the
// chain (see chain_bonds for the boundary convention).
class ChainHamiltonian {
public:
  ChainHamiltonian(int n_sites, Boundary boundary, const GateSet& gates);

  int n_sites() const { return n_sites_; }
  Boundary boundary() const { return boundary_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const TwoSiteTerm& term() const { return term_; }
  const GateSet& gates() const { return gates_; }

  ChainState apply(const ChainState& state) const;
  Complex expectation(const ChainState& state) const;

private:
  int n_sites_;
  Boundary boundary_;
  std::vector<Bond> bonds_;
  TwoSiteTerm term_;
  GateSet gates_;
};

ChainHamiltonian build_chain_hamiltonian(int n_sites, Boundary boundary, const GateSet& gates);

}  // namespace qca
