#pragma once

#include <vector>

namespace qca {

enum class Boundary { Open, Periodic };

// An oriented bond (left, right). "Left" is where a command lands when it
// moves in the forward direction of the nearest neighbor term.
struct Bond {
  int left;
  int right;
};

// Bonds of a chain. Open: (i, i+1). Periodic: additionally the wrap bond
// (n-1, 0), except for n = 2 where the wrap would duplicate the one
// existing pair and is dropped.
std::vector<Bond> chain_bonds(int n_sites, Boundary boundary);

}  // namespace qca
