#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "qca/bonds.hpp"
#include "qca/chain_state.hpp"
#include "qca/site.hpp"

namespace qca {

// Positions and tags of the commands on the chain, sorted by site.
// Configurations label the invariant subspaces of the dynamics: commands
// hop between sites but their tags, number, and relative order never
// change on an open chain.
struct CommandConfiguration {
  std::vector<std::pair<int, Command>> entries;

  friend bool operator==(const CommandConfiguration&, const CommandConfiguration&) = default;

  static CommandConfiguration from_key(const BasisKey& key);
  // "3:R;5:G", empty string for the vacuum.
  std::string to_string() const;
  static CommandConfiguration parse(const std::string& text);
};

struct CommandConfigurationHash {
  std::size_t operator()(const CommandConfiguration& c) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const auto& [site, tag] : c.entries) {
      h ^= static_cast<std::size_t>(site);
      h *= 1099511628211ull;
      h ^= static_cast<std::size_t>(tag);
      h *= 1099511628211ull;
    }
    return h;
  }
};

// One elementary hop of one command across one bond.
struct ConfigMove {
  int from_config;
  int to_config;
  int from_site;
  int to_site;
  Command tag;
  bool leftward;  // true: lands on bond.left and the forward unitary applies
};

// All configurations reachable from an initial one, in BFS order, with
// the hop graph. The effective Hamiltonian on this basis is the 0/1
// adjacency matrix of the hops.
struct SubspaceBasis {
  int n_sites = 0;
  Boundary boundary = Boundary::Open;
  std::vector<CommandConfiguration> configs;      // configs[0] is the initial one
  std::unordered_map<CommandConfiguration, int, CommandConfigurationHash> index;
  std::vector<std::vector<ConfigMove>> moves;     // outgoing hops per config
  std::vector<int> bfs_parent;                    // -1 for the root
  std::vector<ConfigMove> bfs_edge;               // hop from parent to this config

  Eigen::SparseMatrix<double> adjacency() const;
  std::size_t size() const { return configs.size(); }
  int index_of(const CommandConfiguration& c) const;  // -1 if absent

  // Hop sequence from configs[0] to the given config along BFS parents.
  std::vector<ConfigMove> canonical_path(int config_index) const;
};

// Breadth first closure of the initial configuration under single hops.
// Throws ResourceLimitError when more than max_configs would be needed.
SubspaceBasis enumerate_subspace(const CommandConfiguration& initial, int n_sites,
                                 Boundary boundary, std::size_t max_configs = 500000);

// Valid hop sequences between order preserving configurations: commands
// are paired in order and stepped one site at a time toward their
// targets, never crossing. The canonical variant always advances the
// lowest movable command; the random variant picks uniformly among the
// movable ones. Throws PreconditionError if the two configurations are
// not connected by an order preserving relabeling.
std::vector<ConfigMove> canonical_interleaving(const CommandConfiguration& initial,
                                               const CommandConfiguration& final_config,
                                               int n_sites);
std::vector<ConfigMove> random_interleaving(const CommandConfiguration& initial,
                                            const CommandConfiguration& final_config,
                                            int n_sites, std::mt19937_64& rng);

}  // namespace qca
