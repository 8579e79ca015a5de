#include "qca/configuration.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "qca/errors.hpp"

namespace qca {

namespace {

void validate_config(const CommandConfiguration& c, int n_sites, const char* what) {
  int prev = -1;
  for (const auto& [site, tag] : c.entries) {
    if (site < 0 || site >= n_sites)
      throw std::invalid_argument(std::string(what) + ": command site out of range");
    if (site <= prev)
      throw std::invalid_argument(std::string(what) +
                                  ": command sites must be strictly increasing");
    if (!is_real_command(tag))
      throw std::invalid_argument(std::string(what) +
                                  ": configuration tags must be real commands");
    prev = site;
  }
}

}  // namespace

CommandConfiguration CommandConfiguration::from_key(const BasisKey& key) {
  CommandConfiguration c;
  for (int i = 0; i < static_cast<int>(key.size()); ++i) {
    const Command tag = site_command(key[i]);
    if (tag != Command::E) c.entries.emplace_back(i, tag);
  }
  return c;
}

std::string CommandConfiguration::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(entries[i].first);
    s += ':';
    s += command_char(entries[i].second);
  }
  return s;
}

CommandConfiguration CommandConfiguration::parse(const std::string& text) {
  CommandConfiguration c;
  if (text.empty()) return c;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos || colon + 2 != part.size())
      throw LayoutError("malformed configuration entry '" + part + "', expected site:tag");
    int site = 0;
    try {
      site = std::stoi(part.substr(0, colon));
    } catch (const std::exception&) {
      throw LayoutError("malformed configuration site in '" + part + "'");
    }
    const Command tag = command_from_char(part[colon + 1]);
    if (!is_real_command(tag))
      throw LayoutError("configuration tags must be real commands, got 'e'");
    c.entries.emplace_back(site, tag);
  }
  return c;
}

Eigen::SparseMatrix<double> SubspaceBasis::adjacency() const {
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < moves.size(); ++i)
    for (const ConfigMove& m : moves[i]) trip.emplace_back(m.to_config, m.from_config, 1.0);
  Eigen::SparseMatrix<double> h(configs.size(), configs.size());
  h.setFromTriplets(trip.begin(), trip.end());
  h.makeCompressed();
  return h;
}

int SubspaceBasis::index_of(const CommandConfiguration& c) const {
  auto it = index.find(c);
  return it == index.end() ? -1 : it->second;
}

std::vector<ConfigMove> SubspaceBasis::canonical_path(int config_index) const {
  std::vector<ConfigMove> path;
  for (int i = config_index; bfs_parent[i] != -1; i = bfs_parent[i]) path.push_back(bfs_edge[i]);
  std::reverse(path.begin(), path.end());
  return path;
}

SubspaceBasis enumerate_subspace(const CommandConfiguration& initial, int n_sites,
                                 Boundary boundary, std::size_t max_configs) {
  validate_config(initial, n_sites, "enumerate_subspace");
  SubspaceBasis basis;
  basis.n_sites = n_sites;
  basis.boundary = boundary;
  basis.configs.push_back(initial);
  basis.index.emplace(initial, 0);
  basis.moves.emplace_back();
  basis.bfs_parent.push_back(-1);
  basis.bfs_edge.push_back(ConfigMove{});

  const std::vector<Bond> bonds = chain_bonds(n_sites, boundary);
  std::vector<int> occupant(n_sites, -1);  // entry index per site, -1 empty
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int ci = queue.front();
    queue.pop_front();
    const CommandConfiguration config = basis.configs[ci];  // copy, configs may grow
    std::fill(occupant.begin(), occupant.end(), -1);
    for (std::size_t e = 0; e < config.entries.size(); ++e)
      occupant[config.entries[e].first] = static_cast<int>(e);

    auto try_move = [&](int from_site, int to_site, bool leftward) {
      const int e = occupant[from_site];
      if (e < 0 || occupant[to_site] >= 0) return;
      CommandConfiguration next = config;
      next.entries[e].first = to_site;
      std::sort(next.entries.begin(), next.entries.end());
      ConfigMove m{ci, -1, from_site, to_site, config.entries[e].second, leftward};
      auto [it, inserted] = basis.index.emplace(next, static_cast<int>(basis.configs.size()));
      m.to_config = it->second;
      if (inserted) {
        if (basis.configs.size() >= max_configs)
          throw ResourceLimitError("configuration subspace exceeds the cap",
                                   basis.configs.size() + 1, max_configs);
        basis.configs.push_back(std::move(next));
        basis.moves.emplace_back();
        basis.bfs_parent.push_back(ci);
        basis.bfs_edge.push_back(m);
        queue.push_back(m.to_config);
      }
      basis.moves[ci].push_back(m);
    };

    for (const Bond& bond : bonds) {
      try_move(bond.right, bond.left, true);   // command hops left, forward unitary
      try_move(bond.left, bond.right, false);  // command hops right, adjoint unitary
    }
  }
  return basis;
}

namespace {

std::vector<ConfigMove> interleaving_impl(const CommandConfiguration& initial,
                                          const CommandConfiguration& final_config,
                                          int n_sites, std::mt19937_64* rng) {
  validate_config(initial, n_sites, "interleaving initial");
  validate_config(final_config, n_sites, "interleaving final");
  const std::size_t k = initial.entries.size();
  if (final_config.entries.size() != k)
    throw std::invalid_argument("configurations carry different command counts");
  for (std::size_t j = 0; j < k; ++j)
    if (initial.entries[j].second != final_config.entries[j].second)
      throw std::invalid_argument("configurations carry different command tag sequences");

  std::vector<int> cur(k), target(k);
  std::vector<char> occ(n_sites, 0);
  for (std::size_t j = 0; j < k; ++j) {
    cur[j] = initial.entries[j].first;
    target[j] = final_config.entries[j].first;
    occ[cur[j]] = 1;
  }

  std::vector<ConfigMove> path;
  std::vector<std::size_t> enabled;
  for (;;) {
    enabled.clear();
    bool done = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (cur[j] == target[j]) continue;
      done = false;
      const int step = cur[j] + (target[j] > cur[j] ? 1 : -1);
      if (!occ[step]) enabled.push_back(j);
    }
    if (done) break;
    if (enabled.empty())
      throw std::invalid_argument("no valid hop sequence connects the configurations");
    const std::size_t j =
        rng ? enabled[std::uniform_int_distribution<std::size_t>(0, enabled.size() - 1)(*rng)]
            : enabled.front();
    const int step = cur[j] + (target[j] > cur[j] ? 1 : -1);
    path.push_back(ConfigMove{-1, -1, cur[j], step, initial.entries[j].second, step < cur[j]});
    occ[cur[j]] = 0;
    occ[step] = 1;
    cur[j] = step;
  }
  return path;
}

}  // namespace

std::vector<ConfigMove> canonical_interleaving(const CommandConfiguration& initial,
                                               const CommandConfiguration& final_config,
                                               int n_sites) {
  return interleaving_impl(initial, final_config, n_sites, nullptr);
}

std::vector<ConfigMove> random_interleaving(const CommandConfiguration& initial,
                                            const CommandConfiguration& final_config,
                                            int n_sites, std::mt19937_64& rng) {
  return interleaving_impl(initial, final_config, n_sites, &rng);
}

}  // namespace qca
