#include "ccnlab/routing.hpp"

#include <limits>
#include <queue>
#include <tuple>

#include "ccnlab/collapse_model.hpp"  // kSpeedOfLight

namespace ccnlab {

namespace {

struct ShortestPaths {
  std::vector<double> dist;
  std::vector<int> hops;
  std::vector<std::optional<InterfaceId>> out_iface;  // first hop toward the destination
};

/// Dijkstra from `dest` over link propagation delay; ties broken by node
/// index and interface order, so the chosen tree is deterministic.
ShortestPaths shortest_paths_to(const Topology& topo,
                                const std::vector<std::vector<Topology::Iface>>& adjacency,
                                std::size_t dest) {
  const double inf = std::numeric_limits<double>::infinity();
  std::size_t n = topo.nodes.size();
  ShortestPaths sp{std::vector<double>(n, inf), std::vector<int>(n, -1),
                   std::vector<std::optional<InterfaceId>>(n)};
  using Item = std::tuple<double, std::size_t>;  // (dist, node)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  sp.dist[dest] = 0;
  sp.hops[dest] = 0;
  queue.emplace(0.0, dest);
  std::vector<bool> settled(n, false);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = true;
    for (const auto& iface : adjacency[u]) {
      const LinkSpec& link = topo.links[iface.link];
      double w = link.length_m / (link.alpha * kSpeedOfLight);
      if (d + w < sp.dist[iface.peer]) {
        sp.dist[iface.peer] = d + w;
        sp.hops[iface.peer] = sp.hops[u] + 1;
        queue.emplace(d + w, iface.peer);
      }
    }
  }
  // First hop: the first interface whose far end lies on a shortest path.
  for (std::size_t u = 0; u < n; ++u) {
    if (u == dest || sp.dist[u] == inf) continue;
    for (InterfaceId i = 0; i < adjacency[u].size(); ++i) {
      const auto& iface = adjacency[u][i];
      const LinkSpec& link = topo.links[iface.link];
      double w = link.length_m / (link.alpha * kSpeedOfLight);
      if (sp.dist[iface.peer] + w == sp.dist[u]) {
        sp.out_iface[u] = i;
        break;
      }
    }
  }
  return sp;
}

}  // namespace

RoutePlan build_routes(const Topology& topo, bool install_rbn_routes) {
  topo.validate();
  auto adjacency = topo.build_adjacency();
  std::size_t n = topo.nodes.size();

  RoutePlan plan;
  plan.fibs.resize(n);
  plan.hops_to_producer.assign(n, -1);
  plan.delay_to_producer_s.assign(n, 0);

  auto install_toward = [&](std::size_t owner, const Name& prefix) {
    ShortestPaths sp = shortest_paths_to(topo, adjacency, owner);
    for (std::size_t u = 0; u < n; ++u) {
      if (u == owner) continue;
      if (!sp.out_iface[u]) throw DisconnectedTopology("no path to " + topo.nodes[owner].id);
      if (topo.nodes[u].role == NodeRole::Router) {
        plan.fibs[u].insert(prefix, *sp.out_iface[u]);
      }
    }
    return sp;
  };

  // Producer content prefixes reach every router.
  for (std::size_t p = 0; p < n; ++p) {
    if (topo.nodes[p].role != NodeRole::Producer) continue;
    auto it = topo.prefixes.find(topo.nodes[p].id);
    if (it == topo.prefixes.end()) {
      throw TopologyError("producer " + topo.nodes[p].id + " has no content prefix");
    }
    ShortestPaths sp = install_toward(p, it->second);
    for (std::size_t u = 0; u < n; ++u) {
      plan.hops_to_producer[u] = sp.hops[u];
      plan.delay_to_producer_s[u] = sp.dist[u];
    }
  }

  if (install_rbn_routes) {
    // Consumers announce their RBN one hop, to the access router; the access
    // router announces the aggregate of its site.
    std::vector<std::vector<Name>> site_rbns(n);
    for (std::size_t c = 0; c < n; ++c) {
      if (topo.nodes[c].role != NodeRole::Consumer) continue;
      auto it = topo.prefixes.find(topo.nodes[c].id);
      if (it == topo.prefixes.end()) {
        throw TopologyError("consumer " + topo.nodes[c].id + " has no RBN prefix");
      }
      std::size_t access = adjacency[c][0].peer;
      // Access router's interface toward this consumer.
      for (InterfaceId i = 0; i < adjacency[access].size(); ++i) {
        if (adjacency[access][i].peer == c) {
          plan.fibs[access].insert(it->second, i);
          break;
        }
      }
      site_rbns[access].push_back(it->second);
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (site_rbns[a].empty()) continue;
      Name aggregate = aggregate_prefixes(site_rbns[a]);
      install_toward(a, aggregate);
    }
    // Router RBNs (gateways) are plain advertisements.
    for (std::size_t r = 0; r < n; ++r) {
      if (topo.nodes[r].role != NodeRole::Router) continue;
      auto it = topo.prefixes.find(topo.nodes[r].id);
      if (it != topo.prefixes.end()) install_toward(r, it->second);
    }
  }

  return plan;
}

}  // namespace ccnlab
