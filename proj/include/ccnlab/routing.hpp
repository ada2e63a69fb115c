#pragma once

#include <optional>
#include <vector>

#include "ccnlab/fib.hpp"
#include "ccnlab/topology.hpp"

namespace ccnlab {

/// Routes installed for one run: a FIB per node plus per-node path facts
/// toward the (single) producer that the simulator reports against.
struct RoutePlan {
  std::vector<Fib> fibs;                       // indexed like Topology::nodes
  std::vector<int> hops_to_producer;           // link count, -1 where not applicable
  std::vector<double> delay_to_producer_s;     // one-way propagation sum
};

/// Populates every node's FIB by shortest path over propagation delay:
/// producer content prefixes everywhere; and, when install_rbn_routes is
/// set (stateless or hybrid traffic), each consumer's RBN at its access
/// router plus the per-site aggregate everywhere else, and any router RBNs
/// (gateways). Throws DisconnectedTopology if some node cannot reach an
/// advertised prefix owner.
RoutePlan build_routes(const Topology& topo, bool install_rbn_routes);

}  // namespace ccnlab
