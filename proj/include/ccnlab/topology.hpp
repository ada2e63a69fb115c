#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccnlab/forwarder.hpp"
#include "ccnlab/name.hpp"

namespace ccnlab {

class TopologyError : public std::runtime_error {
 public:
  explicit TopologyError(const std::string& what) : std::runtime_error(what) {}
};

class DisconnectedTopology : public TopologyError {
 public:
  explicit DisconnectedTopology(const std::string& what) : TopologyError(what) {}
};

enum class NodeRole { Consumer, Router, Producer };

struct NodeSpec {
  std::string id;
  NodeRole role = NodeRole::Router;
  ForwarderMode mode = ForwarderMode::Stateful;
  bool caching = false;
};

struct LinkSpec {
  std::string a;
  std::string b;
  double length_m = 0;
  double alpha = 1.0;       // propagation speed = alpha * c
  double bandwidth_bps = 1e9;
};

/// A network: nodes, point-to-point links, and the advertised name prefixes
/// (consumer RBNs, producer content prefixes, and optional router RBNs that
/// make those routers NACK-recovery gateways).
///
/// Text form, line oriented ('#' starts a comment):
///   node <id> <consumer|router|producer> <stateful|stateless|hybrid> <0|1>
///   link <a> <b> <length_m> <alpha> <bandwidth_bps>
///   prefix <node> <lci-name>
struct Topology {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::map<std::string, Name> prefixes;

  static Topology parse(std::string_view text);
  std::string serialize() const;

  /// Unique ids, both link endpoints known, consumers single-homed, graph
  /// connected. Throws TopologyError / DisconnectedTopology.
  void validate() const;

  std::size_t index_of(const std::string& id) const;

  struct Iface {
    std::size_t link;  // index into links
    std::size_t peer;  // node index of the far end
  };
  /// Per-node interface table; interface ids are positions, assigned in
  /// link declaration order (this numbering is part of the FIB contract).
  std::vector<std::vector<Iface>> build_adjacency() const;
};

/// Builds a named topology:
///   "line:<n>"            n >= 3 nodes: consumer, n-2 routers, producer
///   "tree:<depth>,<fan>"  router tree, one consumer per leaf, producer at root
///   "dfn_like"            38 routers, 16 consumer sites x 10, producer at an edge
///   "att_like"            44 routers, same consumer/producer layout
/// The seed drives link lengths and extra cross links of the *_like kinds.
Topology generate_topology(const std::string& kind, std::uint64_t seed);

std::string to_string(NodeRole role);
std::string to_string(ForwarderMode mode);
NodeRole parse_role(std::string_view text);
ForwarderMode parse_mode(std::string_view text);

}  // namespace ccnlab
