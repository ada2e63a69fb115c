#include "ccnlab/topology.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>

#include "ccnlab/rng.hpp"

namespace ccnlab {

std::string to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Consumer: return "consumer";
    case NodeRole::Router: return "router";
    case NodeRole::Producer: return "producer";
  }
  return "?";
}

std::string to_string(ForwarderMode mode) {
  switch (mode) {
    case ForwarderMode::Stateful: return "stateful";
    case ForwarderMode::Stateless: return "stateless";
    case ForwarderMode::Hybrid: return "hybrid";
  }
  return "?";
}

NodeRole parse_role(std::string_view text) {
  if (text == "consumer") return NodeRole::Consumer;
  if (text == "router") return NodeRole::Router;
  if (text == "producer") return NodeRole::Producer;
  throw TopologyError("unknown node role: " + std::string(text));
}

ForwarderMode parse_mode(std::string_view text) {
  if (text == "stateful") return ForwarderMode::Stateful;
  if (text == "stateless") return ForwarderMode::Stateless;
  if (text == "hybrid") return ForwarderMode::Hybrid;
  throw TopologyError("unknown forwarder mode: " + std::string(text));
}

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t consumed = 0;
    double v = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw TopologyError(std::string("bad ") + what + ": " + text);
  }
}

bool parse_bool(const std::string& text, const char* what) {
  if (text == "0" || text == "false") return false;
  if (text == "1" || text == "true") return true;
  throw TopologyError(std::string("bad ") + what + ": " + text);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Topology Topology::parse(std::string_view text) {
  Topology topo;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        (eol == std::string_view::npos) ? text.substr(pos) : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const std::string& kind = tokens[0];
    if (kind == "node" && tokens.size() == 5) {
      NodeSpec node;
      node.id = tokens[1];
      node.role = parse_role(tokens[2]);
      node.mode = parse_mode(tokens[3]);
      node.caching = parse_bool(tokens[4], "caching flag");
      topo.nodes.push_back(std::move(node));
    } else if (kind == "link" && tokens.size() == 6) {
      LinkSpec link;
      link.a = tokens[1];
      link.b = tokens[2];
      link.length_m = parse_double(tokens[3], "link length");
      link.alpha = parse_double(tokens[4], "link alpha");
      link.bandwidth_bps = parse_double(tokens[5], "link bandwidth");
      topo.links.push_back(std::move(link));
    } else if (kind == "prefix" && tokens.size() == 3) {
      topo.prefixes[tokens[1]] = parse_lci(tokens[2]);
    } else {
      throw TopologyError("bad topology line " + std::to_string(line_no));
    }
  }
  return topo;
}

std::string Topology::serialize() const {
  std::ostringstream out;
  for (const NodeSpec& n : nodes) {
    out << "node " << n.id << ' ' << to_string(n.role) << ' ' << to_string(n.mode) << ' '
        << (n.caching ? 1 : 0) << '\n';
  }
  for (const LinkSpec& l : links) {
    out << "link " << l.a << ' ' << l.b << ' ' << fmt_double(l.length_m) << ' '
        << fmt_double(l.alpha) << ' ' << fmt_double(l.bandwidth_bps) << '\n';
  }
  for (const auto& [node, prefix] : prefixes) {
    out << "prefix " << node << ' ' << format_lci(prefix) << '\n';
  }
  return out.str();
}

std::size_t Topology::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  throw TopologyError("unknown node id: " + id);
}

std::vector<std::vector<Topology::Iface>> Topology::build_adjacency() const {
  std::vector<std::vector<Iface>> ifaces(nodes.size());
  for (std::size_t li = 0; li < links.size(); ++li) {
    std::size_t a = index_of(links[li].a);
    std::size_t b = index_of(links[li].b);
    ifaces[a].push_back({li, b});
    ifaces[b].push_back({li, a});
  }
  return ifaces;
}

void Topology::validate() const {
  if (nodes.empty()) throw TopologyError("topology has no nodes");
  std::set<std::string> ids;
  for (const NodeSpec& n : nodes) {
    if (!ids.insert(n.id).second) throw TopologyError("duplicate node id: " + n.id);
  }
  for (const LinkSpec& l : links) {
    index_of(l.a);
    index_of(l.b);
    if (l.length_m <= 0 || l.alpha <= 0 || l.alpha > 1 || l.bandwidth_bps <= 0) {
      throw TopologyError("bad link parameters between " + l.a + " and " + l.b);
    }
  }
  auto adjacency = build_adjacency();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].role == NodeRole::Consumer && adjacency[i].size() != 1) {
      throw TopologyError("consumer " + nodes[i].id + " must attach to exactly one router");
    }
    if (nodes[i].role == NodeRole::Consumer && adjacency[i].size() == 1 &&
        nodes[adjacency[i][0].peer].role != NodeRole::Router) {
      throw TopologyError("consumer " + nodes[i].id + " must attach to a router");
    }
  }
  // Connectivity sweep.
  std::vector<bool> seen(nodes.size(), false);
  std::deque<std::size_t> frontier{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    std::size_t u = frontier.front();
    frontier.pop_front();
    for (const Iface& f : adjacency[u]) {
      if (!seen[f.peer]) {
        seen[f.peer] = true;
        ++reached;
        frontier.push_back(f.peer);
      }
    }
  }
  if (reached != nodes.size()) throw DisconnectedTopology("topology is not connected");
}

namespace {

struct Builder {
  Topology topo;
  Rng rng;

  explicit Builder(std::uint64_t seed) : rng(derive_seed(seed, "topology", 0)) {}

  void node(std::string id, NodeRole role, bool caching = false) {
    topo.nodes.push_back({std::move(id), role, ForwarderMode::Stateful, caching});
  }

  void link(const std::string& a, const std::string& b, double lo_m, double hi_m) {
    topo.links.push_back({a, b, rng.uniform(lo_m, hi_m), 0.7, 1e9});
  }

  void consumers_on(const std::string& edge_id, std::size_t site, std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) {
      std::string id = "c" + std::to_string(site * count + j);
      node(id, NodeRole::Consumer);
      link(edge_id, id, 1e3, 5e3);
      topo.prefixes[id] =
          parse_lci("lci:/edu/site" + std::to_string(site) + "/h" + std::to_string(j));
    }
  }

  void producer_on(const std::string& edge_id) {
    node("prod", NodeRole::Producer);
    link(edge_id, "prod", 1e3, 5e3);
    topo.prefixes["prod"] = parse_lci("lci:/prod/files");
  }
};

Topology make_line(std::size_t n) {
  if (n < 3) throw TopologyError("line topology needs at least 3 nodes");
  Topology topo;
  topo.nodes.push_back({"c0", NodeRole::Consumer, ForwarderMode::Stateful, false});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    topo.nodes.push_back({"r" + std::to_string(i), NodeRole::Router, ForwarderMode::Stateful,
                          i == 1});  // cache at the consumer-facing router
  }
  topo.nodes.push_back({"prod", NodeRole::Producer, ForwarderMode::Stateful, false});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // 300 km at alpha 1.0: exactly 1 ms propagation per link.
    topo.links.push_back({topo.nodes[i].id, topo.nodes[i + 1].id, 300e3, 1.0, 1e9});
  }
  topo.prefixes["c0"] = parse_lci("lci:/edu/site0/h0");
  topo.prefixes["prod"] = parse_lci("lci:/prod/files");
  return topo;
}

Topology make_tree(std::size_t depth, std::size_t fanout) {
  if (depth < 1 || fanout < 1) throw TopologyError("tree needs depth >= 1 and fanout >= 1");
  Topology topo;
  Builder b(0);
  b.node("t0", NodeRole::Router);
  std::vector<std::size_t> level{0};  // node indices of the current level
  std::size_t next = 1;
  for (std::size_t d = 1; d < depth; ++d) {
    std::vector<std::size_t> next_level;
    for (std::size_t parent : level) {
      for (std::size_t f = 0; f < fanout; ++f) {
        std::string id = "t" + std::to_string(next);
        b.node(id, NodeRole::Router, d + 1 == depth);
        b.topo.links.push_back({b.topo.nodes[parent].id, id, 100e3, 0.7, 1e9});
        next_level.push_back(next++);
      }
    }
    level = std::move(next_level);
  }
  topo = std::move(b.topo);
  std::size_t site = 0;
  for (std::size_t leaf : level) {
    std::string cid = "c" + std::to_string(site);
    topo.nodes.push_back({cid, NodeRole::Consumer, ForwarderMode::Stateful, false});
    topo.links.push_back({topo.nodes[leaf].id, cid, 5e3, 0.7, 1e9});
    topo.prefixes[cid] =
        parse_lci("lci:/edu/site" + std::to_string(site) + "/h0");
    ++site;
  }
  topo.nodes.push_back({"prod", NodeRole::Producer, ForwarderMode::Stateful, false});
  topo.links.push_back({"t0", "prod", 5e3, 0.7, 1e9});
  topo.prefixes["prod"] = parse_lci("lci:/prod/files");
  return topo;
}

/// Parameterized approximation of a research/carrier network: a chorded
/// core ring, an aggregation tier, and edge routers carrying 16 consumer
/// sites of 10 consumers plus one producer. Counts match the published
/// experiment scale; the exact geometry is seed-dependent.
Topology make_mesh(std::uint64_t seed, std::size_t core_count, std::size_t agg_count,
                   std::size_t chords) {
  constexpr std::size_t kEdges = 16;
  constexpr std::size_t kConsumersPerSite = 10;
  Builder b(seed);

  for (std::size_t i = 0; i < core_count; ++i) {
    b.node("core" + std::to_string(i), NodeRole::Router);
  }
  for (std::size_t i = 0; i < core_count; ++i) {
    b.link("core" + std::to_string(i), "core" + std::to_string((i + 1) % core_count), 100e3,
           500e3);
  }
  std::size_t added = 0;
  while (added < chords) {
    std::size_t x = b.rng.next_below(core_count);
    std::size_t y = b.rng.next_below(core_count);
    if (x == y || (x + 1) % core_count == y || (y + 1) % core_count == x) continue;
    b.link("core" + std::to_string(x), "core" + std::to_string(y), 100e3, 500e3);
    ++added;
  }
  for (std::size_t j = 0; j < agg_count; ++j) {
    std::string id = "agg" + std::to_string(j);
    b.node(id, NodeRole::Router);
    std::size_t first = b.rng.next_below(core_count);
    std::size_t second = (first + 1 + b.rng.next_below(core_count - 1)) % core_count;
    b.link(id, "core" + std::to_string(first), 50e3, 150e3);
    b.link(id, "core" + std::to_string(second), 50e3, 150e3);
  }
  for (std::size_t e = 0; e < kEdges; ++e) {
    std::string id = "edge" + std::to_string(e);
    b.node(id, NodeRole::Router, /*caching=*/true);
    b.link(id, "agg" + std::to_string(e % agg_count), 10e3, 50e3);
    if (e % 3 == 0) {
      b.link(id, "agg" + std::to_string(b.rng.next_below(agg_count)), 10e3, 50e3);
    }
  }
  for (std::size_t e = 0; e < kEdges; ++e) {
    b.consumers_on("edge" + std::to_string(e), e, kConsumersPerSite);
  }
  b.producer_on("edge0");
  return std::move(b.topo);
}

}  // namespace

Topology generate_topology(const std::string& kind, std::uint64_t seed) {
  Topology topo;
  if (kind.rfind("line:", 0) == 0) {
    topo = make_line(static_cast<std::size_t>(std::stoul(kind.substr(5))));
  } else if (kind.rfind("tree:", 0) == 0) {
    std::string args = kind.substr(5);
    std::size_t comma = args.find(',');
    if (comma == std::string::npos) throw TopologyError("tree spec is tree:<depth>,<fanout>");
    topo = make_tree(std::stoul(args.substr(0, comma)), std::stoul(args.substr(comma + 1)));
  } else if (kind == "dfn_like") {
    topo = make_mesh(seed, 10, 12, 4);
  } else if (kind == "att_like") {
    topo = make_mesh(seed, 14, 14, 8);
  } else {
    throw TopologyError("unknown topology kind: " + kind);
  }
  topo.validate();
  return topo;
}

}  // namespace ccnlab
