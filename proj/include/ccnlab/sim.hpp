#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccnlab/forwarder.hpp"
#include "ccnlab/routing.hpp"
#include "ccnlab/topology.hpp"

namespace ccnlab {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Modeled per-operation processing costs, seconds. These are declared
/// configuration, not measurements: the simulator reports exact operation
/// counts separately so cost-table choices never contaminate them.
struct CostTable {
  double cs_lookup_s = 2e-6;
  double cs_insert_s = 2e-6;
  double pit_op_s = 2e-6;
  double fib_lookup_s = 2e-6;

  double elapsed(const OpCounters& before, const OpCounters& after) const {
    return cs_lookup_s * static_cast<double>(after.cs_lookups - before.cs_lookups) +
           cs_insert_s * static_cast<double>(after.cs_inserts - before.cs_inserts) +
           pit_op_s * static_cast<double>(after.pit_total() - before.pit_total()) +
           fib_lookup_s * static_cast<double>(after.fib_lookups - before.fib_lookups);
  }
};

struct TrafficSpec {
  double rate_per_consumer = 10.0;   // interests per second, Poisson
  std::size_t num_classes = 4;       // popularity classes, halving rates
  bool unique_suffix = true;         // fresh component per interest (defeats caching)
  std::size_t catalog_per_class = 1; // distinct objects per class when reusable
};

struct AttackSpec {
  std::vector<std::string> attackers;  // consumer node ids
  double rate = 1000.0;                // unsatisfiable interests per second per attacker
  double start_s = 0;
  double stop_s = 0;
};

struct SimConfig {
  std::uint64_t seed = 1;
  double duration_s = 10.0;
  /// Forces every router (and each consumer's issue style) to one mode;
  /// absent, per-node modes from the topology apply.
  std::optional<ForwarderMode> mode_override;
  TrafficSpec traffic;
  std::optional<AttackSpec> attack;

  std::size_t pit_capacity = 1 << 20;
  PitFullPolicy pit_full_policy = PitFullPolicy::DropNew;
  double pit_lifetime_s = 4.0;
  std::size_t cs_capacity = 65536;
  std::optional<bool> caching_override;
  double cache_hint_s = 10.0;   // producer-declared cache residency
  std::size_t payload_bytes = 1024;
  double producer_service_s = 0.0;
  std::size_t consumer_retry_cap = 3;
  CostTable costs;
  /// Record per-interest node paths and verify at delivery that content
  /// retraced the interest's path in reverse (meaningful for stateful runs
  /// with unique names). Off by default; it is a test instrument.
  bool trace_paths = false;
};

struct NodeMetrics {
  OpCounters ops;
  std::uint64_t interests_rx = 0;
  std::uint64_t contents_rx = 0;
  std::uint64_t nacks_rx = 0;
  std::uint64_t drops = 0;
  std::uint64_t collapses = 0;
  std::uint64_t cs_hits = 0;
  std::uint64_t pit_expired = 0;
  // Table operations (CS + PIT + FIB) split by the packet type that caused
  // them; the raw material of the forwarding-overhead comparison.
  std::uint64_t interest_ops = 0;
  std::uint64_t content_ops = 0;
  std::uint64_t nack_ops = 0;
};

struct RttSample {
  std::string consumer;
  int hops = 0;        // consumer-to-producer link count
  double issued_at = 0;
  double rtt_s = 0;
  bool recovered = false;  // delivered only after NACK-driven re-issue
};

struct RttRow {
  int hops = 0;
  double mean_rtt_s = 0;
  double stddev = 0;
  std::uint64_t count = 0;
};

/// Everything one run reports. Conservation holds exactly:
/// issued == delivered + dropped + nacked_unrecovered + in_flight, for the
/// legitimate and attack populations separately.
struct RunMetrics {
  std::map<std::string, NodeMetrics> nodes;

  std::uint64_t issued = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t nacked_unrecovered = 0;
  std::uint64_t in_flight = 0;

  std::uint64_t issued_attack = 0;
  std::uint64_t delivered_attack = 0;
  std::uint64_t dropped_attack = 0;
  std::uint64_t nacked_unrecovered_attack = 0;
  std::uint64_t in_flight_attack = 0;

  std::uint64_t collapsed_interests = 0;
  std::uint64_t cs_hits = 0;
  std::uint64_t recovered_deliveries = 0;

  // Populated only when SimConfig::trace_paths is set.
  std::uint64_t traced_deliveries = 0;
  std::uint64_t reverse_path_violations = 0;

  // Legitimate interests bucketed by issue time against the attack window.
  std::uint64_t issued_before_attack = 0, delivered_before_attack = 0, dropped_before_attack = 0;
  std::uint64_t issued_during_attack = 0, delivered_during_attack = 0, dropped_during_attack = 0;
  std::uint64_t issued_after_attack = 0, delivered_after_attack = 0, dropped_after_attack = 0;
  double legit_drop_rate_during_attack = 0;

  double mean_rtt_s = 0;
  double mean_rtt_baseline_s = 0;   // deliveries that needed no recovery
  double mean_rtt_recovered_s = 0;  // deliveries after a NACK re-issue

  std::vector<RttSample> rtt_samples;
  bool conservation_ok = true;

  std::vector<RttRow> rtt_by_hops() const;

  /// Two CSV tables: "run_id,node,metric,value" rows (node "_run" carries
  /// the totals) and "hops,mean_rtt_s,stddev,count". header_comment lines
  /// are echoed with a leading '#'.
  std::string to_csv(const std::string& run_id, const std::string& header_comment) const;
};

/// One deterministic discrete-event run: identical (topology, config) pairs
/// produce bit-identical RunMetrics. Validates the topology and config;
/// requires exactly one producer.
RunMetrics run_simulation(const Topology& topo, const SimConfig& cfg);

}  // namespace ccnlab
