#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccnlab/content_store.hpp"
#include "ccnlab/fib.hpp"
#include "ccnlab/message.hpp"
#include "ccnlab/pit.hpp"

namespace ccnlab {

class MissingSupportingName : public std::runtime_error {
 public:
  explicit MissingSupportingName(const std::string& what) : std::runtime_error(what) {}
};

enum class ForwarderMode {
  Stateful,   // PIT on the interest path, reverse-path content delivery
  Stateless,  // no PIT; content routed by FIB lookup on its SupportingName
  Hybrid,     // stateful with NackNew and stateless fallbacks on SN packets
};

/// Table-operation counters, the raw material for the forwarding-overhead
/// comparison. Each counter ticks once per table operation on the packet
/// path: pit_inserts counts insert-or-collapse calls whatever their outcome,
/// a consume attempt is one pit_lookup plus one pit_delete on a hit, and
/// nacks_sent counts every Nack a node emits (originated or forwarded).
/// Housekeeping (timer-driven expiry sweeps) does not tick counters.
struct OpCounters {
  std::uint64_t cs_lookups = 0;
  std::uint64_t cs_inserts = 0;
  std::uint64_t pit_lookups = 0;
  std::uint64_t pit_inserts = 0;
  std::uint64_t pit_deletes = 0;
  std::uint64_t fib_lookups = 0;
  std::uint64_t nacks_sent = 0;

  std::uint64_t pit_total() const { return pit_lookups + pit_inserts + pit_deletes; }
  std::uint64_t total() const {
    return cs_lookups + cs_inserts + pit_total() + fib_lookups;
  }
};

/// What processing one packet did, for metrics and tests.
enum class ProcessNote {
  ForwardedUpstream,
  ForwardedDownstream,
  ForwardedNack,
  CsHit,
  Collapsed,
  NackedNoSupportingName,
  NackedPitFull,
  StatelessBypass,  // hybrid: full PIT, SN present, forwarded without state
  GatewayReissued,  // hybrid gateway re-issued a NACKed interest with its own RBN
  DroppedNoRoute,
  DroppedPitFull,
  DroppedUnsolicited,
  DroppedFailedVerification,
  DroppedUnmatchableNack,
};

inline bool is_drop(ProcessNote note) {
  return note == ProcessNote::DroppedNoRoute || note == ProcessNote::DroppedPitFull ||
         note == ProcessNote::DroppedUnsolicited ||
         note == ProcessNote::DroppedFailedVerification ||
         note == ProcessNote::DroppedUnmatchableNack;
}

struct Send {
  Message msg;
  InterfaceId out_iface;
};

struct ForwardAction {
  std::vector<Send> sends;
  ProcessNote note = ProcessNote::ForwardedUpstream;
  std::optional<PitEntry> evicted;  // EvictOldest casualty, for caller bookkeeping
};

/// Router content verification is optional in this architecture; the hook
/// defaults to accepting everything. Returning false drops the content
/// before it is cached or forwarded.
using ContentVerifier = std::function<bool(const Message&)>;

/// Forwarding strategy over the FIB result. The default, "single best
/// route", takes the longest-prefix match as is; a substitute may veto or
/// redirect it.
using RouteStrategy =
    std::function<std::optional<InterfaceId>(const Name&, std::optional<InterfaceId>)>;

struct ForwarderConfig {
  ForwarderMode mode = ForwarderMode::Stateful;
  bool caching_enabled = false;
  std::size_t cs_capacity = 65536;
  std::size_t pit_capacity = 1 << 20;
  PitFullPolicy pit_full_policy = PitFullPolicy::DropNew;  // Hybrid forces NackNew
  SimTime pit_lifetime = 4.0;
  SimTime default_cache_hint = 10.0;  // used when content arrives without one
  std::optional<Name> rbn;            // routable prefix; makes a hybrid router a gateway
  std::size_t recent_interest_capacity = 1024;
  ContentVerifier content_verifier;   // unset: no in-network verification
  RouteStrategy route_strategy;       // unset: single best route
};

/// Per-router packet processing. One Forwarder is one router's fast path:
/// a FIB, a content store, and (in stateful and hybrid modes) a PIT. It is
/// a pure state machine; the caller owns interfaces, timing, and delivery.
class Forwarder {
 public:
  explicit Forwarder(ForwarderConfig cfg);

  Fib& fib() { return fib_; }
  const Fib& fib() const { return fib_; }
  const OpCounters& counters() const { return counters_; }
  const ForwarderConfig& config() const { return cfg_; }
  ForwarderMode mode() const { return cfg_.mode; }
  bool has_pit() const { return pit_.has_value(); }
  const Pit* pit() const { return pit_ ? &*pit_ : nullptr; }
  const ContentStore& content_store() const { return cs_; }

  ForwardAction process_interest(const Message& interest, InterfaceId arrival, SimTime now);

  /// cache_hint overrides the configured default expiry when this router
  /// caches the content (it is producer metadata carried out of band).
  ForwardAction process_content(const Message& content, InterfaceId arrival, SimTime now,
                                std::optional<SimTime> cache_hint = std::nullopt);

  ForwardAction process_nack(const Message& nack, InterfaceId arrival, SimTime now);

  /// Timer-driven PIT sweep; returns the entries that lapsed.
  std::vector<PitEntry> expire_pit(SimTime now);

 private:
  void remember_interest(const Message& interest);
  std::optional<Message> recall_interest(const Name& name);

  /// One FIB lookup plus the strategy decision.
  std::optional<InterfaceId> route(const Name& name);

  ForwarderConfig cfg_;
  Fib fib_;
  ContentStore cs_;
  std::optional<Pit> pit_;
  OpCounters counters_;

  // Bounded FIFO of recently forwarded interests; lets a hybrid gateway
  // reconstruct an interest when a NoSupportingName NACK comes back.
  std::deque<Name> recent_order_;
  std::map<Name, Message> recent_interests_;
};

}  // namespace ccnlab
