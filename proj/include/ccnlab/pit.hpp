#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ccnlab/fib.hpp"
#include "ccnlab/name.hpp"

namespace ccnlab {

using SimTime = double;  // seconds

/// What a full PIT does with an interest it has no room for: silently drop
/// the newcomer, evict the oldest entry to make room, or tell the caller to
/// answer with a Nack(PitFull) so the consumer can retry statelessly.
enum class PitFullPolicy {
  DropNew,
  EvictOldest,
  NackNew,
};

struct PitEntry {
  Name name;
  std::set<InterfaceId> downstream_ifaces;  // never empty
  SimTime created_at = 0;
  SimTime lifetime = 0;
  std::uint64_t seq = 0;  // insertion order, breaks created_at ties

  bool expired(SimTime now) const { return now > created_at + lifetime; }
};

enum class PitInsertOutcome {
  Created,    // new entry (possibly after an eviction)
  Collapsed,  // interface appended to a live entry; do not forward
  Rejected,   // table full; policy was DropNew or NackNew
};

struct PitInsertResult {
  PitInsertOutcome outcome = PitInsertOutcome::Created;
  PitFullPolicy policy = PitFullPolicy::DropNew;  // policy in force on Rejected
  std::optional<PitEntry> evicted;                // set when EvictOldest removed an entry
};

/// Pending Interest Table: name -> downstream interfaces + lifetime. Entry
/// count never exceeds capacity; expired entries are reaped lazily and by
/// expire().
class Pit {
 public:
  explicit Pit(std::size_t capacity = 1 << 20,
               PitFullPolicy full_policy = PitFullPolicy::DropNew)
      : capacity_(capacity), full_policy_(full_policy) {}

  PitInsertResult insert_or_collapse(const Name& name, InterfaceId iface, SimTime now,
                                     SimTime lifetime);

  /// On a live entry: returns its downstream interfaces and removes it.
  std::optional<std::set<InterfaceId>> consume(const Name& name, SimTime now);

  /// Removes every entry past its lifetime; returns them (count == .size()).
  std::vector<PitEntry> expire(SimTime now);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  PitFullPolicy full_policy() const { return full_policy_; }
  void set_full_policy(PitFullPolicy p) { full_policy_ = p; }

 private:
  std::map<Name, PitEntry> entries_;
  std::size_t capacity_;
  PitFullPolicy full_policy_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace ccnlab
