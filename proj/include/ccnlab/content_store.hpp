#pragma once

#include <list>
#include <map>
#include <optional>

#include "ccnlab/message.hpp"
#include "ccnlab/name.hpp"
#include "ccnlab/pit.hpp"  // SimTime

namespace ccnlab {

/// Router content cache: exact-name keyed, LRU-evicted, with per-entry
/// expiry taken from the producer's cache hint. A lookup hit refreshes
/// recency; an expired entry behaves as absent.
class ContentStore {
 public:
  explicit ContentStore(std::size_t capacity = 65536) : capacity_(capacity) {}

  /// Stores a content object keyed by its exact name with expiry now + hint.
  /// Re-inserting a cached name overwrites it. Evicts the least recently
  /// used entry when full. A capacity of zero disables the store.
  void insert(const Message& content, SimTime now, SimTime hint_s);

  std::optional<Message> lookup(const Name& name, SimTime now);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  struct Entry {
    Message content;
    SimTime expiry = 0;
    std::list<Name>::iterator recency;  // position in recency_ (front = most recent)
  };

  std::list<Name> recency_;
  std::map<Name, Entry> entries_;
  std::size_t capacity_;
};

}  // namespace ccnlab
