#include "ccnlab/pit.hpp"

namespace ccnlab {

PitInsertResult Pit::insert_or_collapse(const Name& name, InterfaceId iface, SimTime now,
                                        SimTime lifetime) {
  PitInsertResult result;
  auto it = entries_.find(name);
  if (it != entries_.end()) {
    if (!it->second.expired(now)) {
      it->second.downstream_ifaces.insert(iface);
      result.outcome = PitInsertOutcome::Collapsed;
      return result;
    }
    entries_.erase(it);  // stale entry; replace it
  }

  if (entries_.size() >= capacity_) {
    if (full_policy_ != PitFullPolicy::EvictOldest || entries_.empty()) {
      result.outcome = PitInsertOutcome::Rejected;
      result.policy = full_policy_;
      return result;
    }
    auto oldest = entries_.begin();
    for (auto cur = entries_.begin(); cur != entries_.end(); ++cur) {
      if (cur->second.created_at < oldest->second.created_at ||
          (cur->second.created_at == oldest->second.created_at &&
           cur->second.seq < oldest->second.seq)) {
        oldest = cur;
      }
    }
    result.evicted = oldest->second;
    entries_.erase(oldest);
  }

  PitEntry entry;
  entry.name = name;
  entry.downstream_ifaces.insert(iface);
  entry.created_at = now;
  entry.lifetime = lifetime;
  entry.seq = next_seq_++;
  entries_.emplace(name, std::move(entry));
  result.outcome = PitInsertOutcome::Created;
  return result;
}

std::optional<std::set<InterfaceId>> Pit::consume(const Name& name, SimTime now) {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  if (it->second.expired(now)) {
    entries_.erase(it);
    return std::nullopt;
  }
  std::set<InterfaceId> ifaces = std::move(it->second.downstream_ifaces);
  entries_.erase(it);
  return ifaces;
}

std::vector<PitEntry> Pit::expire(SimTime now) {
  std::vector<PitEntry> removed;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.expired(now)) {
      removed.push_back(std::move(it->second));
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

}  // namespace ccnlab
