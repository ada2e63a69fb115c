#include "ccnlab/content_store.hpp"

namespace ccnlab {

void ContentStore::insert(const Message& content, SimTime now, SimTime hint_s) {
  if (capacity_ == 0) return;
  const Name& key = content.name;
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    it->second.content = content;
    it->second.expiry = now + hint_s;
    recency_.erase(it->second.recency);
    recency_.push_front(key);
    it->second.recency = recency_.begin();
    return;
  }
  if (entries_.size() >= capacity_) {
    const Name& victim = recency_.back();
    entries_.erase(victim);
    recency_.pop_back();
  }
  recency_.push_front(key);
  Entry entry{content, now + hint_s, recency_.begin()};
  entries_.emplace(key, std::move(entry));
}

std::optional<Message> ContentStore::lookup(const Name& name, SimTime now) {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  if (now > it->second.expiry) {
    recency_.erase(it->second.recency);
    entries_.erase(it);
    return std::nullopt;
  }
  recency_.erase(it->second.recency);
  recency_.push_front(name);
  it->second.recency = recency_.begin();
  return it->second.content;
}

}  // namespace ccnlab
