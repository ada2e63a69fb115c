#include "ccnlab/forwarder.hpp"

namespace ccnlab {

Forwarder::Forwarder(ForwarderConfig cfg) : cfg_(std::move(cfg)), cs_(cfg_.cs_capacity) {
  if (cfg_.mode == ForwarderMode::Hybrid) {
    cfg_.pit_full_policy = PitFullPolicy::NackNew;
  }
  if (cfg_.mode != ForwarderMode::Stateless) {
    pit_.emplace(cfg_.pit_capacity, cfg_.pit_full_policy);
  }
}

void Forwarder::remember_interest(const Message& interest) {
  if (cfg_.mode != ForwarderMode::Hybrid || !cfg_.rbn) return;
  if (cfg_.recent_interest_capacity == 0) return;
  auto [it, inserted] = recent_interests_.insert_or_assign(interest.name, interest);
  if (inserted) {
    recent_order_.push_back(interest.name);
    while (recent_order_.size() > cfg_.recent_interest_capacity) {
      recent_interests_.erase(recent_order_.front());
      recent_order_.pop_front();
    }
  }
}

std::optional<Message> Forwarder::recall_interest(const Name& name) {
  auto it = recent_interests_.find(name);
  if (it == recent_interests_.end()) return std::nullopt;
  return it->second;
}

std::optional<InterfaceId> Forwarder::route(const Name& name) {
  ++counters_.fib_lookups;
  std::optional<InterfaceId> hop = fib_.lookup(name);
  if (cfg_.route_strategy) hop = cfg_.route_strategy(name, hop);
  return hop;
}

ForwardAction Forwarder::process_interest(const Message& interest, InterfaceId arrival,
                                          SimTime now) {
  ForwardAction action;

  ++counters_.cs_lookups;
  if (auto cached = cs_.lookup(interest.name, now)) {
    // Honor the interest's variant: the reply carries the interest's SN (or
    // none), not whatever SN the cached copy arrived with.
    Message reply = *cached;
    reply.supporting_name = interest.supporting_name;
    action.sends.push_back({std::move(reply), arrival});
    action.note = ProcessNote::CsHit;
    return action;
  }

  if (cfg_.mode == ForwarderMode::Stateless) {
    if (!interest.supporting_name) {
      ++counters_.nacks_sent;
      action.sends.push_back({Message::nack(interest, NackReason::NoSupportingName), arrival});
      action.note = ProcessNote::NackedNoSupportingName;
      return action;
    }
    if (auto out = route(interest.name)) {
      action.sends.push_back({interest, *out});
      action.note = ProcessNote::ForwardedUpstream;
    } else {
      action.note = ProcessNote::DroppedNoRoute;
    }
    return action;
  }

  // Stateful and hybrid: one PIT operation per interest. The SN, when
  // present, is carried through untouched but plays no role here.
  ++counters_.pit_inserts;
  PitInsertResult res = pit_->insert_or_collapse(interest.name, arrival, now, cfg_.pit_lifetime);
  action.evicted = res.evicted;

  switch (res.outcome) {
    case PitInsertOutcome::Created: {
      if (auto out = route(interest.name)) {
        remember_interest(interest);
        action.sends.push_back({interest, *out});
        action.note = ProcessNote::ForwardedUpstream;
      } else {
        action.note = ProcessNote::DroppedNoRoute;
      }
      return action;
    }
    case PitInsertOutcome::Collapsed:
      action.note = ProcessNote::Collapsed;
      return action;
    case PitInsertOutcome::Rejected:
      break;
  }

  if (res.policy == PitFullPolicy::NackNew) {
    if (cfg_.mode == ForwarderMode::Hybrid && interest.supporting_name) {
      // Full PIT but the interest is self-routing: pass it through without
      // state. Content will come back via FIB(SN).
      if (auto out = route(interest.name)) {
        action.sends.push_back({interest, *out});
        action.note = ProcessNote::StatelessBypass;
      } else {
        action.note = ProcessNote::DroppedNoRoute;
      }
      return action;
    }
    ++counters_.nacks_sent;
    action.sends.push_back({Message::nack(interest, NackReason::PitFull), arrival});
    action.note = ProcessNote::NackedPitFull;
    return action;
  }

  action.note = ProcessNote::DroppedPitFull;
  return action;
}

ForwardAction Forwarder::process_content(const Message& content, InterfaceId arrival,
                                         SimTime now, std::optional<SimTime> cache_hint) {
  (void)arrival;
  ForwardAction action;
  SimTime hint = cache_hint.value_or(cfg_.default_cache_hint);

  if (cfg_.content_verifier && !cfg_.content_verifier(content)) {
    action.note = ProcessNote::DroppedFailedVerification;
    return action;
  }

  if (cfg_.mode == ForwarderMode::Stateless) {
    if (!content.supporting_name) {
      throw MissingSupportingName("stateless router cannot forward content without an SN");
    }
    if (cfg_.caching_enabled) {
      ++counters_.cs_inserts;
      cs_.insert(content, now, hint);
    }
    if (auto out = route(*content.supporting_name)) {
      action.sends.push_back({content, *out});
      action.note = ProcessNote::ForwardedDownstream;
    } else {
      action.note = ProcessNote::DroppedNoRoute;
    }
    return action;
  }

  ++counters_.pit_lookups;
  if (auto ifaces = pit_->consume(content.name, now)) {
    ++counters_.pit_deletes;
    if (cfg_.caching_enabled) {
      ++counters_.cs_inserts;
      cs_.insert(content, now, hint);
    }
    for (InterfaceId out : *ifaces) {
      action.sends.push_back({content, out});
    }
    action.note = ProcessNote::ForwardedDownstream;
    return action;
  }

  if (cfg_.mode == ForwarderMode::Hybrid && content.supporting_name) {
    // No pending entry here (e.g. the interest bypassed a full PIT); the SN
    // still routes it.
    if (cfg_.caching_enabled) {
      ++counters_.cs_inserts;
      cs_.insert(content, now, hint);
    }
    if (auto out = route(*content.supporting_name)) {
      action.sends.push_back({content, *out});
      action.note = ProcessNote::ForwardedDownstream;
    } else {
      action.note = ProcessNote::DroppedNoRoute;
    }
    return action;
  }

  // A consumer never gets content it did not ask for.
  action.note = ProcessNote::DroppedUnsolicited;
  return action;
}

ForwardAction Forwarder::process_nack(const Message& nack, InterfaceId arrival, SimTime now) {
  (void)arrival;
  ForwardAction action;

  // Gateway recovery: supply our own RBN and push the interest upstream
  // again. The original PIT entry stays; the content it pulls back will be
  // consumed through it.
  if (cfg_.mode == ForwarderMode::Hybrid && cfg_.rbn &&
      nack.nack_reason == NackReason::NoSupportingName) {
    if (auto original = recall_interest(nack.name)) {
      Message reissue = *original;
      reissue.supporting_name = cfg_.rbn;
      if (auto out = route(reissue.name)) {
        action.sends.push_back({std::move(reissue), *out});
        action.note = ProcessNote::GatewayReissued;
      } else {
        action.note = ProcessNote::DroppedNoRoute;
      }
      return action;
    }
  }

  // Reverse-path forwarding: the NACK flushes the pending entry like a
  // (negative) content object, so a stateless re-issue will not collapse
  // into a dead entry downstream.
  if (pit_) {
    ++counters_.pit_lookups;
    if (auto ifaces = pit_->consume(nack.name, now)) {
      ++counters_.pit_deletes;
      for (InterfaceId out : *ifaces) {
        ++counters_.nacks_sent;
        action.sends.push_back({nack, out});
      }
      action.note = ProcessNote::ForwardedNack;
      return action;
    }
  }

  if (nack.supporting_name) {
    if (auto out = route(*nack.supporting_name)) {
      ++counters_.nacks_sent;
      action.sends.push_back({nack, *out});
      action.note = ProcessNote::ForwardedNack;
      return action;
    }
  }

  action.note = ProcessNote::DroppedUnmatchableNack;
  return action;
}

std::vector<PitEntry> Forwarder::expire_pit(SimTime now) {
  if (!pit_) return {};
  return pit_->expire(now);
}

}  // namespace ccnlab
