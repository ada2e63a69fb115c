#include "ccnlab/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <queue>

#include "ccnlab/collapse_model.hpp"  // kSpeedOfLight, zipf_rates
#include "ccnlab/message.hpp"
#include "ccnlab/rng.hpp"

namespace ccnlab {

namespace {

constexpr double kExpireSlack = 1e-9;  // PIT expiry is strict, sweep just after

enum class InterestFate : std::uint8_t { InFlight, Delivered, Dropped, NackedUnrecovered };

struct FateRecord {
  InterestFate fate = InterestFate::InFlight;
  bool is_attack = false;
  double issued_at = 0;
};

struct PacketEnvelope {
  Message msg;
  std::uint64_t interest_id = 0;
  bool is_attack = false;
  double issued_at = 0;
  std::optional<double> cache_hint;  // producer metadata riding with content
  std::vector<std::size_t> trace;    // nodes this content visited (tracing only)
};

struct Event {
  double time = 0;
  std::uint64_t seq = 0;  // insertion order; breaks time ties deterministically
  enum class Kind { PacketArrival, GenerateInterest, PitSweep } kind = Kind::PacketArrival;
  std::size_t node = 0;
  InterfaceId iface = 0;
  PacketEnvelope pkt;
  bool attack_gen = false;

  bool operator>(const Event& other) const {
    if (time != other.time) return time > other.time;
    return seq > other.seq;
  }
};

struct Outstanding {
  std::uint64_t id = 0;
  double issued_at = 0;
  std::size_t retries = 0;
};

struct ConsumerState {
  Name rbn;
  bool issue_with_sn = false;
  Rng traffic_rng{0};
  Rng attack_rng{0};
  std::map<Name, std::vector<Outstanding>> outstanding;
};

class Simulator {
 public:
  Simulator(const Topology& topo, const SimConfig& cfg)
      : topo_(topo), cfg_(cfg), adjacency_(topo.build_adjacency()) {}

  RunMetrics run();

 private:
  // --- setup -------------------------------------------------------------
  void apply_overrides();
  void build_nodes();
  void seed_traffic();

  // --- event handlers ----------------------------------------------------
  void handle_packet(const Event& ev);
  void handle_generate(const Event& ev);
  void handle_pit_sweep(const Event& ev);

  void router_packet(const Event& ev);
  void consumer_packet(const Event& ev);
  void producer_packet(const Event& ev);

  void issue_interest(std::size_t consumer, double now, bool attack);
  void dispatch_sends(std::size_t node, const ForwardAction& action, const Event& ev, double now);
  void transmit(std::size_t node, InterfaceId iface, PacketEnvelope env, double depart);
  void schedule(Event ev);

  // --- bookkeeping ---------------------------------------------------------
  std::uint64_t new_interest(bool attack, double now);
  void settle(std::uint64_t id, InterestFate fate);
  void note_pit_created(std::size_t node, const Name& name, std::uint64_t id);
  void drop_pending(std::size_t node, const Name& name);
  void clear_pending(std::size_t node, const Name& name);
  NodeMetrics& metrics_for(std::size_t node);
  void finalize(RunMetrics& out);

  const Topology& topo_;
  SimConfig cfg_;
  std::vector<std::vector<Topology::Iface>> adjacency_;
  std::vector<NodeSpec> nodes_;  // topology nodes with overrides applied

  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::uint64_t next_event_seq_ = 0;
  double now_ = 0;

  std::vector<std::unique_ptr<Forwarder>> forwarders_;
  std::vector<ConsumerState> consumers_;
  std::vector<std::map<Name, std::vector<std::uint64_t>>> pit_pending_;
  std::size_t producer_ = 0;
  Name producer_prefix_;
  std::size_t producer_prefix_len_ = 0;

  RoutePlan routes_;
  std::vector<FateRecord> fates_;
  RunMetrics metrics_;
  std::vector<double> class_cumulative_;
  std::uint64_t suffix_counter_ = 0;
  bool fate_conflict_ = false;
  std::map<std::uint64_t, std::vector<std::size_t>> trace_interest_;
};

void Simulator::apply_overrides() {
  nodes_ = topo_.nodes;
  for (NodeSpec& n : nodes_) {
    if (cfg_.mode_override) n.mode = *cfg_.mode_override;
    if (cfg_.caching_override && n.role == NodeRole::Router) n.caching = *cfg_.caching_override;
  }
}

void Simulator::build_nodes() {
  std::size_t n = nodes_.size();
  forwarders_.resize(n);
  consumers_.resize(n);
  pit_pending_.resize(n);

  std::size_t producer_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeSpec& spec = nodes_[i];
    if (spec.role == NodeRole::Producer) {
      producer_ = i;
      ++producer_count;
      auto it = topo_.prefixes.find(spec.id);
      if (it == topo_.prefixes.end()) throw ConfigError("producer has no content prefix");
      producer_prefix_ = it->second;
      producer_prefix_len_ = producer_prefix_.size();
    } else if (spec.role == NodeRole::Router) {
      ForwarderConfig fc;
      fc.mode = spec.mode;
      fc.caching_enabled = spec.caching;
      fc.cs_capacity = cfg_.cs_capacity;
      fc.pit_capacity = cfg_.pit_capacity;
      fc.pit_full_policy = cfg_.pit_full_policy;
      fc.pit_lifetime = cfg_.pit_lifetime_s;
      fc.default_cache_hint = cfg_.cache_hint_s;
      if (auto it = topo_.prefixes.find(spec.id); it != topo_.prefixes.end()) {
        fc.rbn = it->second;  // gateway
      }
      forwarders_[i] = std::make_unique<Forwarder>(fc);
    } else {
      ConsumerState& c = consumers_[i];
      auto it = topo_.prefixes.find(spec.id);
      if (it == topo_.prefixes.end()) throw ConfigError("consumer has no RBN prefix");
      c.rbn = it->second;
      c.issue_with_sn = spec.mode == ForwarderMode::Stateless;
      c.traffic_rng = Rng(derive_seed(cfg_.seed, "traffic", i));
      c.attack_rng = Rng(derive_seed(cfg_.seed, "attack", i));
    }
    metrics_.nodes.emplace(spec.id, NodeMetrics{});
  }
  if (producer_count != 1) throw ConfigError("traffic model needs exactly one producer");

  bool any_rbn_mode = false;
  for (const NodeSpec& spec : nodes_) {
    if (spec.role == NodeRole::Router &&
        (spec.mode == ForwarderMode::Stateless || spec.mode == ForwarderMode::Hybrid)) {
      any_rbn_mode = true;
    }
  }
  routes_ = build_routes(topo_, any_rbn_mode);
  for (std::size_t i = 0; i < n; ++i) {
    if (forwarders_[i]) forwarders_[i]->fib() = std::move(routes_.fibs[i]);
  }

  if (cfg_.traffic.num_classes == 0) throw ConfigError("need at least one traffic class");
  std::vector<double> rates = zipf_rates(cfg_.traffic.num_classes, 1.0);
  double total = 0;
  class_cumulative_.clear();
  for (double r : rates) {
    total += r;
    class_cumulative_.push_back(total);
  }
  for (double& c : class_cumulative_) c /= total;
}

void Simulator::seed_traffic() {
  if (cfg_.traffic.rate_per_consumer <= 0) throw ConfigError("traffic rate must be positive");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].role != NodeRole::Consumer) continue;
    Event ev;
    ev.kind = Event::Kind::GenerateInterest;
    ev.node = i;
    ev.time = consumers_[i].traffic_rng.exponential(cfg_.traffic.rate_per_consumer);
    schedule(std::move(ev));
  }
  if (cfg_.attack) {
    if (cfg_.attack->rate <= 0) throw ConfigError("attack rate must be positive");
    if (cfg_.attack->stop_s < cfg_.attack->start_s) throw ConfigError("attack stops before it starts");
    for (const std::string& id : cfg_.attack->attackers) {
      std::size_t i = topo_.index_of(id);
      if (nodes_[i].role != NodeRole::Consumer) throw ConfigError("attacker must be a consumer");
      Event ev;
      ev.kind = Event::Kind::GenerateInterest;
      ev.node = i;
      ev.attack_gen = true;
      ev.time = cfg_.attack->start_s + consumers_[i].attack_rng.exponential(cfg_.attack->rate);
      schedule(std::move(ev));
    }
  }
}

void Simulator::schedule(Event ev) {
  if (ev.time > cfg_.duration_s) return;  // whatever is pending at the horizon stays in flight
  ev.seq = next_event_seq_++;
  queue_.push(std::move(ev));
}

std::uint64_t Simulator::new_interest(bool attack, double now) {
  fates_.push_back({InterestFate::InFlight, attack, now});
  return fates_.size() - 1;
}

void Simulator::settle(std::uint64_t id, InterestFate fate) {
  FateRecord& rec = fates_.at(id);
  if (rec.fate == InterestFate::InFlight) {
    rec.fate = fate;
    return;
  }
  // One loss can be observed twice (eviction upstream plus a producer or
  // expiry drop downstream); any other repeated transition is a
  // bookkeeping fault and poisons the conservation check.
  if (!(fate == InterestFate::Dropped && rec.fate == InterestFate::Dropped)) {
    fate_conflict_ = true;
  }
}

void Simulator::note_pit_created(std::size_t node, const Name& name, std::uint64_t id) {
  pit_pending_[node][name].push_back(id);
}

void Simulator::drop_pending(std::size_t node, const Name& name) {
  auto it = pit_pending_[node].find(name);
  if (it == pit_pending_[node].end()) return;
  for (std::uint64_t id : it->second) settle(id, InterestFate::Dropped);
  pit_pending_[node].erase(it);
}

void Simulator::clear_pending(std::size_t node, const Name& name) {
  pit_pending_[node].erase(name);
}

NodeMetrics& Simulator::metrics_for(std::size_t node) {
  return metrics_.nodes.at(nodes_[node].id);
}

void Simulator::issue_interest(std::size_t consumer, double now, bool attack) {
  ConsumerState& state = consumers_[consumer];
  Name name;
  if (attack) {
    // Valid producer prefix, one random final component: routable but
    // shallower than any real object, so it can never be satisfied.
    char buf[24];
    std::snprintf(buf, sizeof(buf), "a%016llx",
                  static_cast<unsigned long long>(state.attack_rng.next_u64()));
    name = producer_prefix_.appended(buf);
  } else {
    double u = state.traffic_rng.next_double();
    std::size_t klass = 0;
    while (klass + 1 < class_cumulative_.size() && u >= class_cumulative_[klass]) ++klass;
    name = producer_prefix_.appended("k" + std::to_string(klass + 1));
    if (cfg_.traffic.unique_suffix) {
      name = name.appended("u" + std::to_string(suffix_counter_++));
    } else {
      std::size_t obj = cfg_.traffic.catalog_per_class <= 1
                            ? 0
                            : state.traffic_rng.next_below(cfg_.traffic.catalog_per_class);
      name = name.appended("o" + std::to_string(obj));
    }
  }

  std::uint64_t id = new_interest(attack, now);
  if (cfg_.trace_paths) trace_interest_[id].push_back(consumer);
  Message interest = Message::interest(
      name, state.issue_with_sn ? std::optional<Name>(state.rbn) : std::nullopt);
  state.outstanding[name].push_back({id, now, 0});

  PacketEnvelope env;
  env.msg = std::move(interest);
  env.interest_id = id;
  env.is_attack = attack;
  env.issued_at = now;
  transmit(consumer, 0, std::move(env), now);
}

void Simulator::handle_generate(const Event& ev) {
  if (ev.attack_gen) {
    if (now_ <= cfg_.attack->stop_s) {
      issue_interest(ev.node, now_, /*attack=*/true);
      Event next;
      next.kind = Event::Kind::GenerateInterest;
      next.node = ev.node;
      next.attack_gen = true;
      next.time = now_ + consumers_[ev.node].attack_rng.exponential(cfg_.attack->rate);
      if (next.time <= cfg_.attack->stop_s) schedule(std::move(next));
    }
    return;
  }
  issue_interest(ev.node, now_, /*attack=*/false);
  Event next;
  next.kind = Event::Kind::GenerateInterest;
  next.node = ev.node;
  next.time = now_ + consumers_[ev.node].traffic_rng.exponential(cfg_.traffic.rate_per_consumer);
  schedule(std::move(next));
}

void Simulator::transmit(std::size_t node, InterfaceId iface, PacketEnvelope env, double depart) {
  const auto& ifaces = adjacency_[node];
  if (iface >= ifaces.size()) {
    throw ConfigError("send to nonexistent interface " + std::to_string(iface) + " on " +
                      nodes_[node].id);
  }
  const Topology::Iface& out = ifaces[iface];
  const LinkSpec& link = topo_.links[out.link];

  double propagation = link.length_m / (link.alpha * kSpeedOfLight);
  double tx = static_cast<double>(encode(env.msg).size()) * 8.0 / link.bandwidth_bps;

  Event ev;
  ev.kind = Event::Kind::PacketArrival;
  ev.node = out.peer;
  ev.pkt = std::move(env);
  ev.time = depart + propagation + tx;
  // The receiving side's interface toward us.
  for (InterfaceId i = 0; i < adjacency_[out.peer].size(); ++i) {
    if (adjacency_[out.peer][i].link == out.link) {
      ev.iface = i;
      break;
    }
  }
  schedule(std::move(ev));
}

void Simulator::dispatch_sends(std::size_t node, const ForwardAction& action, const Event& ev,
                               double now) {
  for (const Send& send : action.sends) {
    PacketEnvelope env;
    env.msg = send.msg;
    env.interest_id = ev.pkt.interest_id;
    env.is_attack = ev.pkt.is_attack;
    env.issued_at = ev.pkt.issued_at;
    if (send.msg.type == MessageType::ContentObject) {
      env.cache_hint = ev.pkt.cache_hint ? ev.pkt.cache_hint : std::optional<double>(cfg_.cache_hint_s);
      if (cfg_.trace_paths) {
        if (ev.pkt.msg.type == MessageType::ContentObject) {
          env.trace = ev.pkt.trace;  // each copy continues its own branch
          env.trace.push_back(node);
        } else {
          env.trace = {node};  // born here (cache hit)
        }
      }
    }
    transmit(node, send.out_iface, std::move(env), now);
  }
}

void Simulator::router_packet(const Event& ev) {
  std::size_t node = ev.node;
  Forwarder& fwd = *forwarders_[node];
  NodeMetrics& nm = metrics_for(node);
  const Message& msg = ev.pkt.msg;

  if (cfg_.trace_paths && msg.type == MessageType::Interest) {
    trace_interest_[ev.pkt.interest_id].push_back(node);
  }

  OpCounters before = fwd.counters();
  ForwardAction action;
  switch (msg.type) {
    case MessageType::Interest: {
      ++nm.interests_rx;
      action = fwd.process_interest(msg, ev.iface, now_);
      break;
    }
    case MessageType::ContentObject: {
      ++nm.contents_rx;
      action = fwd.process_content(msg, ev.iface, now_, ev.pkt.cache_hint);
      break;
    }
    case MessageType::Nack: {
      ++nm.nacks_rx;
      action = fwd.process_nack(msg, ev.iface, now_);
      break;
    }
  }

  double proc = cfg_.costs.elapsed(before, fwd.counters());
  std::uint64_t table_ops = fwd.counters().total() - before.total();
  if (msg.type == MessageType::Interest) {
    nm.interest_ops += table_ops;
  } else if (msg.type == MessageType::ContentObject) {
    nm.content_ops += table_ops;
  } else {
    nm.nack_ops += table_ops;
  }

  // Interest-side bookkeeping.
  if (msg.type == MessageType::Interest) {
    switch (action.note) {
      case ProcessNote::ForwardedUpstream:
        if (fwd.has_pit()) {
          note_pit_created(node, msg.name, ev.pkt.interest_id);
          Event sweep;
          sweep.kind = Event::Kind::PitSweep;
          sweep.node = node;
          sweep.time = now_ + cfg_.pit_lifetime_s + kExpireSlack;
          schedule(std::move(sweep));
        }
        break;
      case ProcessNote::Collapsed:
        ++nm.collapses;
        ++metrics_.collapsed_interests;
        note_pit_created(node, msg.name, ev.pkt.interest_id);
        break;
      case ProcessNote::CsHit:
        ++nm.cs_hits;
        ++metrics_.cs_hits;
        break;
      case ProcessNote::DroppedNoRoute:
      case ProcessNote::DroppedPitFull:
        ++nm.drops;
        settle(ev.pkt.interest_id, InterestFate::Dropped);
        break;
      default:
        break;
    }
  } else if (msg.type == MessageType::ContentObject) {
    if (action.note == ProcessNote::ForwardedDownstream) {
      clear_pending(node, msg.name);  // pending ids ride on with the copies
    } else if (is_drop(action.note)) {
      // The lost copy may have been one of several; the interests behind it
      // resolve through PIT expiry or stay in flight at the horizon.
      ++nm.drops;
    }
  } else {  // Nack
    if (action.note == ProcessNote::ForwardedNack) {
      clear_pending(node, msg.name);
    } else if (is_drop(action.note)) {
      ++nm.drops;
    }
  }

  if (action.evicted) {
    drop_pending(node, action.evicted->name);
  }

  dispatch_sends(node, action, ev, now_ + proc);
}

void Simulator::consumer_packet(const Event& ev) {
  std::size_t node = ev.node;
  ConsumerState& state = consumers_[node];
  NodeMetrics& nm = metrics_for(node);
  const Message& msg = ev.pkt.msg;

  if (msg.type == MessageType::ContentObject) {
    ++nm.contents_rx;
    auto it = state.outstanding.find(msg.name);
    if (cfg_.trace_paths && it != state.outstanding.end()) {
      std::vector<std::size_t> back_path = ev.pkt.trace;
      back_path.push_back(node);
      for (const Outstanding& o : it->second) {
        ++metrics_.traced_deliveries;
        // The content must retrace this interest's own path in reverse; a
        // collapsed interest's path is the tail of the delivery branch.
        const auto& fwd_path = trace_interest_[o.id];
        bool mirrored = fwd_path.size() <= back_path.size() &&
                        std::equal(fwd_path.begin(), fwd_path.end(), back_path.rbegin());
        if (o.id == ev.pkt.interest_id) mirrored = mirrored && fwd_path.size() == back_path.size();
        if (!mirrored) ++metrics_.reverse_path_violations;
      }
    }
    if (it == state.outstanding.end()) return;  // duplicate copy, already satisfied
    for (const Outstanding& o : it->second) {
      settle(o.id, InterestFate::Delivered);
      RttSample sample;
      sample.consumer = nodes_[node].id;
      sample.hops = routes_.hops_to_producer[node];
      sample.issued_at = o.issued_at;
      sample.rtt_s = now_ - o.issued_at;
      sample.recovered = o.retries > 0;
      if (!fates_.at(o.id).is_attack) metrics_.rtt_samples.push_back(sample);
      if (sample.recovered) ++metrics_.recovered_deliveries;
    }
    state.outstanding.erase(it);
    return;
  }

  if (msg.type == MessageType::Nack) {
    ++nm.nacks_rx;
    auto it = state.outstanding.find(msg.name);
    if (it == state.outstanding.end() || it->second.empty()) return;
    Outstanding& oldest = it->second.front();
    // Attack interests are never re-issued; legitimate ones recover per the
    // stateless rules even when the issuing node doubles as an attacker.
    bool can_retry =
        !fates_.at(oldest.id).is_attack && oldest.retries < cfg_.consumer_retry_cap;
    if (can_retry) {
      // Re-issue per stateless rules: same name, our RBN attached.
      ++oldest.retries;
      PacketEnvelope env;
      env.msg = Message::interest(msg.name, state.rbn);
      env.interest_id = oldest.id;
      env.is_attack = ev.pkt.is_attack;
      env.issued_at = oldest.issued_at;
      transmit(node, 0, std::move(env), now_);
    } else {
      settle(oldest.id, InterestFate::NackedUnrecovered);
      it->second.erase(it->second.begin());
      if (it->second.empty()) state.outstanding.erase(it);
    }
    return;
  }

  ++nm.drops;  // interests do not terminate at consumers
}

void Simulator::producer_packet(const Event& ev) {
  std::size_t node = ev.node;
  NodeMetrics& nm = metrics_for(node);
  const Message& msg = ev.pkt.msg;
  if (msg.type != MessageType::Interest) {
    ++nm.drops;
    return;
  }
  ++nm.interests_rx;
  if (cfg_.trace_paths) trace_interest_[ev.pkt.interest_id].push_back(node);
  bool servable = producer_prefix_.is_prefix_of(msg.name) &&
                  msg.name.size() >= producer_prefix_len_ + 2;
  if (!servable) {
    // Structurally valid but nonexistent content (e.g. flood names).
    ++nm.drops;
    settle(ev.pkt.interest_id, InterestFate::Dropped);
    return;
  }
  Message reply = make_content(msg, std::string(cfg_.payload_bytes, 'd'));
  PacketEnvelope env;
  env.msg = std::move(reply);
  env.interest_id = ev.pkt.interest_id;
  env.is_attack = ev.pkt.is_attack;
  env.issued_at = ev.pkt.issued_at;
  env.cache_hint = cfg_.cache_hint_s;
  if (cfg_.trace_paths) env.trace = {node};
  transmit(node, ev.iface, std::move(env), now_ + cfg_.producer_service_s);
}

void Simulator::handle_packet(const Event& ev) {
  switch (nodes_[ev.node].role) {
    case NodeRole::Router:
      router_packet(ev);
      break;
    case NodeRole::Consumer:
      consumer_packet(ev);
      break;
    case NodeRole::Producer:
      producer_packet(ev);
      break;
  }
}

void Simulator::handle_pit_sweep(const Event& ev) {
  Forwarder& fwd = *forwarders_[ev.node];
  auto expired = fwd.expire_pit(now_);
  NodeMetrics& nm = metrics_for(ev.node);
  for (const PitEntry& entry : expired) {
    ++nm.pit_expired;
    drop_pending(ev.node, entry.name);
  }
}

void Simulator::finalize(RunMetrics& out) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (forwarders_[i]) metrics_.nodes.at(nodes_[i].id).ops = forwarders_[i]->counters();
  }

  double attack_start = cfg_.attack ? cfg_.attack->start_s : 0;
  double attack_stop = cfg_.attack ? cfg_.attack->stop_s : 0;

  for (const FateRecord& rec : fates_) {
    auto& issued = rec.is_attack ? out.issued_attack : out.issued;
    auto& delivered = rec.is_attack ? out.delivered_attack : out.delivered;
    auto& dropped = rec.is_attack ? out.dropped_attack : out.dropped;
    auto& nacked = rec.is_attack ? out.nacked_unrecovered_attack : out.nacked_unrecovered;
    auto& inflight = rec.is_attack ? out.in_flight_attack : out.in_flight;
    ++issued;
    switch (rec.fate) {
      case InterestFate::InFlight: ++inflight; break;
      case InterestFate::Delivered: ++delivered; break;
      case InterestFate::Dropped: ++dropped; break;
      case InterestFate::NackedUnrecovered: ++nacked; break;
    }
    if (cfg_.attack && !rec.is_attack) {
      bool during = rec.issued_at >= attack_start && rec.issued_at < attack_stop;
      bool before = rec.issued_at < attack_start;
      auto& ib = before ? out.issued_before_attack
                        : during ? out.issued_during_attack : out.issued_after_attack;
      ++ib;
      if (rec.fate == InterestFate::Delivered) {
        ++(before ? out.delivered_before_attack
                  : during ? out.delivered_during_attack : out.delivered_after_attack);
      } else if (rec.fate == InterestFate::Dropped ||
                 rec.fate == InterestFate::NackedUnrecovered) {
        ++(before ? out.dropped_before_attack
                  : during ? out.dropped_during_attack : out.dropped_after_attack);
      }
    }
  }
  if (out.issued_during_attack > 0) {
    out.legit_drop_rate_during_attack = static_cast<double>(out.dropped_during_attack) /
                                        static_cast<double>(out.issued_during_attack);
  }

  double sum = 0, sum_base = 0, sum_rec = 0;
  std::uint64_t n = 0, n_base = 0, n_rec = 0;
  for (const RttSample& s : metrics_.rtt_samples) {
    sum += s.rtt_s;
    ++n;
    if (s.recovered) {
      sum_rec += s.rtt_s;
      ++n_rec;
    } else {
      sum_base += s.rtt_s;
      ++n_base;
    }
  }
  if (n) out.mean_rtt_s = sum / static_cast<double>(n);
  if (n_base) out.mean_rtt_baseline_s = sum_base / static_cast<double>(n_base);
  if (n_rec) out.mean_rtt_recovered_s = sum_rec / static_cast<double>(n_rec);

  out.nodes = std::move(metrics_.nodes);
  out.collapsed_interests = metrics_.collapsed_interests;
  out.cs_hits = metrics_.cs_hits;
  out.recovered_deliveries = metrics_.recovered_deliveries;
  out.traced_deliveries = metrics_.traced_deliveries;
  out.reverse_path_violations = metrics_.reverse_path_violations;
  out.rtt_samples = std::move(metrics_.rtt_samples);

  std::uint64_t legit_sum = out.delivered + out.dropped + out.nacked_unrecovered + out.in_flight;
  std::uint64_t attack_sum = out.delivered_attack + out.dropped_attack +
                             out.nacked_unrecovered_attack + out.in_flight_attack;
  out.conservation_ok =
      !fate_conflict_ && legit_sum == out.issued && attack_sum == out.issued_attack;
}

RunMetrics Simulator::run() {
  if (cfg_.duration_s <= 0) throw ConfigError("duration must be positive");
  apply_overrides();
  build_nodes();
  seed_traffic();

  while (!queue_.empty()) {
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.time;
    switch (ev.kind) {
      case Event::Kind::PacketArrival:
        handle_packet(ev);
        break;
      case Event::Kind::GenerateInterest:
        handle_generate(ev);
        break;
      case Event::Kind::PitSweep:
        handle_pit_sweep(ev);
        break;
    }
  }

  RunMetrics out;
  finalize(out);
  return out;
}

}  // namespace

RunMetrics run_simulation(const Topology& topo, const SimConfig& cfg) {
  Simulator sim(topo, cfg);
  return sim.run();
}

}  // namespace ccnlab
