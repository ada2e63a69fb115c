#include "ccnlab/forwarder.hpp"

#include "doctest.h"

using namespace ccnlab;

namespace {

Name nm(const std::string& text) { return parse_lci(text); }

ForwarderConfig base_config(ForwarderMode mode) {
  ForwarderConfig cfg;
  cfg.mode = mode;
  cfg.caching_enabled = false;
  return cfg;
}

}  // namespace

TEST_CASE("make_interest / make_content echo both names") {
  Message interest = Message::interest(nm("lci:/bbc/news/today"), nm("lci:/edu/uci/ics/bob"));
  Message content = make_content(interest, "xyz");
  CHECK(content.name == interest.name);
  CHECK(content.supporting_name == interest.supporting_name);

  Message legacy = Message::interest(nm("lci:/bbc/news/today"));
  CHECK(!legacy.supporting_name.has_value());
  Message reply = make_content(legacy, "xyz");
  CHECK(!reply.supporting_name.has_value());
}

TEST_CASE("stateless interest: CS miss costs one CS and one FIB lookup") {
  Forwarder fwd(base_config(ForwarderMode::Stateless));
  fwd.fib().insert(nm("lci:/bbc"), 2);

  Message interest = Message::interest(nm("lci:/bbc/news/today"), nm("lci:/edu/uci/ics/bob"));
  auto action = fwd.process_interest(interest, 0, 0.0);

  CHECK(action.note == ProcessNote::ForwardedUpstream);
  REQUIRE(action.sends.size() == 1);
  CHECK(action.sends[0].out_iface == 2);
  CHECK(action.sends[0].msg == interest);

  const OpCounters& c = fwd.counters();
  CHECK(c.cs_lookups == 1);
  CHECK(c.fib_lookups == 1);
  CHECK(c.pit_total() == 0);
  CHECK(c.cs_inserts == 0);
}

TEST_CASE("stateless interest without SN draws a NACK") {
  Forwarder fwd(base_config(ForwarderMode::Stateless));
  fwd.fib().insert(nm("lci:/bbc"), 2);
  Message interest = Message::interest(nm("lci:/bbc/news/today"));
  auto action = fwd.process_interest(interest, 3, 0.0);
  CHECK(action.note == ProcessNote::NackedNoSupportingName);
  REQUIRE(action.sends.size() == 1);
  CHECK(action.sends[0].out_iface == 3);
  CHECK(action.sends[0].msg.type == MessageType::Nack);
  CHECK(action.sends[0].msg.nack_reason == NackReason::NoSupportingName);
  CHECK(fwd.counters().nacks_sent == 1);
  CHECK(fwd.counters().fib_lookups == 0);  // never consulted
}

TEST_CASE("stateless FIB miss is a counted drop") {
  Forwarder fwd(base_config(ForwarderMode::Stateless));
  Message interest = Message::interest(nm("lci:/nowhere"), nm("lci:/edu/x"));
  auto action = fwd.process_interest(interest, 0, 0.0);
  CHECK(action.note == ProcessNote::DroppedNoRoute);
  CHECK(action.sends.empty());
}

TEST_CASE("stateful duplicate collapses and is not forwarded") {
  Forwarder fwd(base_config(ForwarderMode::Stateful));
  fwd.fib().insert(nm("lci:/bbc"), 1);
  Message interest = Message::interest(nm("lci:/bbc/news/today"));

  auto first = fwd.process_interest(interest, 0, 0.0);
  CHECK(first.note == ProcessNote::ForwardedUpstream);
  auto second = fwd.process_interest(interest, 2, 0.1);
  CHECK(second.note == ProcessNote::Collapsed);
  CHECK(second.sends.empty());

  // Per-interest (CS miss) cost: 1 cs + 1 pit + 1 fib for the creator,
  // 1 cs + 1 pit for the collapsed one.
  const OpCounters& c = fwd.counters();
  CHECK(c.cs_lookups == 2);
  CHECK(c.pit_inserts == 2);
  CHECK(c.fib_lookups == 1);
}

TEST_CASE("stateful content fans out to every collapsed interface then drops later copies") {
  Forwarder fwd(base_config(ForwarderMode::Stateful));
  fwd.fib().insert(nm("lci:/bbc"), 5);
  Message interest = Message::interest(nm("lci:/bbc/news/today"));
  fwd.process_interest(interest, 0, 0.0);
  Message dup = interest;
  fwd.process_interest(dup, 1, 0.1);

  Message content = make_content(interest, "payload");
  auto action = fwd.process_content(content, 5, 0.2);
  CHECK(action.note == ProcessNote::ForwardedDownstream);
  CHECK(action.sends.size() == 2);
  CHECK(fwd.counters().pit_lookups == 1);
  CHECK(fwd.counters().pit_deletes == 1);

  // Entry flushed: the same content again is unsolicited.
  auto repeat = fwd.process_content(content, 5, 0.3);
  CHECK(repeat.note == ProcessNote::DroppedUnsolicited);
  CHECK(repeat.sends.empty());
}

TEST_CASE("stateful router ignores the SN on interests") {
  Forwarder fwd(base_config(ForwarderMode::Stateful));
  fwd.fib().insert(nm("lci:/bbc"), 1);
  Message interest = Message::interest(nm("lci:/bbc/news/today"), nm("lci:/edu/uci/ics/bob"));
  auto action = fwd.process_interest(interest, 0, 0.0);
  CHECK(action.note == ProcessNote::ForwardedUpstream);
  CHECK(action.sends[0].msg.supporting_name == interest.supporting_name);  // carried, unused
}

TEST_CASE("stateless content routes by SN, including via an aggregate") {
  Forwarder fwd(base_config(ForwarderMode::Stateless));
  fwd.fib().insert(nm("lci:/edu/uci"), 7);
  Message interest = Message::interest(nm("lci:/bbc/news/today"), nm("lci:/edu/uci/ics/bob"));
  Message content = make_content(interest, "payload");
  auto action = fwd.process_content(content, 1, 0.0);
  CHECK(action.note == ProcessNote::ForwardedDownstream);
  REQUIRE(action.sends.size() == 1);
  CHECK(action.sends[0].out_iface == 7);
  CHECK(fwd.counters().fib_lookups == 1);
  CHECK(fwd.counters().pit_total() == 0);
}

TEST_CASE("stateless content without SN is malformed for the mode") {
  Forwarder fwd(base_config(ForwarderMode::Stateless));
  Message content = make_content(Message::interest(nm("lci:/bbc/x")), "p");
  CHECK_THROWS_AS(fwd.process_content(content, 0, 0.0), MissingSupportingName);
}

TEST_CASE("caching router answers the next interest from its store") {
  ForwarderConfig cfg = base_config(ForwarderMode::Stateless);
  cfg.caching_enabled = true;
  Forwarder fwd(cfg);
  fwd.fib().insert(nm("lci:/edu"), 0);

  Message interest = Message::interest(nm("lci:/bbc/news/today"), nm("lci:/edu/uci/ics/bob"));
  Message content = make_content(interest, "payload");
  fwd.process_content(content, 1, 0.0, 5.0);
  CHECK(fwd.counters().cs_inserts == 1);

  // A stateful-style interest gets the cached bytes back without an SN.
  Message legacy = Message::interest(nm("lci:/bbc/news/today"));
  auto action = fwd.process_interest(legacy, 4, 1.0);
  CHECK(action.note == ProcessNote::CsHit);
  REQUIRE(action.sends.size() == 1);
  CHECK(action.sends[0].out_iface == 4);
  CHECK(action.sends[0].msg.type == MessageType::ContentObject);
  CHECK(!action.sends[0].msg.supporting_name.has_value());
  CHECK(action.sends[0].msg.payload == "payload");

  // And a stateless-style interest gets its own SN echoed.
  Message modern = Message::interest(nm("lci:/bbc/news/today"), nm("lci:/edu/uci/ics/alice"));
  auto action2 = fwd.process_interest(modern, 5, 1.5);
  CHECK(action2.note == ProcessNote::CsHit);
  CHECK(action2.sends[0].msg.supporting_name == modern.supporting_name);

  // Past the hint the entry is gone; the SN-less interest is NACKed on miss.
  auto action3 = fwd.process_interest(legacy, 4, 7.0);
  CHECK(action3.note == ProcessNote::NackedNoSupportingName);
  auto action4 = fwd.process_interest(modern, 5, 7.0);
  CHECK(action4.note == ProcessNote::DroppedNoRoute);  // miss, and no /bbc route here
}

TEST_CASE("hybrid full PIT: NACK for legacy interests, stateless pass for SN interests") {
  ForwarderConfig cfg = base_config(ForwarderMode::Hybrid);
  cfg.pit_capacity = 1;
  Forwarder fwd(cfg);
  fwd.fib().insert(nm("lci:/prod"), 1);

  CHECK(fwd.process_interest(Message::interest(nm("lci:/prod/a")), 0, 0.0).note ==
        ProcessNote::ForwardedUpstream);

  Message legacy = Message::interest(nm("lci:/prod/b"));
  auto nacked = fwd.process_interest(legacy, 0, 0.1);
  CHECK(nacked.note == ProcessNote::NackedPitFull);
  REQUIRE(nacked.sends.size() == 1);
  CHECK(nacked.sends[0].msg.nack_reason == NackReason::PitFull);
  CHECK(fwd.counters().nacks_sent == 1);

  Message routable = Message::interest(nm("lci:/prod/b"), nm("lci:/edu/site1/h1"));
  auto bypassed = fwd.process_interest(routable, 0, 0.2);
  CHECK(bypassed.note == ProcessNote::StatelessBypass);
  REQUIRE(bypassed.sends.size() == 1);
  CHECK(bypassed.sends[0].out_iface == 1);
  CHECK(fwd.pit()->size() == 1);  // no new state

  // The content for the bypassed interest has no PIT entry; the SN routes it.
  fwd.fib().insert(nm("lci:/edu/site1"), 3);
  Message content = make_content(routable, "p");
  auto delivered = fwd.process_content(content, 1, 0.3);
  CHECK(delivered.note == ProcessNote::ForwardedDownstream);
  CHECK(delivered.sends[0].out_iface == 3);
}

TEST_CASE("stateful mode never bypasses a full PIT even with an SN") {
  ForwarderConfig cfg = base_config(ForwarderMode::Stateful);
  cfg.pit_capacity = 1;
  cfg.pit_full_policy = PitFullPolicy::NackNew;
  Forwarder fwd(cfg);
  fwd.fib().insert(nm("lci:/prod"), 1);
  fwd.process_interest(Message::interest(nm("lci:/prod/a")), 0, 0.0);
  Message routable = Message::interest(nm("lci:/prod/b"), nm("lci:/edu/x"));
  auto action = fwd.process_interest(routable, 0, 0.1);
  CHECK(action.note == ProcessNote::NackedPitFull);
}

TEST_CASE("nack forwarding flushes the pending entry downstream") {
  Forwarder fwd(base_config(ForwarderMode::Stateful));
  fwd.fib().insert(nm("lci:/prod"), 2);
  Message interest = Message::interest(nm("lci:/prod/x1"));
  fwd.process_interest(interest, 0, 0.0);
  fwd.process_interest(interest, 1, 0.05);  // collapse from another consumer

  Message nack = Message::nack(interest, NackReason::PitFull);
  auto action = fwd.process_nack(nack, 2, 0.1);
  CHECK(action.note == ProcessNote::ForwardedNack);
  CHECK(action.sends.size() == 2);  // both downstream interfaces learn
  CHECK(fwd.pit()->size() == 0);

  // A fresh stateless re-issue creates new state instead of collapsing.
  Message reissue = Message::interest(nm("lci:/prod/x1"), nm("lci:/edu/site0/h0"));
  auto again = fwd.process_interest(reissue, 0, 0.2);
  CHECK(again.note == ProcessNote::ForwardedUpstream);
}

TEST_CASE("nack with no matching state and no SN is unmatchable") {
  Forwarder fwd(base_config(ForwarderMode::Stateless));
  Message nack = Message::nack(Message::interest(nm("lci:/prod/y")), NackReason::NoSupportingName);
  auto action = fwd.process_nack(nack, 0, 0.0);
  CHECK(action.note == ProcessNote::DroppedUnmatchableNack);
  CHECK(action.sends.empty());
}

TEST_CASE("stateless router routes an SN-bearing nack by FIB") {
  Forwarder fwd(base_config(ForwarderMode::Stateless));
  fwd.fib().insert(nm("lci:/edu/site2"), 6);
  Message interest = Message::interest(nm("lci:/prod/z"), nm("lci:/edu/site2/h4"));
  Message nack = Message::nack(interest, NackReason::PitFull);
  auto action = fwd.process_nack(nack, 0, 0.0);
  CHECK(action.note == ProcessNote::ForwardedNack);
  CHECK(action.sends[0].out_iface == 6);
}

TEST_CASE("hybrid gateway re-issues a NACKed interest with its own RBN") {
  ForwarderConfig cfg = base_config(ForwarderMode::Hybrid);
  cfg.rbn = nm("lci:/gw/as1");
  Forwarder fwd(cfg);
  fwd.fib().insert(nm("lci:/prod"), 1);

  Message legacy = Message::interest(nm("lci:/prod/k1/u7"));
  auto out = fwd.process_interest(legacy, 0, 0.0);
  CHECK(out.note == ProcessNote::ForwardedUpstream);

  // Upstream stateless router answers with NoSupportingName.
  Message nack = Message::nack(legacy, NackReason::NoSupportingName);
  auto recovered = fwd.process_nack(nack, 1, 0.01);
  CHECK(recovered.note == ProcessNote::GatewayReissued);
  REQUIRE(recovered.sends.size() == 1);
  CHECK(recovered.sends[0].out_iface == 1);
  CHECK(recovered.sends[0].msg.type == MessageType::Interest);
  CHECK(recovered.sends[0].msg.supporting_name == cfg.rbn);
  CHECK(fwd.pit()->size() == 1);  // original reverse-path state kept

  // Content addressed to the gateway RBN consumes the original entry.
  Message content = make_content(recovered.sends[0].msg, "data");
  auto down = fwd.process_content(content, 1, 0.02);
  CHECK(down.note == ProcessNote::ForwardedDownstream);
  REQUIRE(down.sends.size() == 1);
  CHECK(down.sends[0].out_iface == 0);
  CHECK(fwd.pit()->size() == 0);
}

TEST_CASE("gateway recall is bounded FIFO") {
  ForwarderConfig cfg = base_config(ForwarderMode::Hybrid);
  cfg.rbn = nm("lci:/gw/as1");
  cfg.recent_interest_capacity = 2;
  Forwarder fwd(cfg);
  fwd.fib().insert(Name(), 1);
  for (int i = 0; i < 3; ++i) {
    fwd.process_interest(Message::interest(nm("lci:/prod/q" + std::to_string(i))), 0, 0.0);
  }
  // Oldest was pushed out; its NACK can only flush state downstream.
  Message nack = Message::nack(Message::interest(nm("lci:/prod/q0")), NackReason::NoSupportingName);
  auto action = fwd.process_nack(nack, 1, 0.1);
  CHECK(action.note == ProcessNote::ForwardedNack);  // via the PIT entry, not recall
}

TEST_CASE("a rejecting content verifier drops before caching and forwarding") {
  ForwarderConfig cfg = base_config(ForwarderMode::Stateless);
  cfg.caching_enabled = true;
  cfg.content_verifier = [](const Message& content) { return content.payload != "poison"; };
  Forwarder fwd(cfg);
  fwd.fib().insert(nm("lci:/edu"), 0);

  Message interest = Message::interest(nm("lci:/bbc/x"), nm("lci:/edu/y"));
  auto bad = fwd.process_content(make_content(interest, "poison"), 1, 0.0);
  CHECK(bad.note == ProcessNote::DroppedFailedVerification);
  CHECK(bad.sends.empty());
  CHECK(fwd.counters().cs_inserts == 0);
  CHECK(fwd.counters().fib_lookups == 0);

  auto good = fwd.process_content(make_content(interest, "fine"), 1, 0.0);
  CHECK(good.note == ProcessNote::ForwardedDownstream);
  CHECK(fwd.counters().cs_inserts == 1);
}

TEST_CASE("a substituted route strategy overrides the single best route") {
  ForwarderConfig cfg = base_config(ForwarderMode::Stateless);
  cfg.route_strategy = [](const Name& name, std::optional<InterfaceId> best) {
    // Pin one namespace to interface 9, veto another, pass the rest through.
    if (nm("lci:/pinned").is_prefix_of(name)) return std::optional<InterfaceId>(9);
    if (nm("lci:/vetoed").is_prefix_of(name)) return std::optional<InterfaceId>();
    return best;
  };
  Forwarder fwd(cfg);
  fwd.fib().insert(nm("lci:/pinned"), 1);
  fwd.fib().insert(nm("lci:/vetoed"), 1);
  fwd.fib().insert(nm("lci:/plain"), 1);

  Name rbn = nm("lci:/edu/z");
  auto pinned = fwd.process_interest(Message::interest(nm("lci:/pinned/a"), rbn), 0, 0.0);
  CHECK(pinned.sends.at(0).out_iface == 9);
  auto vetoed = fwd.process_interest(Message::interest(nm("lci:/vetoed/a"), rbn), 0, 0.0);
  CHECK(vetoed.note == ProcessNote::DroppedNoRoute);
  auto plain = fwd.process_interest(Message::interest(nm("lci:/plain/a"), rbn), 0, 0.0);
  CHECK(plain.sends.at(0).out_iface == 1);
}

TEST_CASE("per-exchange op accounting matches the contract") {
  // Stateless: interest 2 table ops, content 1 (+1 cache insert).
  ForwarderConfig sl = base_config(ForwarderMode::Stateless);
  sl.caching_enabled = true;
  Forwarder stateless(sl);
  stateless.fib().insert(nm("lci:/prod"), 1);
  stateless.fib().insert(nm("lci:/edu"), 0);
  Message interest = Message::interest(nm("lci:/prod/k1/u0"), nm("lci:/edu/site0/h0"));
  stateless.process_interest(interest, 0, 0.0);
  stateless.process_content(make_content(interest, "p"), 1, 0.001);
  CHECK(stateless.counters().cs_lookups == 1);
  CHECK(stateless.counters().fib_lookups == 2);
  CHECK(stateless.counters().cs_inserts == 1);
  CHECK(stateless.counters().pit_total() == 0);
  CHECK(stateless.counters().total() == 4);

  // Stateful: interest 3 table ops, content 2 (+1 cache insert).
  ForwarderConfig sf = base_config(ForwarderMode::Stateful);
  sf.caching_enabled = true;
  Forwarder stateful(sf);
  stateful.fib().insert(nm("lci:/prod"), 1);
  Message legacy = Message::interest(nm("lci:/prod/k1/u0"));
  stateful.process_interest(legacy, 0, 0.0);
  stateful.process_content(make_content(legacy, "p"), 1, 0.001);
  CHECK(stateful.counters().cs_lookups == 1);
  CHECK(stateful.counters().pit_inserts == 1);
  CHECK(stateful.counters().fib_lookups == 1);
  CHECK(stateful.counters().pit_lookups == 1);
  CHECK(stateful.counters().pit_deletes == 1);
  CHECK(stateful.counters().cs_inserts == 1);
  CHECK(stateful.counters().total() == 6);
}
