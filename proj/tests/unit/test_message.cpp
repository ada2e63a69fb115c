#include "ccnlab/message.hpp"

#include <vector>

#include "ccnlab/rng.hpp"
#include "doctest.h"

using namespace ccnlab;

namespace {

// Golden bytes for Interest{name=[a]}: header (magic, type 1, flags 0,
// total 17) then one Name TLV holding one component TLV.
const std::vector<std::uint8_t> kGoldenInterest = {
    0xCC, 0x01, 0x01, 0x00, 0x00, 0x00, 0x00, 0x11,
    0x00, 0x00, 0x00, 0x05,
    0x00, 0x02, 0x00, 0x01, 'a',
};

Message random_message(Rng& rng) {
  Message m;
  switch (rng.next_below(3)) {
    case 0: m.type = MessageType::Interest; break;
    case 1: m.type = MessageType::ContentObject; break;
    default: m.type = MessageType::Nack; break;
  }
  auto random_name = [&rng]() {
    std::vector<std::string> comps;
    std::size_t count = rng.next_below(5);
    for (std::size_t i = 0; i < count; ++i) {
      comps.push_back("c" + std::to_string(rng.next_below(16)));
    }
    return Name(comps);
  };
  auto random_bytes = [&rng]() {
    std::string s;
    std::size_t len = rng.next_below(40);
    for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(rng.next_below(256)));
    return s;
  };
  m.name = random_name();
  if (rng.bernoulli(0.5)) m.supporting_name = random_name();
  if (rng.bernoulli(0.5)) m.payload = random_bytes();
  if (rng.bernoulli(0.3)) m.validation_alg = random_bytes();
  if (rng.bernoulli(0.3)) m.validation_payload = random_bytes();
  if (m.type == MessageType::Nack) {
    m.nack_reason = rng.bernoulli(0.5) ? NackReason::NoSupportingName : NackReason::PitFull;
  }
  return m;
}

}  // namespace

TEST_CASE("encode matches the golden interest fixture") {
  Message m = Message::interest(Name({"a"}));
  CHECK(encode(m) == kGoldenInterest);
  CHECK(decode(kGoldenInterest) == m);
}

TEST_CASE("supporting name sets flag bit0 and its TLV") {
  Message interest = Message::interest(parse_lci("lci:/bbc/news/today"),
                                       parse_lci("lci:/edu/uci/ics/bob"));
  Message content = make_content(interest, "breaking");
  auto wire = encode(content);
  CHECK(wire[2] == 0x02);        // ContentObject
  CHECK((wire[3] & 0x01) == 1);  // SN present
  Message back = decode(wire);
  CHECK(back == content);
  CHECK(back.name == interest.name);
  CHECK(back.supporting_name == interest.supporting_name);
}

TEST_CASE("nack round trip carries the reason") {
  Message interest = Message::interest(Name({"x"}));
  Message nack = Message::nack(interest, NackReason::PitFull);
  Message back = decode(encode(nack));
  CHECK(back.nack_reason == NackReason::PitFull);
  CHECK(back.name == interest.name);
}

TEST_CASE("decode rejects malformed wire") {
  auto good = kGoldenInterest;

  SUBCASE("truncated header") {
    std::vector<std::uint8_t> cut(good.begin(), good.begin() + 5);
    CHECK_THROWS_AS(decode(cut), MalformedMessage);
  }
  SUBCASE("bad magic") {
    auto bad = good;
    bad[0] = 0xAB;
    CHECK_THROWS_AS(decode(bad), MalformedMessage);
  }
  SUBCASE("reserved flag bits") {
    auto bad = good;
    bad[3] = 0x80;
    CHECK_THROWS_AS(decode(bad), MalformedMessage);
  }
  SUBCASE("flag claims SN that is absent") {
    auto bad = good;
    bad[3] = 0x01;
    CHECK_THROWS_AS(decode(bad), MalformedMessage);
  }
  SUBCASE("trailing bytes") {
    auto bad = good;
    bad.push_back(0x00);
    CHECK_THROWS_AS(decode(bad), MalformedMessage);
  }
  SUBCASE("total_length disagreement") {
    auto bad = good;
    bad[7] = 0x20;
    CHECK_THROWS_AS(decode(bad), MalformedMessage);
  }
  SUBCASE("unknown TLV type") {
    Message m = Message::interest(Name({"a"}));
    auto wire = encode(m);
    wire[8] = 0x7F;  // Name TLV type -> unknown
    CHECK_THROWS_AS(decode(wire), MalformedMessage);
  }
  SUBCASE("duplicate / out-of-order TLVs") {
    // Append a second Name TLV (same type: not strictly increasing).
    auto wire = encode(Message::interest(Name({"a"})));
    std::vector<std::uint8_t> dup = {0x00, 0x00, 0x00, 0x00};
    wire.insert(wire.end(), dup.begin(), dup.end());
    std::uint32_t total = static_cast<std::uint32_t>(wire.size());
    wire[4] = total >> 24;
    wire[5] = (total >> 16) & 0xFF;
    wire[6] = (total >> 8) & 0xFF;
    wire[7] = total & 0xFF;
    CHECK_THROWS_AS(decode(wire), MalformedMessage);
  }
  SUBCASE("nack without reason") {
    auto wire = encode(Message::interest(Name({"a"})));
    wire[2] = 0x03;  // claim Nack
    CHECK_THROWS_AS(decode(wire), MalformedMessage);
  }
}

TEST_CASE("encode rejects oversized TLV values") {
  Message m = Message::interest(Name({"a"}));
  m.payload = std::string(65536, 'p');
  CHECK_THROWS_AS(encode(m), MessageTooLarge);
}

TEST_CASE("ill-formed messages cannot be encoded") {
  Message m = Message::interest(Name({"a"}));
  m.nack_reason = NackReason::PitFull;  // reason on a non-Nack
  CHECK_THROWS_AS(encode(m), MalformedMessage);
}

TEST_CASE("arbitrary-byte components survive the wire") {
  Rng rng(881);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> comps;
    std::size_t count = 1 + rng.next_below(4);
    for (std::size_t c = 0; c < count; ++c) {
      std::string comp;
      std::size_t len = 1 + rng.next_below(12);
      for (std::size_t b = 0; b < len; ++b) {
        char byte = static_cast<char>(rng.next_below(256));
        if (byte == '/') byte = '_';
        comp.push_back(byte);
      }
      comps.push_back(std::move(comp));
    }
    Message m = Message::interest(Name(comps));
    if (rng.bernoulli(0.5)) m.payload = std::string("\x00\xff\n,", 4);
    CHECK(decode(encode(m)) == m);
  }
}

TEST_CASE("mutated wire either decodes or throws MalformedMessage") {
  Rng rng(4242);
  Message base = Message::interest(parse_lci("lci:/bbc/news/today"),
                                   parse_lci("lci:/edu/uci/ics/bob"));
  base.payload = "some payload";
  base.validation_alg = "alg";
  base.validation_payload = "sig";
  auto wire = encode(base);
  for (int i = 0; i < 5000; ++i) {
    auto mutated = wire;
    std::size_t flips = 1 + rng.next_below(3);
    for (std::size_t f = 0; f < flips; ++f) {
      mutated[rng.next_below(mutated.size())] = static_cast<std::uint8_t>(rng.next_below(256));
    }
    try {
      Message m = decode(mutated);
      // Accepted mutations must re-encode to the same bytes.
      CHECK(encode(m) == mutated);
    } catch (const MalformedMessage&) {
      // rejected, fine
    } catch (const MessageTooLarge&) {
      // cannot happen on decode, but never anything else
      CHECK(false);
    }
  }
}

TEST_CASE("random round trip and injectivity") {
  Rng rng(2024);
  std::vector<Message> seen;
  std::vector<std::vector<std::uint8_t>> wires;
  for (int i = 0; i < 1000; ++i) {
    Message m = random_message(rng);
    auto wire = encode(m);
    CHECK(decode(wire) == m);
    seen.push_back(m);
    wires.push_back(std::move(wire));
  }
  for (std::size_t i = 0; i < seen.size(); i += 37) {
    for (std::size_t j = i + 1; j < seen.size(); j += 41) {
      if (!(seen[i] == seen[j])) CHECK(wires[i] != wires[j]);
    }
  }
}

TEST_CASE("validation_input ignores the SN and nothing else") {
  Message interest = Message::interest(parse_lci("lci:/bbc/news/today"),
                                       parse_lci("lci:/edu/uci/ics/bob"));
  Message c1 = make_content(interest, "payload");
  Message c2 = c1;
  c2.supporting_name = parse_lci("lci:/edu/uci/ics/alice");
  CHECK(validation_input(c1) == validation_input(c2));

  Message c3 = c1;
  c3.supporting_name.reset();
  CHECK(validation_input(c1) == validation_input(c3));

  Message c4 = c1;
  c4.payload = "other payload";
  CHECK(validation_input(c1) != validation_input(c4));

  // Only the SN and the signature bytes themselves are outside the
  // canonical form; name, type, and algorithm changes all show.
  Message c5 = c1;
  c5.name = parse_lci("lci:/bbc/news/yesterday");
  CHECK(validation_input(c1) != validation_input(c5));
  Message c6 = c1;
  c6.type = MessageType::Interest;
  CHECK(validation_input(c1) != validation_input(c6));
  Message c7 = c1;
  c7.validation_alg = "sha256";
  CHECK(validation_input(c1) != validation_input(c7));

  // Without an SN (and no validation payload) the canonical form is just
  // the encoding.
  CHECK(validation_input(c3) == encode(c3));

  Message nack = Message::nack(interest, NackReason::PitFull);
  CHECK_THROWS_AS(validation_input(nack), MalformedMessage);
}

TEST_CASE("validation_input excludes the validation payload") {
  Message m = Message::interest(Name({"a"}));
  m.validation_alg = "alg";
  m.validation_payload = "sig";
  Message m2 = m;
  m2.validation_payload = "other sig";
  CHECK(validation_input(m) == validation_input(m2));
}

TEST_CASE("random SN mutation leaves validation_input fixed") {
  Rng rng(515);
  int checked = 0;
  while (checked < 300) {
    Message m = random_message(rng);
    if (m.type == MessageType::Nack) continue;
    Message mutated = m;
    mutated.supporting_name = Name({"swapped", std::to_string(checked)});
    CHECK(validation_input(m) == validation_input(mutated));
    ++checked;
  }
}
