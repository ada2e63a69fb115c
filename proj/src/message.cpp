#include "ccnlab/message.hpp"

#include <cstring>

namespace ccnlab {

namespace {

constexpr std::uint8_t kMagic0 = 0xCC;
constexpr std::uint8_t kMagic1 = 0x01;

constexpr std::uint16_t kTlvName = 0x0000;
constexpr std::uint16_t kTlvSupportingName = 0x0001;
constexpr std::uint16_t kTlvNameComponent = 0x0002;
constexpr std::uint16_t kTlvPayload = 0x0010;
constexpr std::uint16_t kTlvValidationAlg = 0x0020;
constexpr std::uint16_t kTlvValidationPayload = 0x0021;
constexpr std::uint16_t kTlvNackReason = 0x0030;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void put_tlv(std::vector<std::uint8_t>& out, std::uint16_t type, std::string_view value) {
  if (value.size() > kMaxTlvValue) throw MessageTooLarge("TLV value exceeds 65535 bytes");
  put_u16(out, type);
  put_u16(out, static_cast<std::uint16_t>(value.size()));
  out.insert(out.end(), value.begin(), value.end());
}

std::string name_value(const Name& name) {
  std::string value;
  for (const auto& c : name.components()) {
    if (c.size() > kMaxTlvValue) throw MessageTooLarge("name component exceeds 65535 bytes");
    value.push_back(static_cast<char>(kTlvNameComponent >> 8));
    value.push_back(static_cast<char>(kTlvNameComponent & 0xFF));
    value.push_back(static_cast<char>(c.size() >> 8));
    value.push_back(static_cast<char>(c.size() & 0xFF));
    value += c;
  }
  return value;
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  bool done() const { return pos_ == data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_ + i];
    pos_ += 4;
    return v;
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string v(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return v;
  }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw MalformedMessage("truncated message");
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

Name parse_name_value(const std::string& value) {
  Reader r(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(value.data()), value.size()));
  std::vector<std::string> comps;
  while (!r.done()) {
    std::uint16_t type = r.u16();
    if (type != kTlvNameComponent) throw MalformedMessage("expected NameComponent TLV");
    std::uint16_t len = r.u16();
    comps.push_back(r.bytes(len));
  }
  try {
    return Name(std::move(comps));
  } catch (const MalformedName& e) {
    throw MalformedMessage(e.what());
  }
}

void check_well_formed(const Message& msg) {
  if ((msg.type == MessageType::Nack) != msg.nack_reason.has_value()) {
    throw MalformedMessage("nack_reason must be present exactly on Nack messages");
  }
}

}  // namespace

Message Message::interest(Name name, std::optional<Name> rbn) {
  Message m;
  m.type = MessageType::Interest;
  m.name = std::move(name);
  m.supporting_name = std::move(rbn);
  return m;
}

Message Message::nack(const Message& interest, NackReason reason) {
  Message m;
  m.type = MessageType::Nack;
  m.name = interest.name;
  m.supporting_name = interest.supporting_name;
  m.nack_reason = reason;
  return m;
}

Message make_content(const Message& interest, std::string payload) {
  Message m;
  m.type = MessageType::ContentObject;
  m.name = interest.name;
  m.supporting_name = interest.supporting_name;
  m.payload = std::move(payload);
  return m;
}

std::vector<std::uint8_t> encode(const Message& msg) {
  check_well_formed(msg);
  std::vector<std::uint8_t> out;
  out.push_back(kMagic0);
  out.push_back(kMagic1);
  out.push_back(static_cast<std::uint8_t>(msg.type));
  out.push_back(msg.supporting_name ? 0x01 : 0x00);
  put_u32(out, 0);  // total_length, patched below

  put_tlv(out, kTlvName, name_value(msg.name));
  if (msg.supporting_name) put_tlv(out, kTlvSupportingName, name_value(*msg.supporting_name));
  if (msg.payload) put_tlv(out, kTlvPayload, *msg.payload);
  if (msg.validation_alg) put_tlv(out, kTlvValidationAlg, *msg.validation_alg);
  if (msg.validation_payload) put_tlv(out, kTlvValidationPayload, *msg.validation_payload);
  if (msg.nack_reason) {
    char reason = static_cast<char>(*msg.nack_reason);
    put_tlv(out, kTlvNackReason, std::string_view(&reason, 1));
  }

  std::uint32_t total = static_cast<std::uint32_t>(out.size());
  out[4] = static_cast<std::uint8_t>(total >> 24);
  out[5] = static_cast<std::uint8_t>((total >> 16) & 0xFF);
  out[6] = static_cast<std::uint8_t>((total >> 8) & 0xFF);
  out[7] = static_cast<std::uint8_t>(total & 0xFF);
  return out;
}

Message decode(std::span<const std::uint8_t> wire) {
  Reader r(wire);
  if (r.u8() != kMagic0 || r.u8() != kMagic1) throw MalformedMessage("bad magic");
  std::uint8_t type = r.u8();
  if (type < 1 || type > 3) throw MalformedMessage("unknown message type");
  std::uint8_t flags = r.u8();
  if (flags & ~0x01) throw MalformedMessage("reserved flag bits set");
  std::uint32_t total = r.u32();
  if (total != wire.size()) throw MalformedMessage("total_length disagrees with buffer size");

  Message msg;
  msg.type = static_cast<MessageType>(type);

  // TLVs must appear in strictly increasing type order, each at most once.
  int last_type = -1;
  bool have_name = false;
  while (!r.done()) {
    std::uint16_t tlv_type = r.u16();
    std::uint16_t len = r.u16();
    std::string value = r.bytes(len);
    if (static_cast<int>(tlv_type) <= last_type) {
      throw MalformedMessage("duplicate or out-of-order TLV");
    }
    last_type = tlv_type;
    switch (tlv_type) {
      case kTlvName:
        msg.name = parse_name_value(value);
        have_name = true;
        break;
      case kTlvSupportingName:
        msg.supporting_name = parse_name_value(value);
        break;
      case kTlvPayload:
        msg.payload = std::move(value);
        break;
      case kTlvValidationAlg:
        msg.validation_alg = std::move(value);
        break;
      case kTlvValidationPayload:
        msg.validation_payload = std::move(value);
        break;
      case kTlvNackReason: {
        if (len != 1) throw MalformedMessage("NackReason must be one byte");
        std::uint8_t reason = static_cast<std::uint8_t>(value[0]);
        if (reason != 1 && reason != 2) throw MalformedMessage("unknown NackReason");
        msg.nack_reason = static_cast<NackReason>(reason);
        break;
      }
      default:
        throw MalformedMessage("unknown TLV type");
    }
  }

  if (!have_name) throw MalformedMessage("missing Name TLV");
  if ((flags & 0x01) != (msg.supporting_name.has_value() ? 1 : 0)) {
    throw MalformedMessage("flags bit0 disagrees with SupportingName TLV");
  }
  if ((msg.type == MessageType::Nack) != msg.nack_reason.has_value()) {
    throw MalformedMessage("NackReason must be present exactly on Nack messages");
  }
  return msg;
}

std::vector<std::uint8_t> validation_input(const Message& msg) {
  check_well_formed(msg);
  if (msg.type == MessageType::Nack) {
    throw MalformedMessage("Nacks carry no validation");
  }
  Message canonical = msg;
  canonical.supporting_name.reset();
  canonical.validation_payload.reset();
  return encode(canonical);
}

}  // namespace ccnlab
