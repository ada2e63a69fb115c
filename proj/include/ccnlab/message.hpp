#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccnlab/name.hpp"

namespace ccnlab {

class MalformedMessage : public std::runtime_error {
 public:
  explicit MalformedMessage(const std::string& what) : std::runtime_error(what) {}
};

class MessageTooLarge : public std::runtime_error {
 public:
  explicit MessageTooLarge(const std::string& what) : std::runtime_error(what) {}
};

enum class MessageType : std::uint8_t {
  Interest = 1,
  ContentObject = 2,
  Nack = 3,
};

enum class NackReason : std::uint8_t {
  NoSupportingName = 1,  // a stateless router cannot forward an interest without an SN
  PitFull = 2,           // a stateful router rejected the interest instead of dropping it
};

/// One wire message. The supporting name (SN) is the consumer's routable
/// prefix: interests carry it so content can be forwarded back by FIB lookup
/// instead of per-interest router state, and content echoes it unchanged.
struct Message {
  MessageType type = MessageType::Interest;
  Name name;
  std::optional<Name> supporting_name;
  std::optional<std::string> payload;
  std::optional<std::string> validation_alg;
  std::optional<std::string> validation_payload;
  std::optional<NackReason> nack_reason;  // present iff type == Nack

  bool operator==(const Message&) const = default;

  static Message interest(Name name, std::optional<Name> rbn = std::nullopt);
  static Message nack(const Message& interest, NackReason reason);
};

/// Content echoing the interest's names: reply.name == interest.name and
/// reply.supporting_name == interest.supporting_name, so the responder honors
/// whichever variant (stateful or stateless) the interest used.
Message make_content(const Message& interest, std::string payload);

// -------------------------------------------------------------------------
// Binary layout (network byte order):
//   magic 0xCC 0x01 | msg_type u8 | flags u8 | total_length u32 | TLVs
// total_length covers the whole message including the 8-byte header.
// flags bit0 = SupportingName present; all other bits must be zero.
// TLV = type u16 | length u16 | value, emitted in this fixed order:
//   0x0000 Name, 0x0001 SupportingName, 0x0010 Payload,
//   0x0020 ValidationAlg, 0x0021 ValidationPayload, 0x0030 NackReason.
// Name / SupportingName values are a run of 0x0002 NameComponent TLVs.
// NackReason value is one u8 (1 = NoSupportingName, 2 = PitFull).
// -------------------------------------------------------------------------

inline constexpr std::size_t kMaxTlvValue = 65535;
inline constexpr std::size_t kWireHeaderSize = 8;

/// Deterministic encoding. Throws MessageTooLarge if any TLV value would
/// exceed 65535 bytes, MalformedMessage if the message is ill-formed
/// (nack_reason on a non-Nack, or a Nack without one).
std::vector<std::uint8_t> encode(const Message& msg);

/// Strict decoder: rejects bad magic, truncation, unknown or duplicated or
/// out-of-order TLVs, flag/TLV disagreement, and trailing bytes.
Message decode(std::span<const std::uint8_t> wire);

/// Canonical byte string a signature covers: the message encoded with the
/// SupportingName removed (flags bit0 cleared) and the ValidationPayload TLV
/// excluded. The SN is pure routing data, so signatures can be produced
/// before the consumer's prefix is known. Not defined for Nacks.
std::vector<std::uint8_t> validation_input(const Message& msg);

}  // namespace ccnlab
