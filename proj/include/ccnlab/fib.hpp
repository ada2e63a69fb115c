#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "ccnlab/name.hpp"

namespace ccnlab {

class FibFull : public std::runtime_error {
 public:
  explicit FibFull(const std::string& what) : std::runtime_error(what) {}
};

using InterfaceId = std::uint32_t;

/// Name-prefix forwarding table with longest-prefix-match lookup, built as a
/// component trie. One next hop per prefix; re-inserting a prefix overwrites
/// its interface. Routing strategy beyond "single best route" is a caller
/// concern.
class Fib {
 public:
  Fib() = default;
  explicit Fib(std::size_t capacity) : capacity_(capacity) {}
  Fib(Fib&&) noexcept = default;
  Fib& operator=(Fib&&) noexcept = default;
  Fib(const Fib&) = delete;
  Fib& operator=(const Fib&) = delete;

  /// Throws FibFull when inserting a new prefix into a table at capacity.
  void insert(const Name& prefix, InterfaceId iface);

  /// Next hop of the longest matching prefix, or nullopt when nothing
  /// matches (absence is a value, not an error).
  std::optional<InterfaceId> lookup(const Name& name) const;

  std::size_t size() const { return entry_count_; }

  /// Entries as "<lci-prefix> <iface-id>" lines, in sorted prefix order.
  /// The line format cannot carry prefixes whose components contain
  /// newlines; the wire codec has no such limit.
  std::string dump() const;

  /// Parses dump() output. Throws MalformedName on a bad prefix.
  static Fib load(std::string_view text, std::optional<std::size_t> capacity = std::nullopt);

 private:
  struct Node {
    std::map<std::string, std::unique_ptr<Node>> children;
    std::optional<InterfaceId> iface;
  };

  Node root_;
  std::size_t entry_count_ = 0;
  std::optional<std::size_t> capacity_;
};

}  // namespace ccnlab
