#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccnlab {

class MalformedName : public std::runtime_error {
 public:
  explicit MalformedName(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kMaxNameComponents = 64;

/// Hierarchical content name: an ordered list of byte-string components.
/// Components are non-empty, contain no '/' byte, and there are at most
/// kMaxNameComponents of them. The empty name (zero components) is valid
/// and is a prefix of every name.
class Name {
 public:
  Name() = default;
  explicit Name(std::vector<std::string> components);

  static bool valid_component(std::string_view component);

  const std::vector<std::string>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }
  const std::string& at(std::size_t i) const { return components_.at(i); }

  /// Name extended by one component (validated).
  Name appended(std::string_view component) const;

  /// First n components (n is clamped to size()).
  Name prefix(std::size_t n) const;

  bool is_prefix_of(const Name& other) const;

  auto operator<=>(const Name&) const = default;

 private:
  std::vector<std::string> components_;
};

/// Parses the textual form: "lci:/a/b/c" or "/a/b/c"; "lci:/" and "/" denote
/// the empty name. Throws MalformedName on a missing prefix, an empty
/// component, or too many components.
Name parse_lci(std::string_view text);

/// Inverse of parse_lci; always emits the "lci:/" prefix.
std::string format_lci(const Name& name);

/// Longest common prefix of a non-empty batch of names (the aggregate a
/// consumer-facing router announces on behalf of its consumers).
Name aggregate_prefixes(std::span<const Name> names);

}  // namespace ccnlab
