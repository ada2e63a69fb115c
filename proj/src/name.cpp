#include "ccnlab/name.hpp"

#include <algorithm>

namespace ccnlab {

bool Name::valid_component(std::string_view component) {
  return !component.empty() && component.find('/') == std::string_view::npos;
}

Name::Name(std::vector<std::string> components) : components_(std::move(components)) {
  if (components_.size() > kMaxNameComponents) {
    throw MalformedName("name has more than 64 components");
  }
  for (const auto& c : components_) {
    if (!valid_component(c)) {
      throw MalformedName("empty component or '/' byte inside a component");
    }
  }
}

Name Name::appended(std::string_view component) const {
  std::vector<std::string> comps = components_;
  comps.emplace_back(component);
  return Name(std::move(comps));
}

Name Name::prefix(std::size_t n) const {
  n = std::min(n, components_.size());
  return Name(std::vector<std::string>(components_.begin(), components_.begin() + n));
}

bool Name::is_prefix_of(const Name& other) const {
  if (components_.size() > other.components_.size()) return false;
  return std::equal(components_.begin(), components_.end(), other.components_.begin());
}

Name parse_lci(std::string_view text) {
  if (text.starts_with("lci:/")) {
    text.remove_prefix(5);
  } else if (text.starts_with("/")) {
    text.remove_prefix(1);
  } else {
    throw MalformedName("name must start with \"lci:/\" or \"/\"");
  }
  std::vector<std::string> comps;
  if (text.empty()) return Name(std::move(comps));  // root
  std::size_t start = 0;
  while (true) {
    std::size_t slash = text.find('/', start);
    std::string_view comp = (slash == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, slash - start);
    if (comp.empty()) throw MalformedName("empty name component");
    comps.emplace_back(comp);
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return Name(std::move(comps));
}

std::string format_lci(const Name& name) {
  std::string out = "lci:/";
  bool first = true;
  for (const auto& c : name.components()) {
    if (!first) out += '/';
    out += c;
    first = false;
  }
  return out;
}

Name aggregate_prefixes(std::span<const Name> names) {
  if (names.empty()) throw MalformedName("aggregate of an empty name list");
  std::size_t common = names.front().size();
  for (const Name& n : names.subspan(1)) {
    std::size_t i = 0;
    std::size_t limit = std::min(common, n.size());
    while (i < limit && names.front().at(i) == n.at(i)) ++i;
    common = i;
    if (common == 0) break;
  }
  return names.front().prefix(common);
}

}  // namespace ccnlab
