#include "ccnlab/fib.hpp"

#include <charconv>
#include <sstream>

namespace ccnlab {

void Fib::insert(const Name& prefix, InterfaceId iface) {
  Node* node = &root_;
  for (const auto& comp : prefix.components()) {
    auto& child = node->children[comp];
    if (!child) child = std::make_unique<Node>();
    node = child.get();
  }
  if (!node->iface) {
    if (capacity_ && entry_count_ >= *capacity_) {
      throw FibFull("FIB capacity reached");
    }
    ++entry_count_;
  }
  node->iface = iface;
}

std::optional<InterfaceId> Fib::lookup(const Name& name) const {
  const Node* node = &root_;
  std::optional<InterfaceId> best = node->iface;
  for (const auto& comp : name.components()) {
    auto it = node->children.find(comp);
    if (it == node->children.end()) break;
    node = it->second.get();
    if (node->iface) best = node->iface;
  }
  return best;
}

std::string Fib::dump() const {
  std::ostringstream out;
  // Iterative pre-order walk; std::map keys keep the output sorted.
  struct Frame {
    const Node* node;
    Name prefix;
  };
  std::vector<Frame> stack;
  stack.push_back({&root_, Name()});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.node->iface) {
      out << format_lci(f.prefix) << ' ' << *f.node->iface << '\n';
    }
    // Push children in reverse so they pop in sorted order.
    for (auto it = f.node->children.rbegin(); it != f.node->children.rend(); ++it) {
      stack.push_back({it->second.get(), f.prefix.appended(it->first)});
    }
  }
  return out.str();
}

Fib Fib::load(std::string_view text, std::optional<std::size_t> capacity) {
  Fib fib;
  if (capacity) fib.capacity_ = capacity;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        (eol == std::string_view::npos) ? text.substr(pos) : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
    if (line.empty() || line.starts_with('#')) continue;
    std::size_t space = line.rfind(' ');
    if (space == std::string_view::npos) throw MalformedName("FIB line missing interface id");
    Name prefix = parse_lci(line.substr(0, space));
    std::string_view iface_text = line.substr(space + 1);
    InterfaceId iface = 0;
    auto [ptr, ec] = std::from_chars(iface_text.data(), iface_text.data() + iface_text.size(), iface);
    if (ec != std::errc() || ptr != iface_text.data() + iface_text.size()) {
      throw MalformedName("FIB line has a bad interface id");
    }
    fib.insert(prefix, iface);
  }
  return fib;
}

}  // namespace ccnlab
