#pragma once

#include <initializer_list>
#include <string>

#include "heraklit/module.hpp"

namespace heraklit::testing {

// Hand-assembled modules; every node gets atom (tag, name).
class Builder {
 public:
  explicit Builder(std::uint64_t tag = 1) : tag_(tag) {}

  NodeId id(const std::string& name) const { return NodeId(AtomicNodeId{tag_, name}); }

  Builder& place(const std::string& name, const std::string& label, std::uint32_t tokens = 0) {
    nodes_.emplace(id(name), NodeInfo{label, NodeKind::place});
    if (tokens > 0) marking_[id(name)] = tokens;
    return *this;
  }
  Builder& transition(const std::string& name, const std::string& label) {
    nodes_.emplace(id(name), NodeInfo{label, NodeKind::transition});
    return *this;
  }
  Builder& node(const std::string& name, const std::string& label) {
    nodes_.emplace(id(name), NodeInfo{label, NodeKind::abstract});
    return *this;
  }
  Builder& arc(const std::string& from, const std::string& to) {
    edges_.emplace(id(from), id(to));
    return *this;
  }
  Builder& left(std::initializer_list<std::string> names) {
    for (const auto& n : names) left_.push_back(id(n));
    return *this;
  }
  Builder& right(std::initializer_list<std::string> names) {
    for (const auto& n : names) right_.push_back(id(n));
    return *this;
  }

  Module build(std::optional<std::string> name = std::nullopt) const {
    return Module(nodes_, edges_, left_, right_, marking_, std::move(name));
  }

 private:
  std::uint64_t tag_;
  std::map<NodeId, NodeInfo> nodes_;
  std::set<Edge> edges_;
  Interface left_, right_;
  Marking marking_;
};

inline std::string fixture(const std::string& file) {
  return std::string(HERAKLIT_FIXTURES) + "/" + file;
}

}  // namespace heraklit::testing
