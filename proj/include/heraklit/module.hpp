#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heraklit/error.hpp"

namespace heraklit {

enum class NodeKind { place, transition, abstract };

std::string_view to_string(NodeKind kind);

/// One node as originally declared: the instantiation tag keeps copies of the
/// same snippet apart.
struct AtomicNodeId {
  std::uint64_t instance = 0;
  std::string name;

  auto operator<=>(const AtomicNodeId&) const = default;
};

/// A node identity is a non-empty set of atoms. Merging two nodes yields the
/// union of their atom sets, so merged nodes never nest.
class NodeId {
 public:
  explicit NodeId(AtomicNodeId atom);
  explicit NodeId(std::vector<AtomicNodeId> atoms);

  static NodeId merge(const NodeId& a, const NodeId& b);

  const std::vector<AtomicNodeId>& atoms() const { return atoms_; }
  bool shares_atom_with(const NodeId& other) const;

  /// Injective text form, e.g. `available@3+available@7`.
  std::string str() const;

  auto operator<=>(const NodeId&) const = default;

 private:
  std::vector<AtomicNodeId> atoms_;  // sorted, unique
};

/// The label alphabet with its place/transition partition. Labels outside both
/// subsets are allowed and yield abstract nodes.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::set<std::string> place_labels, std::set<std::string> transition_labels,
           std::set<std::string> other_labels = {});

  bool contains(const std::string& label) const { return labels_.contains(label); }
  NodeKind kind_of(const std::string& label) const;

  const std::set<std::string>& labels() const { return labels_; }
  const std::set<std::string>& place_labels() const { return places_; }
  const std::set<std::string>& transition_labels() const { return transitions_; }

 private:
  std::set<std::string> labels_;
  std::set<std::string> places_;
  std::set<std::string> transitions_;
};

struct NodeInfo {
  std::string label;
  NodeKind kind = NodeKind::abstract;

  bool operator==(const NodeInfo&) const = default;
};

/// Ordered slot sequence. The per-label index of a slot is its 1-based
/// position among the slots carrying the same label.
using Interface = std::vector<NodeId>;

enum class Side { left, right };

struct Slot {
  NodeId node;
  std::string label;
  std::size_t index = 0;
};

using Edge = std::pair<NodeId, NodeId>;
using Marking = std::map<NodeId, std::uint32_t>;

/// A graph with a left and a right interface. Immutable once built; every
/// operator returns a new value.
class Module {
 public:
  Module() = default;

  /// Throws Error(malformed_module) when an invariant does not hold.
  Module(std::map<NodeId, NodeInfo> nodes, std::set<Edge> edges, Interface left, Interface right,
         Marking marking = {}, std::optional<std::string> name = std::nullopt);

  const std::map<NodeId, NodeInfo>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  const Interface& left() const { return left_; }
  const Interface& right() const { return right_; }
  const Interface& interface(Side side) const { return side == Side::left ? left_ : right_; }
  const Marking& marking() const { return marking_; }
  const std::optional<std::string>& name() const { return name_; }

  bool empty() const { return nodes_.empty(); }
  bool contains(const NodeId& id) const { return nodes_.contains(id); }
  const NodeInfo& info(const NodeId& id) const;
  const std::string& label(const NodeId& id) const { return info(id).label; }
  std::uint32_t tokens(const NodeId& id) const;
  std::uint64_t total_tokens() const;

  /// Slots of one interface with their derived per-label indices.
  std::vector<Slot> slots(Side side) const;

  /// Nodes referenced by neither interface.
  std::set<NodeId> interior() const;

  /// All atoms of all nodes.
  std::set<AtomicNodeId> atoms() const;

  Module with_name(std::optional<std::string> name) const;

 private:
  std::map<NodeId, NodeInfo> nodes_;
  std::set<Edge> edges_;
  Interface left_;
  Interface right_;
  Marking marking_;  // positive counts only
  std::optional<std::string> name_;
};

/// Per-label indices for an arbitrary slot sequence.
std::vector<std::size_t> label_indices(std::span<const NodeId> slots,
                                       const std::map<NodeId, NodeInfo>& nodes);

/// Violations of interface well-formedness (duplicate slots, dangling
/// references, non-contiguous indices). Empty when the module is sound.
std::vector<std::string> well_formedness_violations(const Module& m);

}  // namespace heraklit
