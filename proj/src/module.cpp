#include "heraklit/module.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>

namespace heraklit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::non_disjoint_interfaces: return "NonDisjointInterfaces";
    case ErrorCode::non_disjoint_operands: return "NonDisjointOperands";
    case ErrorCode::kind_mismatch: return "KindMismatch";
    case ErrorCode::unnamed_module: return "UnnamedModule";
    case ErrorCode::malformed_module: return "MalformedModule";
    case ErrorCode::not_bipartite: return "NotBipartite";
    case ErrorCode::abstract_node_present: return "AbstractNodePresent";
    case ErrorCode::unknown_transition: return "UnknownTransition";
    case ErrorCode::isolated_element: return "IsolatedElement";
    case ErrorCode::search_budget_exceeded: return "SearchBudgetExceeded";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::duplicate_name: return "DuplicateName";
    case ErrorCode::unknown_label: return "UnknownLabel";
    case ErrorCode::recursive_definition: return "RecursiveDefinition";
    case ErrorCode::unbound_name: return "UnboundName";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::not_a_net: return "NotANet";
    case ErrorCode::not_enabled: return "NotEnabled";
  }
  return "Error";
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::place: return "place";
    case NodeKind::transition: return "transition";
    case NodeKind::abstract: return "abstract";
  }
  return "abstract";
}

// --- NodeId -----------------------------------------------------------------

NodeId::NodeId(AtomicNodeId atom) { atoms_.push_back(std::move(atom)); }

NodeId::NodeId(std::vector<AtomicNodeId> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorCode::malformed_module, "node id without atoms");
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

NodeId NodeId::merge(const NodeId& a, const NodeId& b) {
  std::vector<AtomicNodeId> atoms;
  atoms.reserve(a.atoms_.size() + b.atoms_.size());
  std::set_union(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end(),
                 std::back_inserter(atoms));
  return NodeId(std::move(atoms));
}

bool NodeId::shares_atom_with(const NodeId& other) const {
  auto i = atoms_.begin();
  auto j = other.atoms_.begin();
  while (i != atoms_.end() && j != other.atoms_.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

std::string NodeId::str() const {
  std::string out;
  for (const auto& atom : atoms_) {
    if (!out.empty()) out += '+';
    for (char c : atom.name) {
      if (c == '\\' || c == '@' || c == '+') out += '\\';
      out += c;
    }
    out += '@';
    out += std::to_string(atom.instance);
  }
  return out;
}

// --- Alphabet ---------------------------------------------------------------

Alphabet::Alphabet(std::set<std::string> place_labels, std::set<std::string> transition_labels,
                   std::set<std::string> other_labels)
    : places_(std::move(place_labels)), transitions_(std::move(transition_labels)) {
  for (const auto& l : places_) {
    if (transitions_.contains(l))
      throw Error(ErrorCode::malformed_module,
                  "label '" + l + "' is both a place and a transition label");
  }
  labels_ = std::move(other_labels);
  labels_.insert(places_.begin(), places_.end());
  labels_.insert(transitions_.begin(), transitions_.end());
}

NodeKind Alphabet::kind_of(const std::string& label) const {
  if (places_.contains(label)) return NodeKind::place;
  if (transitions_.contains(label)) return NodeKind::transition;
  return NodeKind::abstract;
}

// --- Module -----------------------------------------------------------------

namespace {

void check_interface(const Interface& slots, const std::map<NodeId, NodeInfo>& nodes,
                     std::string_view side) {
  std::set<NodeId> seen;
  for (const auto& id : slots) {
    if (!nodes.contains(id))
      throw Error(ErrorCode::malformed_module,
                  std::string(side) + " interface references unknown node " + id.str());
    if (!seen.insert(id).second)
      throw Error(ErrorCode::malformed_module,
                  std::string(side) + " interface lists node " + id.str() + " twice");
  }
}

}  // namespace

Module::Module(std::map<NodeId, NodeInfo> nodes, std::set<Edge> edges, Interface left,
               Interface right, Marking marking, std::optional<std::string> name)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      left_(std::move(left)),
      right_(std::move(right)),
      name_(std::move(name)) {
  // Two nodes of one module never share an atom.
  std::set<AtomicNodeId> atoms;
  for (const auto& [id, _] : nodes_) {
    for (const auto& a : id.atoms()) {
      if (!atoms.insert(a).second)
        throw Error(ErrorCode::malformed_module, "atom of " + id.str() + " used twice");
    }
  }
  for (const auto& [from, to] : edges_) {
    if (!nodes_.contains(from) || !nodes_.contains(to))
      throw Error(ErrorCode::malformed_module,
                  "edge " + from.str() + " -> " + to.str() + " has a dangling endpoint");
  }
  check_interface(left_, nodes_, "left");
  check_interface(right_, nodes_, "right");
  for (auto& [id, count] : marking) {
    if (count == 0) continue;
    auto it = nodes_.find(id);
    if (it == nodes_.end() || it->second.kind != NodeKind::place)
      throw Error(ErrorCode::malformed_module, "tokens on non-place " + id.str());
    marking_.emplace(id, count);
  }
}

const NodeInfo& Module::info(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorCode::malformed_module, "unknown node " + id.str());
  return it->second;
}

std::uint32_t Module::tokens(const NodeId& id) const {
  auto it = marking_.find(id);
  return it == marking_.end() ? 0 : it->second;
}

std::uint64_t Module::total_tokens() const {
  return std::accumulate(marking_.begin(), marking_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

std::vector<Slot> Module::slots(Side side) const {
  const Interface& seq = interface(side);
  auto indices = label_indices(seq, nodes_);
  std::vector<Slot> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out.push_back({seq[i], label(seq[i]), indices[i]});
  return out;
}

std::set<NodeId> Module::interior() const {
  std::set<NodeId> out;
  std::set<NodeId> boundary(left_.begin(), left_.end());
  boundary.insert(right_.begin(), right_.end());
  for (const auto& [id, _] : nodes_) {
    if (!boundary.contains(id)) out.insert(id);
  }
  return out;
}

std::set<AtomicNodeId> Module::atoms() const {
  std::set<AtomicNodeId> out;
  for (const auto& [id, _] : nodes_) out.insert(id.atoms().begin(), id.atoms().end());
  return out;
}

Module Module::with_name(std::optional<std::string> name) const {
  Module copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

std::vector<std::size_t> label_indices(std::span<const NodeId> slots,
                                       const std::map<NodeId, NodeInfo>& nodes) {
  std::map<std::string, std::size_t> seen;
  std::vector<std::size_t> out;
  out.reserve(slots.size());
  for (const auto& id : slots) out.push_back(++seen[nodes.at(id).label]);
  return out;
}

std::vector<std::string> well_formedness_violations(const Module& m) {
  std::vector<std::string> out;
  for (Side side : {Side::left, Side::right}) {
    const char* name = side == Side::left ? "left" : "right";
    std::map<std::string, std::vector<std::size_t>> by_label;
    std::set<NodeId> seen;
    for (const auto& slot : m.slots(side)) {
      if (!m.contains(slot.node)) out.push_back(std::string(name) + ": dangling " + slot.node.str());
      if (!seen.insert(slot.node).second)
        out.push_back(std::string(name) + ": duplicate slot " + slot.node.str());
      by_label[slot.label].push_back(slot.index);
    }
    for (const auto& [label, indices] : by_label) {
      for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] != i + 1) {
          out.push_back(std::string(name) + ": label '" + label + "' indices not 1.." +
                        std::to_string(indices.size()));
          break;
        }
      }
    }
  }
  for (const auto& [id, info] : m.nodes()) {
    if (m.tokens(id) > 0 && info.kind != NodeKind::place)
      out.push_back("tokens on non-place " + id.str());
  }
  return out;
}

}  // namespace heraklit
