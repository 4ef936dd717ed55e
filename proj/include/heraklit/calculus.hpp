#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "heraklit/module.hpp"

namespace heraklit {

/// {r, s} with r from the first and s from the second interface, sharing the
/// label and the per-label index.
struct HarmonicPair {
  NodeId left_elem;
  NodeId right_elem;
  std::string label;
  std::size_t index = 0;
};

using LabelOf = std::function<const std::string&(const NodeId&)>;

/// Harmonic pairs of two disjoint interfaces, ordered by label then index.
/// Throws NonDisjointInterfaces if a node occurs in both.
std::vector<HarmonicPair> harmonic_pairs(std::span<const NodeId> r, std::span<const NodeId> s,
                                         const LabelOf& label_of);

/// The composition A • B. Harmonic partners of A's right and B's left
/// interface merge into inner nodes; leftovers are appended to the opposite
/// operand's interface so that their per-label index becomes p + n - m.
///
/// Requires disjoint atom sets (NonDisjointOperands otherwise).
Module compose(const Module& a, const Module& b);

/// The closure A^c: merges harmonic partners of A's right and left interface.
///
/// A node standing in both interfaces at the same label and index pairs with
/// itself; it is absorbed into the interior like any other pair.
Module closure(const Module& a);

/// Atomic module with a single abstract core labeled by A's name, linked from
/// every left-interface node and to every right-interface node.
Module abstract_of(const Module& a);

/// The neutral element E.
Module empty_module();

/// Left and right interface reference the same node set.
bool is_monolithic(const Module& a);

/// abstr(A_1) • ... • abstr(A_n).
Module seam(std::span<const Module> parts);

/// fold(compose, E, parts).
Module compose_all(std::span<const Module> parts);

}  // namespace heraklit
