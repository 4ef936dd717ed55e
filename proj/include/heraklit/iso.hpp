#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "heraklit/module.hpp"

namespace heraklit {

struct IsoOptions {
  /// Abstract nodes may carry different names as long as the renaming is a
  /// bijection on names.
  bool rename_abstract_cores = false;
  /// Structural equality mode: atoms must coincide, no search.
  bool require_identical_atoms = false;
  /// Search steps before giving up with SearchBudgetExceeded.
  std::uint64_t budget = 5'000'000;
};

struct IsoWitness {
  std::map<NodeId, NodeId> mapping;
};

/// Identical node sets (as atom sets), labels, kinds, edges, interface slot
/// sequences and markings. Module names are not compared.
bool structural_equal(const Module& a, const Module& b);

/// Label, kind, edge, marking and interface-slot preserving bijection, if one
/// exists. Exact backtracking search; throws SearchBudgetExceeded rather than
/// answering when the budget runs out.
std::optional<IsoWitness> isomorphic(const Module& a, const Module& b, IsoOptions opts = {});

/// Replays a witness edge by edge and slot by slot. Returns the first
/// violation, or nothing if the witness is valid.
std::optional<std::string> check_witness(const Module& a, const Module& b, const IsoWitness& w,
                                         const IsoOptions& opts = {});

}  // namespace heraklit
