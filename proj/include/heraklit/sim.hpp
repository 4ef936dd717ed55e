#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heraklit/net.hpp"

namespace heraklit::sim {

// Ordinary place/transition token game: every arc has weight one.

/// Transitions whose every input place holds a token, in identity order.
std::vector<NodeId> enabled(const NetView& net, const Marking& m);

bool is_enabled(const NetView& net, const Marking& m, const NodeId& t);

/// m - pre(t) + post(t). Throws NotEnabled.
Marking fire(const NetView& net, const Marking& m, const NodeId& t);

struct ReachCaps {
  std::size_t max_markings = 1'000'000;
  std::uint32_t max_tokens_per_place = 16;
};

struct ReachArc {
  std::size_t from = 0;
  NodeId transition;
  std::size_t to = 0;
};

/// Breadth-first reachability graph. Vertex 0 is the root; vertices appear in
/// discovery order, arcs in (source, transition identity) order.
struct ReachGraph {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::vector<Marking> vertices;
  std::vector<ReachArc> arcs;
  std::size_t root = 0;
  bool truncated = false;
  /// BFS tree: arc through which each vertex was discovered, npos for the root.
  std::vector<std::size_t> parent_arc;

  /// Vertex holding m, or npos.
  std::size_t find(const Marking& m) const;
  /// Transitions fired along the BFS tree from the root to vertex v.
  std::vector<NodeId> path_to(std::size_t v) const;
};

ReachGraph reachability(const NetView& net, const Marking& m0, ReachCaps caps = {});

using MarkingPredicate = std::function<bool(const Marking&)>;

struct Counterexample {
  Marking marking;
  std::vector<NodeId> path;  // firing sequence from the root
};

struct InvariantResult {
  std::optional<Counterexample> counterexample;
  /// False when the graph was truncated; "no counterexample" is then only
  /// a statement about the explored part.
  bool exhaustive = true;
};

/// First vertex (in discovery order) violating the predicate.
InvariantResult check_invariant(const ReachGraph& g, const MarkingPredicate& holds);

/// The root is reachable from every vertex. Only meaningful on an
/// untruncated graph.
bool root_is_home_state(const ReachGraph& g);

/// Parses a marking predicate. Place references are labels and stand for the
/// token sum over all places carrying that label; `max(l)`/`min(l)` range
/// over those places instead.
///
///   pred   := or
///   or     := and { "||" and }
///   and    := unary { "&&" unary }
///   unary  := "!" unary | "(" pred ")" | cmp
///   cmp    := sum ( "<=" | "<" | ">=" | ">" | "==" | "!=" ) sum
///   sum    := term { ("+" | "-") term }
///   term   := INT | LABEL | "max" "(" LABEL ")" | "min" "(" LABEL ")"
///
/// Unknown labels are a ParseError.
MarkingPredicate parse_predicate(std::string_view text, const NetView& net);

}  // namespace heraklit::sim
