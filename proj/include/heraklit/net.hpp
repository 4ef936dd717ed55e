#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "heraklit/module.hpp"

namespace heraklit {

/// Bipartite reading of a module: places, transitions, flow and marking.
struct NetView {
  std::set<NodeId> places;
  std::set<NodeId> transitions;
  std::set<Edge> flow;
  Marking marking;
  std::map<NodeId, std::string> labels;  // as carried by the source module

  std::set<NodeId> preset(const NodeId& n) const;
  std::set<NodeId> postset(const NodeId& n) const;
};

/// Succeeds iff every node is a place or a transition and every edge joins
/// opposite kinds. Throws AbstractNodePresent or NotBipartite.
NetView validate_net(const Module& m);

/// [N]: all places and transitions labelled by their identity, both
/// interfaces holding every place in identity order.
Module net_to_module(const NetView& net);

/// [t] for one transition. Every node is a fresh atom with instance `tag`
/// whose name is the original identity, so atoms of one net can be composed.
/// Throws UnknownTransition or IsolatedElement.
Module transition_atom(const NetView& net, const NodeId& t, std::uint64_t tag = 1);

struct Factorization {
  std::vector<Module> atoms;  // [t_1], ..., [t_n] in identity order of t
  Module recomposed;          // E • [t_1] • ... • [t_n]
  bool isomorphic_to_net = false;
};

/// Splits a net into transition atoms and recomposes them. Each place's
/// tokens go to the first atom that contains it. Throws IsolatedElement.
Factorization factorize(const NetView& net);

}  // namespace heraklit
