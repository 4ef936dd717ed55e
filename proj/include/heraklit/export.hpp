#pragma once

#include <string>
#include <string_view>

#include "heraklit/module.hpp"

namespace heraklit {

/// Graphviz rendering: interior boxed in a cluster, interfaces on the
/// margins. A node in both interfaces appears twice, joined by a double line.
std::string to_dot(const Module& m);

/// PNML 2009 place/transition net. Throws NotANet unless the module is a net.
std::string to_pnml(const Module& m);

/// XML-safe id for a node: escaped identity, or a hash for long identities.
std::string pnml_id(const NodeId& id);

/// Canonical JSON text: nodes sorted by atom set, edges and interface slots
/// as node positions, explicit per-label indices. Equal modules give equal
/// bytes.
std::string dump(const Module& m);

/// Inverse of dump. Throws ParseError on malformed or inconsistent input.
Module load(std::string_view text);

}  // namespace heraklit
