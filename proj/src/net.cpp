#include "heraklit/net.hpp"

#include "heraklit/calculus.hpp"
#include "heraklit/iso.hpp"

namespace heraklit {

std::set<NodeId> NetView::preset(const NodeId& n) const {
  std::set<NodeId> out;
  for (const auto& [from, to] : flow) {
    if (to == n) out.insert(from);
  }
  return out;
}

std::set<NodeId> NetView::postset(const NodeId& n) const {
  std::set<NodeId> out;
  for (const auto& [from, to] : flow) {
    if (from == n) out.insert(to);
  }
  return out;
}

NetView validate_net(const Module& m) {
  NetView net;
  std::string abstract_nodes;
  for (const auto& [id, info] : m.nodes()) {
    switch (info.kind) {
      case NodeKind::place: net.places.insert(id); break;
      case NodeKind::transition: net.transitions.insert(id); break;
      case NodeKind::abstract: abstract_nodes += (abstract_nodes.empty() ? "" : ", ") + id.str(); break;
    }
    net.labels.emplace(id, info.label);
  }
  if (!abstract_nodes.empty())
    throw Error(ErrorCode::abstract_node_present, "abstract nodes: " + abstract_nodes);

  std::string offending;
  for (const auto& e : m.edges()) {
    if (m.info(e.first).kind == m.info(e.second).kind)
      offending += (offending.empty() ? "" : ", ") + e.first.str() + " -> " + e.second.str();
  }
  if (!offending.empty()) throw Error(ErrorCode::not_bipartite, "same-kind edges: " + offending);

  net.flow = m.edges();
  net.marking = m.marking();
  return net;
}

Module net_to_module(const NetView& net) {
  std::map<NodeId, NodeInfo> nodes;
  for (const auto& p : net.places) nodes.emplace(p, NodeInfo{p.str(), NodeKind::place});
  for (const auto& t : net.transitions) nodes.emplace(t, NodeInfo{t.str(), NodeKind::transition});
  Interface places(net.places.begin(), net.places.end());
  return Module(std::move(nodes), net.flow, places, places, net.marking);
}

Module transition_atom(const NetView& net, const NodeId& t, std::uint64_t tag) {
  if (!net.transitions.contains(t))
    throw Error(ErrorCode::unknown_transition, t.str() + " is not a transition of the net");
  const auto pre = net.preset(t);
  const auto post = net.postset(t);
  std::set<NodeId> around = pre;
  around.insert(post.begin(), post.end());
  if (around.empty()) throw Error(ErrorCode::isolated_element, "transition " + t.str() + " is isolated");

  auto fresh = [tag](const NodeId& id) { return NodeId(AtomicNodeId{tag, id.str()}); };

  std::map<NodeId, NodeInfo> nodes;
  nodes.emplace(fresh(t), NodeInfo{t.str(), NodeKind::transition});
  Interface slots;
  for (const auto& p : around) {
    nodes.emplace(fresh(p), NodeInfo{p.str(), NodeKind::place});
    slots.push_back(fresh(p));
  }
  std::set<Edge> edges;
  for (const auto& p : pre) edges.emplace(fresh(p), fresh(t));
  for (const auto& p : post) edges.emplace(fresh(t), fresh(p));
  return Module(std::move(nodes), std::move(edges), slots, slots);
}

Factorization factorize(const NetView& net) {
  std::set<NodeId> touched;
  for (const auto& [from, to] : net.flow) {
    touched.insert(from);
    touched.insert(to);
  }
  for (const auto* set : {&net.places, &net.transitions}) {
    for (const auto& n : *set) {
      if (!touched.contains(n))
        throw Error(ErrorCode::isolated_element, "isolated element " + n.str());
    }
  }

  Factorization out;
  std::set<NodeId> placed;  // places whose tokens are already assigned
  std::uint64_t tag = 1;
  for (const auto& t : net.transitions) {
    Module atom = transition_atom(net, t, tag);
    Marking marking;
    for (const auto& p : net.places) {
      const NodeId local(AtomicNodeId{tag, p.str()});
      if (!atom.contains(local) || placed.contains(p)) continue;
      placed.insert(p);
      if (auto it = net.marking.find(p); it != net.marking.end()) marking.emplace(local, it->second);
    }
    if (!marking.empty()) {
      atom = Module(atom.nodes(), atom.edges(), atom.left(), atom.right(), std::move(marking));
    }
    out.atoms.push_back(std::move(atom));
    ++tag;
  }
  out.recomposed = compose_all(out.atoms);
  out.isomorphic_to_net = isomorphic(out.recomposed, net_to_module(net)).has_value();
  return out;
}

}  // namespace heraklit
