#include "heraklit/random.hpp"

#include <algorithm>
#include <vector>

namespace heraklit::gen {

const Alphabet& Generator::alphabet() {
  static const Alphabet sigma({"p", "q"}, {"t", "u"});
  return sigma;
}

std::size_t Generator::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

Module Generator::module(std::optional<std::string> name) {
  static const std::vector<std::string> labels = {"p", "q", "t", "u"};
  const std::uint64_t tag = next_tag();
  const std::size_t n = chance(0.05) ? 0 : uniform(1, 12);

  std::vector<NodeId> ids;
  std::map<NodeId, NodeInfo> nodes;
  Marking marking;
  for (std::size_t i = 0; i < n; ++i) {
    NodeId id(AtomicNodeId{tag, "v" + std::to_string(i)});
    const std::string& label = labels[uniform(0, labels.size() - 1)];
    const NodeKind kind = alphabet().kind_of(label);
    nodes.emplace(id, NodeInfo{label, kind});
    if (kind == NodeKind::place && chance(0.3)) marking.emplace(id, static_cast<std::uint32_t>(uniform(1, 2)));
    ids.push_back(std::move(id));
  }

  const bool bipartite = chance(0.8);
  const double density = n == 0 ? 0.0 : std::min(0.5, 2.5 / static_cast<double>(n));
  std::set<Edge> edges;
  for (const auto& u : ids) {
    for (const auto& v : ids) {
      if (bipartite && nodes.at(u).kind == nodes.at(v).kind) continue;
      if (chance(density)) edges.emplace(u, v);
    }
  }

  auto subset = [&](double p) {
    Interface out;
    for (const auto& id : ids) {
      if (chance(p)) out.push_back(id);
    }
    std::shuffle(out.begin(), out.end(), rng_);
    return out;
  };
  Interface left = subset(0.4);
  Interface right = subset(0.4);
  return Module(std::move(nodes), std::move(edges), std::move(left), std::move(right),
                std::move(marking), std::move(name));
}

NetView Generator::net(std::size_t max_transitions, std::size_t max_places) {
  const std::uint64_t tag = next_tag();
  const std::size_t nt = uniform(1, max_transitions);
  const std::size_t np = uniform(1, max_places);

  NetView net;
  std::vector<NodeId> places, transitions;
  for (std::size_t i = 0; i < np; ++i) {
    NodeId p(AtomicNodeId{tag, "p" + std::to_string(i)});
    net.labels.emplace(p, "p" + std::to_string(i));
    if (chance(0.3)) net.marking.emplace(p, static_cast<std::uint32_t>(uniform(1, 3)));
    net.places.insert(p);
    places.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < nt; ++i) {
    NodeId t(AtomicNodeId{tag, "t" + std::to_string(i)});
    net.labels.emplace(t, "t" + std::to_string(i));
    net.transitions.insert(t);
    transitions.push_back(std::move(t));
  }

  const double p_arc = std::min(0.5, 1.5 / static_cast<double>(np));
  std::set<NodeId> touched;
  for (const auto& t : transitions) {
    for (const auto& p : places) {
      if (chance(p_arc)) net.flow.emplace(p, t);
      if (chance(p_arc)) net.flow.emplace(t, p);
    }
    bool has_arc = std::any_of(net.flow.begin(), net.flow.end(),
                               [&](const Edge& e) { return e.first == t || e.second == t; });
    if (!has_arc) {
      const auto& p = places[uniform(0, places.size() - 1)];
      if (chance(0.5)) net.flow.emplace(p, t);
      else net.flow.emplace(t, p);
    }
  }
  for (const auto& [from, to] : net.flow) {
    touched.insert(from);
    touched.insert(to);
  }
  for (const auto& p : places) {
    if (touched.contains(p)) continue;
    const auto& t = transitions[uniform(0, transitions.size() - 1)];
    if (chance(0.5)) net.flow.emplace(p, t);
    else net.flow.emplace(t, p);
  }
  return net;
}

}  // namespace heraklit::gen
