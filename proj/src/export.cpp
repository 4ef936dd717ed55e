#include "heraklit/export.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "heraklit/net.hpp"

namespace heraklit {

namespace {

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string tokens_glyph(std::uint32_t n) {
  if (n == 0) return {};
  if (n > 4) return std::to_string(n);
  std::string out;
  for (std::uint32_t i = 0; i < n; ++i) out += "●";
  return out;
}

constexpr std::size_t kMaxIdLength = 64;

}  // namespace

// --- DOT --------------------------------------------------------------------

std::string to_dot(const Module& m) {
  std::map<NodeId, std::string> handle;
  for (const auto& [id, _] : m.nodes()) handle.emplace(id, "n" + std::to_string(handle.size()));

  const std::set<NodeId> in_left(m.left().begin(), m.left().end());
  const std::set<NodeId> in_right(m.right().begin(), m.right().end());
  auto twin = [&](const NodeId& id) { return in_left.contains(id) && in_right.contains(id); };

  auto node_line = [&](const NodeId& id, const std::string& dot_id) {
    const auto& info = m.info(id);
    std::string attrs = "label=\"" + dot_escape(info.label) + "\"";
    switch (info.kind) {
      case NodeKind::place: attrs += ", shape=circle"; break;
      case NodeKind::transition: attrs += ", shape=box"; break;
      case NodeKind::abstract: attrs += ", shape=box, style=rounded"; break;
    }
    if (auto t = m.tokens(id); t > 0) attrs += ", xlabel=\"" + tokens_glyph(t) + "\"";
    attrs += ", tooltip=\"" + dot_escape(id.str()) + "\"";
    return "    " + dot_id + " [" + attrs + "];\n";
  };

  std::ostringstream out;
  out << "digraph \"" << dot_escape(m.name().value_or("module")) << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [fontname=\"Helvetica\"];\n";

  out << "  subgraph cluster_interior {\n";
  out << "    label=\"" << dot_escape(m.name().value_or("")) << "\";\n";
  out << "    style=solid;\n";
  for (const auto& id : m.interior()) out << node_line(id, handle.at(id));
  out << "  }\n";

  // Left margin, then right margin; slot order is top-down index order.
  auto margin = [&](Side side) {
    const bool left = side == Side::left;
    out << "  { rank=" << (left ? "min" : "max") << ";\n";
    for (const auto& id : m.interface(side)) {
      std::string h = handle.at(id);
      if (twin(id)) h += left ? "_l" : "_r";
      out << node_line(id, h);
    }
    out << "  }\n";
  };
  margin(Side::left);
  margin(Side::right);

  // Twins: incoming arcs end at the left copy, outgoing arcs leave the right copy.
  auto head = [&](const NodeId& id) { return handle.at(id) + (twin(id) ? "_l" : ""); };
  auto tail = [&](const NodeId& id) { return handle.at(id) + (twin(id) ? "_r" : ""); };
  for (const auto& [from, to] : m.edges()) out << "  " << tail(from) << " -> " << head(to) << ";\n";
  for (const auto& id : m.left()) {
    if (twin(id))
      out << "  " << handle.at(id) << "_l -> " << handle.at(id)
          << "_r [dir=none, color=\"black:invis:black\", constraint=false];\n";
  }
  out << "}\n";
  return out.str();
}

// --- PNML -------------------------------------------------------------------

std::string pnml_id(const NodeId& id) {
  const std::string identity = id.str();
  std::string out = "n_";
  static const char* hex = "0123456789abcdef";
  for (unsigned char c : identity) {
    if (std::isalnum(c)) {
      out += static_cast<char>(c);
    } else if (c == '_') {
      out += "__";
    } else if (c == '@') {
      out += "_a";
    } else if (c == '+') {
      out += "_p";
    } else {
      out += "_x";
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  if (out.size() <= kMaxIdLength) return out;
  char buf[24];
  std::snprintf(buf, sizeof buf, "h_%016llx", static_cast<unsigned long long>(fnv1a(identity)));
  return buf;
}

std::string to_pnml(const Module& m) {
  NetView net;
  try {
    net = validate_net(m);
  } catch (const Error& e) {
    throw Error(ErrorCode::not_a_net, e.what());
  }

  std::map<NodeId, std::string> ids;
  std::set<std::string> taken;
  for (const auto& [id, _] : m.nodes()) {
    std::string candidate = pnml_id(id);
    for (int k = 2; taken.contains(candidate); ++k) candidate = pnml_id(id) + "_" + std::to_string(k);
    taken.insert(candidate);
    ids.emplace(id, candidate);
  }

  std::ostringstream out;
  auto tool = [&](const NodeId& id, const char* indent) {
    out << indent << "<toolspecific tool=\"heraklit\" version=\"1\"><identity>"
        << xml_escape(id.str()) << "</identity></toolspecific>\n";
  };
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n";
  out << "  <net id=\"net\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
  if (m.name()) out << "    <name><text>" << xml_escape(*m.name()) << "</text></name>\n";
  out << "    <page id=\"page\">\n";
  for (const auto& p : net.places) {
    out << "      <place id=\"" << ids.at(p) << "\">\n";
    out << "        <name><text>" << xml_escape(m.label(p)) << "</text></name>\n";
    if (auto t = m.tokens(p); t > 0)
      out << "        <initialMarking><text>" << t << "</text></initialMarking>\n";
    tool(p, "        ");
    out << "      </place>\n";
  }
  for (const auto& t : net.transitions) {
    out << "      <transition id=\"" << ids.at(t) << "\">\n";
    out << "        <name><text>" << xml_escape(m.label(t)) << "</text></name>\n";
    tool(t, "        ");
    out << "      </transition>\n";
  }
  std::size_t arc = 0;
  for (const auto& [from, to] : net.flow) {
    out << "      <arc id=\"a" << ++arc << "\" source=\"" << ids.at(from) << "\" target=\""
        << ids.at(to) << "\"/>\n";
  }
  out << "    </page>\n";
  out << "    <toolspecific tool=\"heraklit\" version=\"1\">\n";
  for (Side side : {Side::left, Side::right}) {
    out << "      <interface side=\"" << (side == Side::left ? "left" : "right") << "\">\n";
    for (const auto& s : m.slots(side)) {
      out << "        <slot ref=\"" << ids.at(s.node) << "\" label=\"" << xml_escape(s.label)
          << "\" index=\"" << s.index << "\"/>\n";
    }
    out << "      </interface>\n";
  }
  out << "    </toolspecific>\n";
  out << "  </net>\n";
  out << "</pnml>\n";
  return out.str();
}

// --- Canonical dump ---------------------------------------------------------

using nlohmann::json;

std::string dump(const Module& m) {
  std::map<NodeId, std::size_t> position;
  json nodes = json::array();
  for (const auto& [id, info] : m.nodes()) {
    position.emplace(id, position.size());
    json atoms = json::array();
    for (const auto& a : id.atoms()) atoms.push_back(json::array({a.name, a.instance}));
    nodes.push_back({{"atoms", atoms},
                     {"label", info.label},
                     {"kind", std::string(to_string(info.kind))},
                     {"tokens", m.tokens(id)}});
  }
  json edges = json::array();
  for (const auto& [from, to] : m.edges())
    edges.push_back(json::array({position.at(from), position.at(to)}));
  auto slots = [&](Side side) {
    json out = json::array();
    for (const auto& s : m.slots(side))
      out.push_back({{"node", position.at(s.node)}, {"label", s.label}, {"index", s.index}});
    return out;
  };
  json doc = {{"format", "heraklit-module/1"},
              {"name", m.name() ? json(*m.name()) : json(nullptr)},
              {"nodes", nodes},
              {"edges", edges},
              {"left", slots(Side::left)},
              {"right", slots(Side::right)}};
  return doc.dump(2) + "\n";
}

Module load(std::string_view text) {
  auto fail = [](const std::string& msg) -> Error { return Error(ErrorCode::parse_error, msg); };
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw fail(e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != "heraklit-module/1")
      throw fail("not a heraklit-module/1 document");

    std::vector<NodeId> ids;
    std::map<NodeId, NodeInfo> nodes;
    Marking marking;
    for (const auto& n : doc.at("nodes")) {
      std::vector<AtomicNodeId> atoms;
      for (const auto& a : n.at("atoms")) {
        if (!a.is_array() || a.size() != 2) throw fail("atom must be [name, instance]");
        atoms.push_back({a[1].get<std::uint64_t>(), a[0].get<std::string>()});
      }
      if (atoms.empty()) throw fail("node without atoms");
      NodeId id(std::move(atoms));
      const auto kind_text = n.at("kind").get<std::string>();
      NodeKind kind;
      if (kind_text == "place") kind = NodeKind::place;
      else if (kind_text == "transition") kind = NodeKind::transition;
      else if (kind_text == "abstract") kind = NodeKind::abstract;
      else throw fail("unknown node kind '" + kind_text + "'");
      if (!nodes.emplace(id, NodeInfo{n.at("label").get<std::string>(), kind}).second)
        throw fail("node " + id.str() + " listed twice");
      if (auto t = n.at("tokens").get<std::uint32_t>(); t > 0) marking.emplace(id, t);
      ids.push_back(std::move(id));
    }
    auto node_at = [&](const json& j) -> const NodeId& {
      const auto i = j.get<std::size_t>();
      if (i >= ids.size()) throw fail("node position " + std::to_string(i) + " out of range");
      return ids[i];
    };
    std::set<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw fail("edge must be [from, to]");
      edges.emplace(node_at(e[0]), node_at(e[1]));
    }
    auto slots = [&](const char* key) {
      Interface out;
      std::map<std::string, std::size_t> seen;
      for (const auto& s : doc.at(key)) {
        const NodeId& id = node_at(s.at("node"));
        const auto label = s.at("label").get<std::string>();
        if (nodes.at(id).label != label) throw fail(std::string(key) + " slot label mismatch");
        if (s.at("index").get<std::size_t>() != ++seen[label])
          throw fail(std::string(key) + " slot index out of sequence for '" + label + "'");
        out.push_back(id);
      }
      return out;
    };
    Interface left = slots("left");
    Interface right = slots("right");
    std::optional<std::string> name;
    if (doc.contains("name") && !doc.at("name").is_null()) name = doc.at("name").get<std::string>();
    return Module(std::move(nodes), std::move(edges), std::move(left), std::move(right),
                  std::move(marking), std::move(name));
  } catch (const json::exception& e) {
    throw fail(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) throw;
    throw fail(e.what());
  }
}

}  // namespace heraklit
