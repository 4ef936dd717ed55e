#include "heraklit/calculus.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace heraklit {

namespace {

// label -> slots carrying it, in interface order
std::map<std::string, std::vector<NodeId>> group_by_label(std::span<const NodeId> slots,
                                                          const LabelOf& label_of) {
  std::map<std::string, std::vector<NodeId>> out;
  for (const auto& id : slots) out[label_of(id)].push_back(id);
  return out;
}

// label-and-index matching shared by compose and closure; no disjointness check
std::vector<HarmonicPair> match_slots(std::span<const NodeId> r, std::span<const NodeId> s,
                                      const LabelOf& label_of) {
  auto rs = group_by_label(r, label_of);
  auto ss = group_by_label(s, label_of);
  std::vector<HarmonicPair> out;
  for (const auto& [label, r_nodes] : rs) {
    auto it = ss.find(label);
    if (it == ss.end()) continue;
    const std::size_t m = std::min(r_nodes.size(), it->second.size());
    for (std::size_t i = 0; i < m; ++i) out.push_back({r_nodes[i], it->second[i], label, i + 1});
  }
  return out;
}

Marking rename_marking(const Module& m, const std::map<NodeId, NodeId>& rename, Marking into) {
  for (const auto& [id, count] : m.marking()) {
    auto it = rename.find(id);
    into[it == rename.end() ? id : it->second] += count;
  }
  return into;
}

const NodeId& renamed(const std::map<NodeId, NodeId>& rename, const NodeId& id) {
  auto it = rename.find(id);
  return it == rename.end() ? id : it->second;
}

// Disjoint-set forest over the interface nodes touched by closure pairs.
class MergeClasses {
 public:
  void unite(const NodeId& a, const NodeId& b) {
    const NodeId ra = find(a);
    const NodeId rb = find(b);
    if (ra != rb) parent_.insert_or_assign(rb, ra);
  }

  NodeId find(const NodeId& x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) {
      parent_.emplace(x, x);
      return x;
    }
    if (it->second == x) return x;
    NodeId root = find(it->second);
    parent_.insert_or_assign(x, root);
    return root;
  }

  // member -> merged identity (atom-set union of its class)
  std::map<NodeId, NodeId> merged_ids() {
    std::map<NodeId, std::vector<NodeId>> classes;
    std::vector<NodeId> members;
    for (const auto& [x, _] : parent_) members.push_back(x);
    for (const auto& x : members) classes[find(x)].push_back(x);
    std::map<NodeId, NodeId> out;
    for (const auto& [_, cls] : classes) {
      NodeId merged = cls.front();
      for (const auto& x : cls) merged = NodeId::merge(merged, x);
      for (const auto& x : cls) out.emplace(x, merged);
    }
    return out;
  }

 private:
  std::map<NodeId, NodeId> parent_;
};

}  // namespace

std::vector<HarmonicPair> harmonic_pairs(std::span<const NodeId> r, std::span<const NodeId> s,
                                         const LabelOf& label_of) {
  std::set<NodeId> r_set(r.begin(), r.end());
  for (const auto& id : s) {
    if (r_set.contains(id))
      throw Error(ErrorCode::non_disjoint_interfaces, "node " + id.str() + " is in both interfaces");
  }
  return match_slots(r, s, label_of);
}

Module compose(const Module& a, const Module& b) {
  const auto a_atoms = a.atoms();
  for (const auto& [id, _] : b.nodes()) {
    for (const auto& atom : id.atoms()) {
      if (a_atoms.contains(atom))
        throw Error(ErrorCode::non_disjoint_operands,
                    "operands share atom " + atom.name + "@" + std::to_string(atom.instance));
    }
  }

  const LabelOf label_of = [&](const NodeId& id) -> const std::string& {
    return a.contains(id) ? a.label(id) : b.label(id);
  };
  const auto pairs = harmonic_pairs(a.right(), b.left(), label_of);

  std::map<NodeId, NodeId> rename;
  std::set<NodeId> matched_a;  // from A's right interface
  std::set<NodeId> matched_b;  // from B's left interface
  for (const auto& p : pairs) {
    const auto& ka = a.info(p.left_elem).kind;
    const auto& kb = b.info(p.right_elem).kind;
    if (ka != kb)
      throw Error(ErrorCode::kind_mismatch, "harmonic pair " + p.left_elem.str() + " / " +
                                                p.right_elem.str() + " mixes " +
                                                std::string(to_string(ka)) + " and " +
                                                std::string(to_string(kb)));
    const NodeId merged = NodeId::merge(p.left_elem, p.right_elem);
    rename.emplace(p.left_elem, merged);
    rename.emplace(p.right_elem, merged);
    matched_a.insert(p.left_elem);
    matched_b.insert(p.right_elem);
  }

  std::map<NodeId, NodeInfo> nodes;
  std::set<Edge> edges;
  for (const Module* m : {&a, &b}) {
    for (const auto& [id, info] : m->nodes()) nodes.emplace(renamed(rename, id), info);
    for (const auto& [from, to] : m->edges())
      edges.emplace(renamed(rename, from), renamed(rename, to));
  }

  Interface left;
  left.reserve(a.left().size() + b.left().size());
  for (const auto& id : a.left()) left.push_back(renamed(rename, id));
  for (const auto& id : b.left()) {
    if (!matched_b.contains(id)) left.push_back(id);
  }

  Interface right;
  right.reserve(a.right().size() + b.right().size());
  for (const auto& id : b.right()) right.push_back(renamed(rename, id));
  for (const auto& id : a.right()) {
    if (!matched_a.contains(id)) right.push_back(renamed(rename, id));
  }

  Marking marking = rename_marking(b, rename, rename_marking(a, rename, {}));
  return Module(std::move(nodes), std::move(edges), std::move(left), std::move(right),
                std::move(marking));
}

Module closure(const Module& a) {
  const LabelOf label_of = [&](const NodeId& id) -> const std::string& { return a.label(id); };
  const auto pairs = match_slots(a.right(), a.left(), label_of);
  if (pairs.empty()) return a.with_name(std::nullopt);

  MergeClasses classes;
  std::set<NodeId> paired_right;
  std::set<NodeId> paired_left;
  for (const auto& p : pairs) {
    if (a.info(p.left_elem).kind != a.info(p.right_elem).kind)
      throw Error(ErrorCode::kind_mismatch,
                  "closure pair " + p.left_elem.str() + " / " + p.right_elem.str());
    classes.unite(p.left_elem, p.right_elem);
    paired_right.insert(p.left_elem);
    paired_left.insert(p.right_elem);
  }
  const auto rename = classes.merged_ids();

  std::map<NodeId, NodeInfo> nodes;
  for (const auto& [id, info] : a.nodes()) nodes.emplace(renamed(rename, id), info);
  std::set<Edge> edges;
  for (const auto& [from, to] : a.edges()) edges.emplace(renamed(rename, from), renamed(rename, to));

  // Leftovers keep their relative order, hence index n - m.
  Interface left;
  for (const auto& id : a.left()) {
    if (!paired_left.contains(id)) left.push_back(renamed(rename, id));
  }
  Interface right;
  for (const auto& id : a.right()) {
    if (!paired_right.contains(id)) right.push_back(renamed(rename, id));
  }
  return Module(std::move(nodes), std::move(edges), std::move(left), std::move(right),
                rename_marking(a, rename, {}));
}

Module abstract_of(const Module& a) {
  if (!a.name()) throw Error(ErrorCode::unnamed_module, "abstraction needs a module name");
  const std::string& name = *a.name();

  // The core takes the smallest instance tag of A, so equal inputs give equal
  // outputs; primes disambiguate against the interface atoms it sits beside.
  std::uint64_t instance = 0;
  if (!a.empty()) instance = a.nodes().begin()->first.atoms().front().instance;
  for (const auto& [id, _] : a.nodes())
    instance = std::min(instance, id.atoms().front().instance);

  std::set<AtomicNodeId> boundary_atoms;
  for (Side side : {Side::left, Side::right}) {
    for (const auto& id : a.interface(side))
      boundary_atoms.insert(id.atoms().begin(), id.atoms().end());
  }
  AtomicNodeId core_atom{instance, "[" + name + "]"};
  while (boundary_atoms.contains(core_atom)) core_atom.name += '\'';
  const NodeId core(core_atom);

  std::map<NodeId, NodeInfo> nodes;
  nodes.emplace(core, NodeInfo{name, NodeKind::abstract});
  Marking marking;
  std::set<Edge> edges;
  for (const auto& id : a.left()) {
    nodes.emplace(id, a.info(id));
    edges.emplace(id, core);
  }
  for (const auto& id : a.right()) {
    nodes.emplace(id, a.info(id));
    edges.emplace(core, id);
  }
  for (const auto& [id, _] : nodes) {
    if (auto t = a.tokens(id); t > 0) marking.emplace(id, t);
  }
  return Module(std::move(nodes), std::move(edges), a.left(), a.right(), std::move(marking), name);
}

Module empty_module() { return Module(); }

bool is_monolithic(const Module& a) {
  return std::set<NodeId>(a.left().begin(), a.left().end()) ==
         std::set<NodeId>(a.right().begin(), a.right().end());
}

Module compose_all(std::span<const Module> parts) {
  Module acc = empty_module();
  for (const auto& part : parts) acc = compose(acc, part);
  return acc;
}

Module seam(std::span<const Module> parts) {
  Module acc = empty_module();
  for (const auto& part : parts) acc = compose(acc, abstract_of(part));
  return acc;
}

}  // namespace heraklit
