#include "heraklit/iso.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

namespace heraklit {

bool structural_equal(const Module& a, const Module& b) {
  return a.nodes() == b.nodes() && a.edges() == b.edges() && a.left() == b.left() &&
         a.right() == b.right() && a.marking() == b.marking();
}

namespace {

// Dense view of one module for the search.
struct Graph {
  std::vector<NodeId> ids;
  std::map<NodeId, int> index;
  std::vector<NodeKind> kind;
  std::vector<std::string> label;
  std::vector<std::uint32_t> tokens;
  std::vector<std::size_t> left_index;   // 0 = not in left interface
  std::vector<std::size_t> right_index;  // 0 = not in right interface
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;
  std::vector<std::uint8_t> adj;  // n*n

  explicit Graph(const Module& m) {
    for (const auto& [id, info] : m.nodes()) {
      index.emplace(id, static_cast<int>(ids.size()));
      ids.push_back(id);
      kind.push_back(info.kind);
      label.push_back(info.label);
      tokens.push_back(m.tokens(id));
    }
    const std::size_t n = ids.size();
    left_index.assign(n, 0);
    right_index.assign(n, 0);
    for (const auto& s : m.slots(Side::left)) left_index[index.at(s.node)] = s.index;
    for (const auto& s : m.slots(Side::right)) right_index[index.at(s.node)] = s.index;
    out.resize(n);
    in.resize(n);
    adj.assign(n * n, 0);
    for (const auto& [from, to] : m.edges()) {
      const int u = index.at(from);
      const int v = index.at(to);
      out[u].push_back(v);
      in[v].push_back(u);
      adj[u * n + v] = 1;
    }
  }

  std::size_t size() const { return ids.size(); }
  bool edge(int u, int v) const { return adj[u * size() + v] != 0; }
};

// Colour refinement over both graphs with one shared palette, so equal
// colours mean equal roles across the two graphs.
void refine(const Graph& a, const Graph& b, bool rename, std::vector<int>& ca,
            std::vector<int>& cb) {
  using Key0 = std::tuple<int, std::string, std::uint32_t, std::size_t, std::size_t, std::size_t,
                          std::size_t>;
  std::map<Key0, int> palette0;
  auto initial = [&](const Graph& g, std::vector<int>& c) {
    c.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const bool wildcard = rename && g.kind[i] == NodeKind::abstract;
      Key0 key{static_cast<int>(g.kind[i]), wildcard ? std::string() : g.label[i], g.tokens[i],
               g.left_index[i], g.right_index[i], g.out[i].size(), g.in[i].size()};
      c[i] = palette0.try_emplace(key, static_cast<int>(palette0.size())).first->second;
    }
  };
  initial(a, ca);
  initial(b, cb);

  std::size_t classes = palette0.size();
  for (std::size_t round = 0; round < a.size() + b.size(); ++round) {
    using Key = std::tuple<int, std::vector<int>, std::vector<int>>;
    std::map<Key, int> palette;
    auto step = [&](const Graph& g, const std::vector<int>& c) {
      std::vector<int> next(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<int> outs, ins;
        for (int v : g.out[i]) outs.push_back(c[v]);
        for (int v : g.in[i]) ins.push_back(c[v]);
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        Key key{c[i], std::move(outs), std::move(ins)};
        next[i] = palette.try_emplace(std::move(key), static_cast<int>(palette.size())).first->second;
      }
      return next;
    };
    auto na = step(a, ca);
    auto nb = step(b, cb);
    ca = std::move(na);
    cb = std::move(nb);
    if (palette.size() == classes) break;
    classes = palette.size();
  }
}

class Matcher {
 public:
  Matcher(const Graph& a, const Graph& b, const IsoOptions& opts) : a_(a), b_(b), opts_(opts) {}

  std::optional<std::vector<int>> run() {
    if (a_.size() != b_.size()) return std::nullopt;
    refine(a_, b_, opts_.rename_abstract_cores, ca_, cb_);
    {
      auto ha = ca_, hb = cb_;
      std::sort(ha.begin(), ha.end());
      std::sort(hb.begin(), hb.end());
      if (ha != hb) return std::nullopt;
    }
    for (std::size_t i = 0; i < b_.size(); ++i) by_colour_[cb_[i]].push_back(static_cast<int>(i));
    build_order();
    map_.assign(a_.size(), -1);
    used_.assign(b_.size(), 0);
    if (!extend(0)) return std::nullopt;
    return map_;
  }

 private:
  // Most constrained first: prefer nodes adjacent to already ordered ones,
  // then rare colours.
  void build_order() {
    const std::size_t n = a_.size();
    std::vector<int> placed_neighbours(n, 0);
    std::vector<char> placed(n, 0);
    std::map<int, std::size_t> class_size;
    for (int c : cb_) ++class_size[c];
    for (std::size_t step = 0; step < n; ++step) {
      int best = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (placed[i]) continue;
        if (best < 0) {
          best = static_cast<int>(i);
          continue;
        }
        auto score = [&](int v) {
          return std::make_tuple(-placed_neighbours[v], class_size[ca_[v]], v);
        };
        if (score(static_cast<int>(i)) < score(best)) best = static_cast<int>(i);
      }
      placed[best] = 1;
      order_.push_back(best);
      for (int v : a_.out[best]) ++placed_neighbours[v];
      for (int v : a_.in[best]) ++placed_neighbours[v];
    }
  }

  bool labels_compatible(int x, int y) {
    if (a_.kind[x] != NodeKind::abstract || !opts_.rename_abstract_cores)
      return a_.label[x] == b_.label[y];
    auto fwd = forward_.find(a_.label[x]);
    if (fwd != forward_.end()) return fwd->second.first == b_.label[y];
    return !backward_.contains(b_.label[y]);
  }

  void bind_label(int x, int y) {
    if (a_.kind[x] != NodeKind::abstract || !opts_.rename_abstract_cores) return;
    auto [it, fresh] = forward_.try_emplace(a_.label[x], b_.label[y], 0);
    ++it->second.second;
    if (fresh) backward_.insert(b_.label[y]);
  }

  void unbind_label(int x) {
    if (a_.kind[x] != NodeKind::abstract || !opts_.rename_abstract_cores) return;
    auto it = forward_.find(a_.label[x]);
    if (--it->second.second == 0) {
      backward_.erase(it->second.first);
      forward_.erase(it);
    }
  }

  bool feasible(int x, int y) {
    if (used_[y] || ca_[x] != cb_[y]) return false;
    if (!labels_compatible(x, y)) return false;
    if (a_.edge(x, x) != b_.edge(y, y)) return false;
    for (std::size_t k = 0; k < depth_; ++k) {
      const int z = order_[k];
      const int fz = map_[z];
      if (a_.edge(x, z) != b_.edge(y, fz) || a_.edge(z, x) != b_.edge(fz, y)) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    if (++steps_ > opts_.budget)
      throw Error(ErrorCode::search_budget_exceeded,
                  "isomorphism search gave up after " + std::to_string(opts_.budget) + " steps");
    const int x = order_[depth];
    depth_ = depth;

    // Candidates: neighbours of an already mapped neighbour's image, else the
    // whole colour class.
    std::vector<int> candidates;
    int anchor = -1;
    bool anchor_out = false;
    for (int v : a_.in[x]) {
      if (map_[v] >= 0) {
        anchor = v;
        anchor_out = true;
        break;
      }
    }
    if (anchor < 0) {
      for (int v : a_.out[x]) {
        if (map_[v] >= 0) {
          anchor = v;
          break;
        }
      }
    }
    if (anchor >= 0) {
      candidates = anchor_out ? b_.out[map_[anchor]] : b_.in[map_[anchor]];
    } else {
      candidates = by_colour_[ca_[x]];
    }

    for (int y : candidates) {
      depth_ = depth;
      if (!feasible(x, y)) continue;
      map_[x] = y;
      used_[y] = 1;
      bind_label(x, y);
      if (extend(depth + 1)) return true;
      unbind_label(x);
      used_[y] = 0;
      map_[x] = -1;
    }
    return false;
  }

  const Graph& a_;
  const Graph& b_;
  const IsoOptions& opts_;
  std::vector<int> ca_, cb_;
  std::map<int, std::vector<int>> by_colour_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<char> used_;
  std::size_t depth_ = 0;
  std::uint64_t steps_ = 0;
  std::map<std::string, std::pair<std::string, int>> forward_;
  std::set<std::string> backward_;
};

}  // namespace

std::optional<IsoWitness> isomorphic(const Module& a, const Module& b, IsoOptions opts) {
  if (opts.require_identical_atoms) {
    if (!structural_equal(a, b)) return std::nullopt;
    IsoWitness w;
    for (const auto& [id, _] : a.nodes()) w.mapping.emplace(id, id);
    return w;
  }
  if (a.nodes().size() != b.nodes().size() || a.edges().size() != b.edges().size() ||
      a.left().size() != b.left().size() || a.right().size() != b.right().size())
    return std::nullopt;

  const Graph ga(a);
  const Graph gb(b);
  Matcher matcher(ga, gb, opts);
  auto map = matcher.run();
  if (!map) return std::nullopt;
  IsoWitness w;
  for (std::size_t i = 0; i < ga.size(); ++i) w.mapping.emplace(ga.ids[i], gb.ids[(*map)[i]]);
  return w;
}

std::optional<std::string> check_witness(const Module& a, const Module& b, const IsoWitness& w,
                                         const IsoOptions& opts) {
  if (w.mapping.size() != a.nodes().size() || a.nodes().size() != b.nodes().size())
    return "mapping does not cover every node";
  std::set<NodeId> image;
  std::map<std::string, std::string> rename;
  std::map<std::string, std::string> rename_back;
  for (const auto& [x, y] : w.mapping) {
    if (!a.contains(x) || !b.contains(y)) return "mapping leaves the node sets: " + x.str();
    if (!image.insert(y).second) return "mapping is not injective at " + y.str();
    const auto& ix = a.info(x);
    const auto& iy = b.info(y);
    if (ix.kind != iy.kind) return "kind differs at " + x.str();
    if (ix.kind == NodeKind::abstract && opts.rename_abstract_cores) {
      auto [f, fresh_f] = rename.try_emplace(ix.label, iy.label);
      auto [g, fresh_g] = rename_back.try_emplace(iy.label, ix.label);
      if (f->second != iy.label || g->second != ix.label)
        return "core renaming is not a bijection at " + x.str();
    } else if (ix.label != iy.label) {
      return "label differs at " + x.str();
    }
    if (a.tokens(x) != b.tokens(y)) return "marking differs at " + x.str();
  }
  for (const auto& [from, to] : a.edges()) {
    if (!b.edges().contains({w.mapping.at(from), w.mapping.at(to)}))
      return "edge " + from.str() + " -> " + to.str() + " is not preserved";
  }
  if (a.edges().size() != b.edges().size()) return "edge counts differ";
  for (Side side : {Side::left, Side::right}) {
    std::set<std::pair<NodeId, std::size_t>> mapped, expected;
    for (const auto& s : a.slots(side)) mapped.emplace(w.mapping.at(s.node), s.index);
    for (const auto& s : b.slots(side)) expected.emplace(s.node, s.index);
    if (mapped != expected)
      return std::string(side == Side::left ? "left" : "right") + " interface is not preserved";
  }
  return std::nullopt;
}

}  // namespace heraklit
