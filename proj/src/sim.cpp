#include "heraklit/sim.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>

namespace heraklit::sim {

namespace {

struct Connectivity {
  std::vector<NodeId> transitions;
  std::vector<std::vector<NodeId>> pre;
  std::vector<std::vector<NodeId>> post;

  explicit Connectivity(const NetView& net) {
    std::map<NodeId, std::size_t> pos;
    for (const auto& t : net.transitions) {
      pos.emplace(t, transitions.size());
      transitions.push_back(t);
    }
    pre.resize(transitions.size());
    post.resize(transitions.size());
    for (const auto& [from, to] : net.flow) {
      if (auto it = pos.find(to); it != pos.end()) pre[it->second].push_back(from);
      if (auto it = pos.find(from); it != pos.end()) post[it->second].push_back(to);
    }
  }

  bool enabled(std::size_t i, const Marking& m) const {
    return std::all_of(pre[i].begin(), pre[i].end(), [&](const NodeId& p) {
      auto it = m.find(p);
      return it != m.end() && it->second > 0;
    });
  }

  Marking fire(std::size_t i, Marking m) const {
    for (const auto& p : pre[i]) {
      if (--m[p] == 0) m.erase(p);
    }
    for (const auto& p : post[i]) ++m[p];
    return m;
  }
};

}  // namespace

std::vector<NodeId> enabled(const NetView& net, const Marking& m) {
  const Connectivity c(net);
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < c.transitions.size(); ++i) {
    if (c.enabled(i, m)) out.push_back(c.transitions[i]);
  }
  return out;
}

bool is_enabled(const NetView& net, const Marking& m, const NodeId& t) {
  if (!net.transitions.contains(t)) return false;
  for (const auto& p : net.preset(t)) {
    auto it = m.find(p);
    if (it == m.end() || it->second == 0) return false;
  }
  return true;
}

Marking fire(const NetView& net, const Marking& m, const NodeId& t) {
  if (!is_enabled(net, m, t)) throw Error(ErrorCode::not_enabled, t.str() + " is not enabled");
  Marking out = m;
  for (const auto& p : net.preset(t)) {
    if (--out[p] == 0) out.erase(p);
  }
  for (const auto& p : net.postset(t)) ++out[p];
  return out;
}

std::size_t ReachGraph::find(const Marking& m) const {
  auto it = std::find(vertices.begin(), vertices.end(), m);
  return it == vertices.end() ? npos : static_cast<std::size_t>(it - vertices.begin());
}

std::vector<NodeId> ReachGraph::path_to(std::size_t v) const {
  std::vector<NodeId> path;
  while (v < parent_arc.size() && parent_arc[v] != npos) {
    const auto& arc = arcs[parent_arc[v]];
    path.push_back(arc.transition);
    v = arc.from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ReachGraph reachability(const NetView& net, const Marking& m0, ReachCaps caps) {
  const Connectivity c(net);
  ReachGraph g;
  std::map<Marking, std::size_t> index;
  Marking root;
  for (const auto& [p, n] : m0) {
    if (n > 0) root.emplace(p, n);
  }
  g.vertices.push_back(root);
  g.parent_arc.push_back(ReachGraph::npos);
  index.emplace(root, 0);

  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < c.transitions.size(); ++i) {
      if (!c.enabled(i, g.vertices[v])) continue;
      Marking next = c.fire(i, g.vertices[v]);
      auto it = index.find(next);
      if (it == index.end()) {
        const bool over_tokens = std::any_of(next.begin(), next.end(), [&](const auto& kv) {
          return kv.second > caps.max_tokens_per_place;
        });
        if (over_tokens || g.vertices.size() >= caps.max_markings) {
          g.truncated = true;
          continue;
        }
        it = index.emplace(next, g.vertices.size()).first;
        g.vertices.push_back(std::move(next));
        g.parent_arc.push_back(g.arcs.size());
        queue.push_back(it->second);
      }
      g.arcs.push_back({v, c.transitions[i], it->second});
    }
  }
  return g;
}

InvariantResult check_invariant(const ReachGraph& g, const MarkingPredicate& holds) {
  InvariantResult result;
  result.exhaustive = !g.truncated;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!holds(g.vertices[v])) {
      result.counterexample = Counterexample{g.vertices[v], g.path_to(v)};
      break;
    }
  }
  return result;
}

bool root_is_home_state(const ReachGraph& g) {
  if (g.vertices.empty()) return true;
  std::vector<std::vector<std::size_t>> back(g.vertices.size());
  for (const auto& arc : g.arcs) back[arc.to].push_back(arc.from);
  std::vector<char> seen(g.vertices.size(), 0);
  std::deque<std::size_t> queue{g.root};
  seen[g.root] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto u : back[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        queue.push_back(u);
      }
    }
  }
  return count == g.vertices.size();
}

// --- Predicates -------------------------------------------------------------

namespace {

using Value = std::function<long long(const Marking&)>;

class PredicateParser {
 public:
  PredicateParser(std::string_view text, const NetView& net) : text_(text) {
    for (const auto& p : net.places) by_label_[net.labels.count(p) ? net.labels.at(p) : p.str()].push_back(p);
  }

  MarkingPredicate parse() {
    auto p = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::parse_error, "predicate column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  std::string word() {
    skip_space();
    std::size_t j = pos_;
    while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
    std::string w(text_.substr(pos_, j - pos_));
    pos_ = j;
    return w;
  }

  MarkingPredicate parse_or() {
    auto lhs = parse_and();
    while (accept("||")) {
      auto rhs = parse_and();
      lhs = [lhs, rhs](const Marking& m) { return lhs(m) || rhs(m); };
    }
    return lhs;
  }

  MarkingPredicate parse_and() {
    auto lhs = parse_unary();
    while (accept("&&")) {
      auto rhs = parse_unary();
      lhs = [lhs, rhs](const Marking& m) { return lhs(m) && rhs(m); };
    }
    return lhs;
  }

  MarkingPredicate parse_unary() {
    if (accept("!") ) {
      if (text_.substr(pos_, 1) == "=") fail("unexpected '!='");
      auto inner = parse_unary();
      return [inner](const Marking& m) { return !inner(m); };
    }
    // A parenthesis opens either a predicate or an arithmetic sum; try the
    // predicate reading first.
    skip_space();
    if (text_.substr(pos_, 1) == "(") {
      const std::size_t save = pos_;
      ++pos_;
      try {
        auto inner = parse_or();
        if (accept(")")) {
          skip_space();
          if (!starts_comparison()) return inner;
        }
      } catch (const Error&) {
      }
      pos_ = save;
    }
    return parse_comparison();
  }

  bool starts_comparison() const {
    for (std::string_view op : {"<", ">", "==", "!=", "+", "-"}) {
      if (text_.substr(pos_, op.size()) == op) return true;
    }
    return false;
  }

  MarkingPredicate parse_comparison() {
    auto lhs = parse_sum();
    skip_space();
    for (std::string_view op : {"<=", ">=", "==", "!=", "<", ">"}) {
      if (!accept(op)) continue;
      auto rhs = parse_sum();
      if (op == "<=") return [lhs, rhs](const Marking& m) { return lhs(m) <= rhs(m); };
      if (op == ">=") return [lhs, rhs](const Marking& m) { return lhs(m) >= rhs(m); };
      if (op == "==") return [lhs, rhs](const Marking& m) { return lhs(m) == rhs(m); };
      if (op == "!=") return [lhs, rhs](const Marking& m) { return lhs(m) != rhs(m); };
      if (op == "<") return [lhs, rhs](const Marking& m) { return lhs(m) < rhs(m); };
      return [lhs, rhs](const Marking& m) { return lhs(m) > rhs(m); };
    }
    fail("expected a comparison operator");
  }

  Value parse_sum() {
    Value lhs = parse_term();
    for (;;) {
      if (accept("+")) {
        Value rhs = parse_term();
        lhs = [lhs, rhs](const Marking& m) { return lhs(m) + rhs(m); };
      } else if (accept("-")) {
        Value rhs = parse_term();
        lhs = [lhs, rhs](const Marking& m) { return lhs(m) - rhs(m); };
      } else {
        return lhs;
      }
    }
  }

  Value parse_term() {
    skip_space();
    if (accept("(")) {
      Value inner = parse_sum();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const long long n = std::stoll(word());
      return [n](const Marking&) { return n; };
    }
    const std::string w = word();
    if (w.empty()) fail("expected a number or a place label");
    if ((w == "max" || w == "min") && accept("(")) {
      const auto places = places_of(word());
      if (!accept(")")) fail("expected ')'");
      const bool want_max = w == "max";
      return [places, want_max](const Marking& m) {
        long long best = want_max ? 0 : -1;
        for (const auto& p : places) {
          auto it = m.find(p);
          const long long n = it == m.end() ? 0 : it->second;
          best = best < 0 ? n : (want_max ? std::max(best, n) : std::min(best, n));
        }
        return best < 0 ? 0 : best;
      };
    }
    const auto places = places_of(w);
    return [places](const Marking& m) {
      long long sum = 0;
      for (const auto& p : places) {
        auto it = m.find(p);
        if (it != m.end()) sum += it->second;
      }
      return sum;
    };
  }

  std::vector<NodeId> places_of(const std::string& label) {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) fail("no place is labelled '" + label + "'");
    return it->second;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::vector<NodeId>> by_label_;
};

}  // namespace

MarkingPredicate parse_predicate(std::string_view text, const NetView& net) {
  return PredicateParser(text, net).parse();
}

}  // namespace heraklit::sim
