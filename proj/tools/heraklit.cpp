// heraklit: command-line front end for .hkl module files.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "heraklit/calculus.hpp"
#include "heraklit/dsl.hpp"
#include "heraklit/export.hpp"
#include "heraklit/iso.hpp"
#include "heraklit/net.hpp"
#include "heraklit/properties.hpp"
#include "heraklit/sim.hpp"

using namespace heraklit;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

// Errors about the input itself rather than about what the input describes.
bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::syntax_error:
    case ErrorCode::duplicate_name:
    case ErrorCode::unknown_label:
    case ErrorCode::recursive_definition:
    case ErrorCode::unbound_name:
    case ErrorCode::parse_error:
      return true;
    default:
      return false;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error writing " + path);
}

Module load_binding(const std::string& file, const std::string& name) {
  const auto env = dsl::parse_file(file);
  return dsl::Evaluator(env).eval_name(name);
}

std::string marking_str(const NetView& net, const Marking& m) {
  std::string s = "{";
  bool first = true;
  for (const auto& [p, n] : m) {
    if (n == 0) continue;
    if (!first) s += ", ";
    first = false;
    s += net.labels.at(p) + "(" + p.str() + ")";
    if (n > 1) s += "x" + std::to_string(n);
  }
  return s + "}";
}

int cmd_eval(const std::string& file, const std::string& name) {
  std::cout << dump(load_binding(file, name));
  return kOk;
}

int cmd_render(const std::string& file, const std::string& name, const std::string& out) {
  const auto dot = to_dot(load_binding(file, name));
  if (out == "-") std::cout << dot;
  else write_file(out, dot);
  return kOk;
}

int cmd_pnml(const std::string& file, const std::string& name, const std::string& out) {
  const auto xml = to_pnml(load_binding(file, name));
  if (out == "-") std::cout << xml;
  else write_file(out, xml);
  return kOk;
}

int cmd_dump(const std::string& file, const std::string& name, const std::string& out) {
  const auto text = dump(load_binding(file, name));
  if (out.empty() || out == "-") std::cout << text;
  else write_file(out, text);
  return kOk;
}

int cmd_iso(const std::string& file, const std::string& n1, const std::string& n2, bool rename) {
  const auto env = dsl::parse_file(file);
  dsl::Evaluator ev(env);
  const Module a = ev.eval_name(n1);
  const Module b = ev.eval_name(n2);
  IsoOptions opts;
  opts.rename_abstract_cores = rename;
  const auto w = isomorphic(a, b, opts);
  if (!w) {
    std::cout << "NOT-ISOMORPHIC\n";
    return kFailed;
  }
  std::cout << "ISOMORPHIC " << w->mapping.size() << " nodes\n";
  for (const auto& [x, y] : w->mapping) std::cout << x.str() << " -> " << y.str() << '\n';
  return kOk;
}

int cmd_factorize(const std::string& file, const std::string& name) {
  const NetView net = validate_net(load_binding(file, name));
  const auto f = factorize(net);
  std::cout << f.atoms.size() << " atoms\n";
  auto t = net.transitions.begin();
  for (const auto& atom : f.atoms) {
    std::cout << "  [" << net.labels.at(*t) << " " << t->str() << "] " << atom.nodes().size()
              << " nodes, " << atom.left().size() << " interface places\n";
    ++t;
  }
  std::cout << "recomposition " << (f.isomorphic_to_net ? "isomorphic" : "NOT isomorphic")
            << " to the net\n";
  return f.isomorphic_to_net ? kOk : kFailed;
}

int cmd_reach(const std::string& file, const std::string& name, std::size_t max_markings,
              std::uint32_t max_tokens, const std::string& invariant) {
  const NetView net = validate_net(load_binding(file, name));
  sim::MarkingPredicate pred;
  if (!invariant.empty()) pred = sim::parse_predicate(invariant, net);

  sim::ReachCaps caps;
  caps.max_markings = max_markings;
  caps.max_tokens_per_place = max_tokens;
  const auto g = sim::reachability(net, net.marking, caps);
  std::cout << g.vertices.size() << " markings, " << g.arcs.size() << " arcs"
            << (g.truncated ? " (truncated)" : "") << '\n';
  if (!g.truncated)
    std::cout << "initial marking is " << (sim::root_is_home_state(g) ? "" : "not ")
              << "a home state\n";

  int rc = kOk;
  if (pred) {
    const auto r = sim::check_invariant(g, pred);
    if (r.counterexample) {
      std::cout << "invariant violated at " << marking_str(net, r.counterexample->marking) << '\n';
      std::cout << "path:";
      for (const auto& t : r.counterexample->path) std::cout << ' ' << net.labels.at(t) << '(' << t.str() << ')';
      std::cout << '\n';
      rc = kFailed;
    } else {
      std::cout << "invariant holds" << (r.exhaustive ? "" : " on the explored part") << '\n';
    }
  }
  if (g.truncated && rc == kOk) rc = kFailed;
  return rc;
}

int cmd_check(const std::string& file) {
  const auto env = dsl::parse_file(file);
  dsl::Evaluator ev(env);
  int rc = kOk;
  for (const auto& name : env.order()) {
    try {
      const Module m = ev.eval_name(name);
      const auto v = well_formedness_violations(m);
      if (v.empty()) {
        std::cout << "ok    " << name << " (" << m.nodes().size() << " nodes)\n";
      } else {
        rc = kFailed;
        for (const auto& msg : v) std::cout << "FAIL  " << name << ": " << msg << '\n';
      }
    } catch (const Error& e) {
      rc = kFailed;
      std::cout << "FAIL  " << name << ": " << e.what() << '\n';
    }
  }
  return rc;
}

int cmd_selftest(std::uint64_t seed, std::size_t count) {
  if (const char* env = std::getenv("HERAKLIT_SEED"); env != nullptr && *env != '\0')
    seed = std::stoull(env);
  std::cout << "seed " << seed << '\n';
  int rc = kOk;
  for (const auto& r : props::run_all(seed, count)) {
    std::cout << (r.passed() ? "PASS  " : "FAIL  ") << r.name << ": " << r.cases - r.failures
              << "/" << r.cases << " cases, " << r.well_formedness_checks
              << " well-formedness checks\n";
    if (!r.passed()) {
      rc = kFailed;
      std::cout << "      " << r.first_failure << '\n';
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modules of Petri nets: composition, equality, export and analysis"};
  app.require_subcommand(1);
  int rc = kOk;

  std::string file, name, name2, out;
  bool rename = false;
  std::size_t max_markings = sim::ReachCaps{}.max_markings;
  std::uint32_t max_tokens = sim::ReachCaps{}.max_tokens_per_place;
  std::string invariant;
  std::uint64_t seed = 1;
  std::size_t count = 1000;

  auto* eval = app.add_subcommand("eval", "print the canonical dump of a binding");
  eval->add_option("file", file)->required();
  eval->add_option("name", name)->required();
  eval->callback([&] { rc = cmd_eval(file, name); });

  auto* render = app.add_subcommand("render", "write a Graphviz rendering");
  render->add_option("file", file)->required();
  render->add_option("name", name)->required();
  render->add_option("--dot", out, "output path, - for stdout")->required();
  render->callback([&] { rc = cmd_render(file, name, out); });

  auto* pnml = app.add_subcommand("export-pnml", "write a PNML place/transition net");
  pnml->add_option("file", file)->required();
  pnml->add_option("name", name)->required();
  pnml->add_option("out", out, "output path, - for stdout")->required();
  pnml->callback([&] { rc = cmd_pnml(file, name, out); });

  auto* dmp = app.add_subcommand("dump", "write the canonical dump");
  dmp->add_option("file", file)->required();
  dmp->add_option("name", name)->required();
  dmp->add_option("-o,--out", out, "output path (default stdout)");
  dmp->callback([&] { rc = cmd_dump(file, name, out); });

  auto* iso = app.add_subcommand("iso", "decide isomorphism of two bindings");
  iso->add_option("file", file)->required();
  iso->add_option("name1", name)->required();
  iso->add_option("name2", name2)->required();
  iso->add_flag("--rename-cores", rename, "abstract nodes may differ in name");
  iso->callback([&] { rc = cmd_iso(file, name, name2, rename); });

  auto* fact = app.add_subcommand("factorize", "split a net into transition atoms and recompose");
  fact->add_option("file", file)->required();
  fact->add_option("name", name)->required();
  fact->callback([&] { rc = cmd_factorize(file, name); });

  auto* reach = app.add_subcommand("reach", "explore the reachable markings");
  reach->add_option("file", file)->required();
  reach->add_option("name", name)->required();
  reach->add_option("--max-markings", max_markings)->check(CLI::PositiveNumber);
  reach->add_option("--max-tokens", max_tokens)->check(CLI::PositiveNumber);
  reach->add_option("--invariant", invariant, "predicate that must hold at every marking");
  reach->callback([&] { rc = cmd_reach(file, name, max_markings, max_tokens, invariant); });

  auto* check = app.add_subcommand("check", "evaluate and check every binding of a file");
  check->add_option("file", file)->required();
  check->callback([&] { rc = cmd_check(file); });

  auto* self = app.add_subcommand("selftest", "run the algebraic property suite");
  self->add_option("--seed", seed, "overridden by HERAKLIT_SEED");
  self->add_option("--count", count, "cases per property")->check(CLI::PositiveNumber);
  self->callback([&] { rc = cmd_selftest(seed, count); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  } catch (const Error& e) {
    std::cerr << "heraklit: " << e.what() << '\n';
    return is_input_error(e.code()) ? kBadInput : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "heraklit: " << e.what() << '\n';
    return kBadInput;
  }
  return rc;
}
