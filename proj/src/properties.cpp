#include "heraklit/properties.hpp"

#include <chrono>
#include <functional>
#include <set>

#include "heraklit/calculus.hpp"
#include "heraklit/iso.hpp"
#include "heraklit/net.hpp"
#include "heraklit/random.hpp"

namespace heraklit::props {

namespace {

class Run {
 public:
  explicit Run(std::string name) : start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
  }

  // Records a failed well-formedness check as a failure message.
  bool sound(const Module& m, const char* what) {
    ++result_.well_formedness_checks;
    auto v = well_formedness_violations(m);
    if (v.empty()) return true;
    ++result_.well_formedness_failures;
    note(std::string(what) + " is not well-formed: " + v.front());
    return false;
  }

  void note(const std::string& msg) {
    if (failing_) return;
    failing_ = true;
    if (result_.first_failure.empty())
      result_.first_failure = "case " + std::to_string(result_.cases) + ": " + msg;
  }

  void end_case() {
    if (failing_) ++result_.failures;
    failing_ = false;
    ++result_.cases;
  }

  PropertyResult finish() {
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

  template <typename F>
  void guarded(F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      note(std::string("exception: ") + e.what());
    }
    end_case();
  }

 private:
  PropertyResult result_;
  std::chrono::steady_clock::time_point start_;
  bool failing_ = false;
};

bool no_label_on_both_sides(const Module& m) {
  std::set<std::string> left;
  for (const auto& id : m.left()) left.insert(m.label(id));
  for (const auto& id : m.right()) {
    if (left.contains(m.label(id))) return false;
  }
  return true;
}

}  // namespace

PropertyResult associativity(std::uint64_t seed, std::size_t cases) {
  Run run("associativity");
  gen::Generator g(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    run.guarded([&] {
      const Module a = g.module(), b = g.module(), c = g.module();
      const Module ab = compose(a, b);
      const Module bc = compose(b, c);
      const Module lhs = compose(ab, c);
      const Module rhs = compose(a, bc);
      for (const auto* m : {&ab, &bc, &lhs, &rhs}) run.sound(*m, "intermediate");
      if (!structural_equal(lhs, rhs)) run.note("(A.B).C differs from A.(B.C)");
    });
  }
  return run.finish();
}

PropertyResult identity(std::uint64_t seed, std::size_t cases) {
  Run run("identity");
  gen::Generator g(seed);
  const Module e = empty_module();
  for (std::size_t i = 0; i < cases; ++i) {
    run.guarded([&] {
      const Module a = g.module();
      const Module ea = compose(e, a);
      const Module ae = compose(a, e);
      run.sound(ea, "E.A");
      run.sound(ae, "A.E");
      if (!structural_equal(ea, a)) run.note("E.A differs from A");
      if (!structural_equal(ae, a)) run.note("A.E differs from A");
    });
  }
  return run.finish();
}

PropertyResult closure_idempotence(std::uint64_t seed, std::size_t cases) {
  Run run("closure idempotence");
  gen::Generator g(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    run.guarded([&] {
      const Module a = g.module();
      const Module once = closure(a);
      const Module twice = closure(once);
      run.sound(once, "A^c");
      run.sound(twice, "(A^c)^c");
      if (!structural_equal(once, twice)) run.note("(A^c)^c differs from A^c");
      if (!no_label_on_both_sides(once)) run.note("a label occurs on both sides of A^c");
    });
  }
  return run.finish();
}

PropertyResult abstraction_laws(std::uint64_t seed, std::size_t cases) {
  Run run("abstraction laws");
  gen::Generator g(seed);
  IsoOptions rename;
  rename.rename_abstract_cores = true;
  for (std::size_t i = 0; i < cases; ++i) {
    run.guarded([&] {
      const Module a = g.module("A");
      const Module b = g.module("B");
      const Module abs_a = abstract_of(a);
      const Module twice = abstract_of(abs_a);
      run.sound(abs_a, "abstr(A)");
      run.sound(twice, "abstr(abstr(A))");
      if (!isomorphic(twice, abs_a, rename)) run.note("abstr(abstr(A)) is not abstr(A)");

      const Module ab = compose(a, b).with_name("AB");
      const Module abs_ab = abstract_of(ab);
      const Module seam_ab = compose(abs_a, abstract_of(b)).with_name("AB");
      const Module abs_seam = abstract_of(seam_ab);
      run.sound(abs_ab, "abstr(A.B)");
      run.sound(abs_seam, "abstr(abstr(A).abstr(B))");
      if (!isomorphic(abs_ab, abs_seam, rename))
        run.note("abstr(A.B) is not abstr(abstr(A).abstr(B))");
    });
  }
  return run.finish();
}

PropertyResult completeness(std::uint64_t seed, std::size_t cases) {
  Run run("completeness");
  gen::Generator g(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    run.guarded([&] {
      const NetView net = g.net();
      const auto f = factorize(net);
      for (const auto& atom : f.atoms) {
        run.sound(atom, "[t]");
        if (!is_monolithic(atom) || atom.interior().size() != 1)
          run.note("transition atom is not monolithic with one inner node");
      }
      run.sound(f.recomposed, "recomposition");
      if (!f.isomorphic_to_net) run.note("recomposition is not isomorphic to [N]");
    });
  }
  return run.finish();
}

std::vector<PropertyResult> run_all(std::uint64_t seed, std::size_t cases) {
  const std::size_t third = std::max<std::size_t>(1, cases / 3);
  return {associativity(seed, cases), identity(seed + 1, cases),
          closure_idempotence(seed + 2, cases), abstraction_laws(seed + 3, third),
          completeness(seed + 4, third)};
}

}  // namespace heraklit::props
