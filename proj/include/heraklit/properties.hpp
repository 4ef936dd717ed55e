#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace heraklit::props {

// Seeded property checks of the module algebra over generated inputs. Every
// module an operation produces along the way is also checked for interface
// well-formedness; a violation counts as a failed case.

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t well_formedness_checks = 0;
  std::size_t well_formedness_failures = 0;
  std::string first_failure;
  double seconds = 0.0;

  bool passed() const { return failures == 0 && cases > 0; }
};

/// (A . B) . C == A . (B . C), structurally.
PropertyResult associativity(std::uint64_t seed, std::size_t cases);
/// E . A == A . E == A, structurally.
PropertyResult identity(std::uint64_t seed, std::size_t cases);
/// (A^c)^c == A^c, and no label on both sides of A^c.
PropertyResult closure_idempotence(std::uint64_t seed, std::size_t cases);
/// abstr(abstr(A)) ~ abstr(A) and abstr(A . B) ~ abstr(abstr(A) . abstr(B)),
/// isomorphic up to renaming abstract cores.
PropertyResult abstraction_laws(std::uint64_t seed, std::size_t cases);
/// E . [t_1] . ... . [t_n] ~ [N] for random nets.
PropertyResult completeness(std::uint64_t seed, std::size_t cases);

/// All of the above, `cases` each (completeness and abstraction use a third).
std::vector<PropertyResult> run_all(std::uint64_t seed, std::size_t cases);

}  // namespace heraklit::props
