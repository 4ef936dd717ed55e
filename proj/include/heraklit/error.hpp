#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heraklit {

enum class ErrorCode {
  non_disjoint_interfaces,
  non_disjoint_operands,
  kind_mismatch,
  unnamed_module,
  malformed_module,
  not_bipartite,
  abstract_node_present,
  unknown_transition,
  isolated_element,
  search_budget_exceeded,
  syntax_error,
  duplicate_name,
  unknown_label,
  recursive_definition,
  unbound_name,
  parse_error,
  not_a_net,
  not_enabled,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this one exception type; the
// code distinguishes them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace heraklit
