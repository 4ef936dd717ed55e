#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "heraklit/module.hpp"

namespace heraklit::dsl {

struct ModuleExpr;
using ExprPtr = std::shared_ptr<const ModuleExpr>;

/// AST of the module algebra: names, `.`/`•`, postfix `^c`, `abstr(...)`, `E`.
struct ModuleExpr {
  enum class Kind { ref, compose, closure, abstr, empty };

  Kind kind = Kind::empty;
  std::string name;               // ref only
  std::vector<ExprPtr> operands;  // compose: 2, closure/abstr: 1

  static ExprPtr ref(std::string name);
  static ExprPtr compose(ExprPtr lhs, ExprPtr rhs);
  static ExprPtr closure(ExprPtr operand);
  static ExprPtr abstr(ExprPtr operand);
  static ExprPtr empty();
};

std::string to_string(const ModuleExpr& e);

struct NodeDecl {
  std::string name;
  NodeKind kind = NodeKind::abstract;
  std::string label;
  std::uint32_t marking = 0;
};

struct SnippetDecl {
  std::string name;
  std::vector<NodeDecl> nodes;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::vector<std::string> left;   // top-down = index order
  std::vector<std::string> right;
};

using Binding = std::variant<SnippetDecl, ExprPtr>;

/// Parsed `.hkl` file. Immutable after parsing.
class Environment {
 public:
  const Alphabet& alphabet() const { return alphabet_; }
  const std::map<std::string, Binding>& bindings() const { return bindings_; }
  /// Binding names in declaration order.
  const std::vector<std::string>& order() const { return order_; }

  const Binding* find(const std::string& name) const;
  std::size_t snippet_count() const;
  std::size_t definition_count() const;

 private:
  friend class Parser;
  Alphabet alphabet_;
  std::map<std::string, Binding> bindings_;
  std::vector<std::string> order_;
};

/// Parses a whole file; the first problem is reported as an Error carrying
/// `line:column`. Codes: SyntaxError, DuplicateName, UnknownLabel,
/// RecursiveDefinition.
Environment parse(std::string_view text);
Environment parse_file(const std::string& path);

/// Parses a stand-alone expression such as `think . eat`.
ExprPtr parse_expression(std::string_view text);

/// Builds a module from a snippet. Every atom carries `tag` as its instance.
Module instantiate(const SnippetDecl& decl, const Alphabet& alphabet, std::uint64_t tag);

/// Evaluates expressions against an environment. Every reference gets a fresh
/// instantiation tag, so `N . N` composes two disjoint copies. Tags are handed
/// out in evaluation order, which makes results reproducible.
class Evaluator {
 public:
  explicit Evaluator(const Environment& env, std::uint64_t first_tag = 1)
      : env_(env), next_tag_(first_tag) {}

  Module eval(const ModuleExpr& e);
  /// Evaluates a binding; the result carries the binding's name.
  Module eval_name(const std::string& name);

 private:
  const Environment& env_;
  std::uint64_t next_tag_;
};

/// Convenience: evaluation with a fresh evaluator starting at tag 1.
Module eval(const Environment& env, const ModuleExpr& e);

}  // namespace heraklit::dsl
