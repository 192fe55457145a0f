#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ge/rational.hpp"
#include "ge/signals.hpp"

namespace ge {

enum class FormulaKind : std::uint8_t {
  True,
  False,
  Atom,
  Apply,       // quality operator applied to children
  Next,
  Until,
  Globally,    // kept as nodes; the tableau gives them native rules
  Eventually,
};

enum class OpKind : std::uint8_t { Neg, And, Or, Implies, Factor, Wavg };

int op_arity(OpKind op);
std::string op_name(OpKind op);

// Exact evaluation map of a quality operator on [0,1] rationals.
Rational apply_op(OpKind op, const Rational& lambda, const std::vector<Rational>& args);

using FormulaId = std::uint32_t;

struct FormulaNode {
  FormulaKind kind = FormulaKind::True;
  OpKind op = OpKind::Neg;          // Apply only
  Rational lambda{0};               // Factor / Wavg only
  int signal = -1;                  // Atom: joint signal index
  std::string atom_name;            // Atom only
  std::vector<FormulaId> children;
};

// Interned formula DAG: structurally identical formulas share one id, so
// closure() deduplicates for free and maps can key on ids.
class FormulaArena {
 public:
  FormulaId mk_true();
  FormulaId mk_false();
  FormulaId mk_atom(std::string name, int joint_index);
  FormulaId mk_apply(OpKind op, std::vector<FormulaId> children, Rational lambda = Rational(0));
  FormulaId mk_next(FormulaId child);
  FormulaId mk_until(FormulaId left, FormulaId right);
  FormulaId mk_globally(FormulaId child);
  FormulaId mk_eventually(FormulaId child);

  FormulaId mk_neg(FormulaId c) { return mk_apply(OpKind::Neg, {c}); }
  FormulaId mk_and(FormulaId a, FormulaId b) { return mk_apply(OpKind::And, {a, b}); }
  FormulaId mk_or(FormulaId a, FormulaId b) { return mk_apply(OpKind::Or, {a, b}); }
  FormulaId mk_implies(FormulaId a, FormulaId b) { return mk_apply(OpKind::Implies, {a, b}); }
  FormulaId mk_factor(Rational lambda, FormulaId c) { return mk_apply(OpKind::Factor, {c}, lambda); }
  FormulaId mk_wavg(Rational lambda, FormulaId a, FormulaId b) {
    return mk_apply(OpKind::Wavg, {a, b}, lambda);
  }

  const FormulaNode& node(FormulaId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  std::string to_string(FormulaId id) const;

 private:
  FormulaId intern(FormulaNode n);

  std::vector<FormulaNode> nodes_;
  struct KeyHash;
  std::vector<std::uint64_t> keys_;  // parallel structural keys for interning
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message), position(position) {}
  std::size_t position;
};

// Concrete syntax: atoms are identifiers; literals true|false; prefix !, X,
// G, F; infix &, |, ->, U (unary > U > & > | > ->); functions
// factor(n/d, f) and wavg(n/d, f, g) with rational constants in [0,1].
FormulaId parse_formula(std::string_view text, const SignalPartition& sig, FormulaArena& arena);

// All subformulas, children before parents, each distinct subformula once.
std::vector<FormulaId> closure(const FormulaArena& arena, FormulaId root);

// Ascending superset of the attainable satisfaction values.
std::vector<Rational> value_set(const FormulaArena& arena, FormulaId root);

// True iff every Apply node uses only Neg/And/Or/Implies.
bool is_boolean_fragment(const FormulaArena& arena, FormulaId root);

}  // namespace ge
