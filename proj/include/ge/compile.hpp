#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ge/automata.hpp"
#include "ge/formula.hpp"

namespace ge {

enum class Cmp { Ge, Gt, Le, Lt, Eq };

Cmp negate_cmp(Cmp c);  // comparator of the complement predicate
std::string cmp_name(Cmp c);
bool cmp_holds(Cmp c, const Rational& value, const Rational& bound);

// Value predicate over satisfaction values.
struct PredSpec {
  Cmp cmp = Cmp::Ge;
  Rational bound{1};
};

// NBW for { w : [[w, formula]] satisfies pred }, built as a value-annotated
// tableau: a state assigns each closure member a value from its value set,
// transitions enforce next-step consistency and the Until/Eventually/
// Globally expansions, and one generalized-Buchi set per temporal node
// ensures claimed values are attained. States carry atom annotations.
Nbw compile_pred_nbw(const FormulaArena& arena, FormulaId formula, const PredSpec& pred,
                     const SignalPartition& sig);

enum class CombKind { Implication, Difference, Ratio, FactorHope, Table };

// Monotone combinator scoring (hopefulness level A, achieved value G),
// antitone in A and monotone in G, defined for A >= G.
struct CombSpec {
  CombKind kind = CombKind::Implication;
  Rational lambda{1};  // FactorHope only
  std::map<std::pair<Rational, Rational>, Rational> table;  // Table only

  static CombSpec implication() { return {CombKind::Implication}; }
  static CombSpec difference() { return {CombKind::Difference}; }
  static CombSpec ratio() { return {CombKind::Ratio}; }
  static CombSpec factor_hope(Rational lambda) { return {CombKind::FactorHope, std::move(lambda)}; }
};

// Exact comb value; requires a >= g.
Rational eval_comb(const CombSpec& comb, const Rational& a, const Rational& g);

// Throws std::invalid_argument naming the violating pair if the comb is not
// antitone/monotone over the given value grid, or undefined on some pair.
void check_comb_monotone(const CombSpec& comb, const std::vector<Rational>& values);

enum class GeVariant { Boolean, Guarantee, Threshold, Full, AgComb, QuantGuarantee };

std::string variant_name(GeVariant v);

// One conjunctive factor of the dual language: a predicate automaton over
// the formula, either plain or existentially projected on the inputs.
struct DualFactor {
  FormulaId formula;
  PredSpec pred;
  bool projected = false;
};

// Specification automaton for one ge-synthesis variant. The UCW is the
// synthesis object; the dual NBW recognizes exactly the complement and backs
// verification. dual_terms mirrors the dual NBW as a union of factor
// products, which certificate checking decomposes against.
struct GeSpec {
  GeVariant variant = GeVariant::Boolean;
  SignalPartition sig;
  FormulaId formula = 0;            // main/weak formula
  std::optional<FormulaId> strong;  // Guarantee / QuantGuarantee
  Rational threshold{1};            // Threshold / AgComb / QuantGuarantee v1
  Rational threshold2{1};           // QuantGuarantee v2
  std::optional<CombSpec> comb;
  bool boolean_language = false;    // counterstrategy search is admissible

  Ucw ucw;
  Nbw dual;                                     // generalized Buchi
  std::vector<std::vector<DualFactor>> dual_terms;
  std::vector<std::pair<Rational, Rational>> good_pairs;  // AgComb bookkeeping
  std::vector<Rational> values;                           // value set used
};

GeSpec build_ge_boolean(const FormulaArena& arena, FormulaId psi, const SignalPartition& sig);
GeSpec build_ge_guarantee(const FormulaArena& arena, FormulaId psi_strong, FormulaId psi_weak,
                          const SignalPartition& sig);
GeSpec build_ge_threshold(const FormulaArena& arena, FormulaId psi, const Rational& v,
                          const SignalPartition& sig);
GeSpec build_ge_full(const FormulaArena& arena, FormulaId psi, const SignalPartition& sig);
GeSpec build_ag(const FormulaArena& arena, FormulaId psi, const CombSpec& comb, const Rational& v,
                const SignalPartition& sig);

struct QuantInner {
  bool full = false;       // otherwise Threshold(v2)
  Rational v2{1};
};
GeSpec build_quant_guarantee(const FormulaArena& arena, FormulaId psi_strong, const Rational& v1,
                             FormulaId psi_weak, const QuantInner& inner, const SignalPartition& sig);

}  // namespace ge
