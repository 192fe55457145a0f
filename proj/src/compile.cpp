#include "ge/compile.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace ge {

Cmp negate_cmp(Cmp c) {
  switch (c) {
    case Cmp::Ge: return Cmp::Lt;
    case Cmp::Gt: return Cmp::Le;
    case Cmp::Le: return Cmp::Gt;
    case Cmp::Lt: return Cmp::Ge;
    case Cmp::Eq: throw std::invalid_argument("equality predicate has no single complement");
  }
  throw std::logic_error("bad comparator");
}

std::string cmp_name(Cmp c) {
  switch (c) {
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
    case Cmp::Le: return "<=";
    case Cmp::Lt: return "<";
    case Cmp::Eq: return "==";
  }
  return "?";
}

bool cmp_holds(Cmp c, const Rational& value, const Rational& bound) {
  switch (c) {
    case Cmp::Ge: return value >= bound;
    case Cmp::Gt: return value > bound;
    case Cmp::Le: return value <= bound;
    case Cmp::Lt: return value < bound;
    case Cmp::Eq: return value == bound;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Value-annotated tableau
// ---------------------------------------------------------------------------

namespace {

struct TableauContext {
  const FormulaArena& arena;
  std::vector<FormulaId> order;               // closure, children first
  std::map<FormulaId, int> slot;              // formula -> index in order
  std::vector<std::vector<Rational>> domain;  // slot -> candidate values
};

bool is_temporal(FormulaKind k) {
  return k == FormulaKind::Until || k == FormulaKind::Eventually || k == FormulaKind::Globally;
}

TableauContext make_context(const FormulaArena& arena, FormulaId root) {
  TableauContext ctx{arena, closure(arena, root), {}, {}};
  for (std::size_t i = 0; i < ctx.order.size(); ++i) ctx.slot[ctx.order[i]] = static_cast<int>(i);
  ctx.domain.resize(ctx.order.size());
  for (std::size_t i = 0; i < ctx.order.size(); ++i)
    ctx.domain[i] = value_set(arena, ctx.order[i]);
  return ctx;
}

// Enumerates all locally consistent valuations of the closure. A valuation
// fixes atoms freely, Next claims freely within the child's value set, and
// temporal claims within the expansion bounds; Apply values are determined.
std::vector<std::vector<Rational>> enumerate_states(const TableauContext& ctx) {
  std::vector<std::vector<Rational>> states;
  std::vector<Rational> val(ctx.order.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == ctx.order.size()) {
      states.push_back(val);
      return;
    }
    const FormulaNode& n = ctx.arena.node(ctx.order[i]);
    auto choose = [&](const Rational& v) {
      val[i] = v;
      self(self, i + 1);
    };
    switch (n.kind) {
      case FormulaKind::True: choose(Rational(1)); break;
      case FormulaKind::False: choose(Rational(0)); break;
      case FormulaKind::Atom:
        choose(Rational(0));
        choose(Rational(1));
        break;
      case FormulaKind::Apply: {
        std::vector<Rational> args;
        for (FormulaId c : n.children) args.push_back(val[ctx.slot.at(c)]);
        choose(apply_op(n.op, n.lambda, args));
        break;
      }
      case FormulaKind::Next:
        for (const Rational& v : ctx.domain[ctx.slot.at(n.children[0])]) choose(v);
        break;
      case FormulaKind::Until: {
        const Rational& v1 = val[ctx.slot.at(n.children[0])];
        const Rational& v2 = val[ctx.slot.at(n.children[1])];
        for (const Rational& v : ctx.domain[i])
          if (v >= v2 && v <= std::max(v1, v2)) choose(v);
        break;
      }
      case FormulaKind::Eventually: {
        const Rational& c = val[ctx.slot.at(n.children[0])];
        for (const Rational& v : ctx.domain[i])
          if (v >= c) choose(v);
        break;
      }
      case FormulaKind::Globally: {
        const Rational& c = val[ctx.slot.at(n.children[0])];
        for (const Rational& v : ctx.domain[i])
          if (v <= c) choose(v);
        break;
      }
    }
  };
  rec(rec, 0);
  return states;
}

}  // namespace

Nbw compile_pred_nbw(const FormulaArena& arena, FormulaId formula, const PredSpec& pred,
                     const SignalPartition& sig) {
  if (pred.bound < Rational(0) || pred.bound > Rational(1))
    throw std::invalid_argument("predicate bound outside [0,1]");
  TableauContext ctx = make_context(arena, formula);
  std::vector<std::vector<Rational>> states = enumerate_states(ctx);
  const int n = static_cast<int>(states.size());
  const int root_slot = ctx.slot.at(formula);

  // Per-state atom pinning: the letters a state can read.
  std::vector<Letter> mask(n, 0), val(n, 0);
  for (int s = 0; s < n; ++s)
    for (std::size_t i = 0; i < ctx.order.size(); ++i) {
      const FormulaNode& node = ctx.arena.node(ctx.order[i]);
      if (node.kind != FormulaKind::Atom) continue;
      mask[s] |= Letter{1} << node.signal;
      if (states[s][i] == Rational(1)) val[s] |= Letter{1} << node.signal;
    }

  // Successor compatibility: Next claims step into the child, temporal
  // claims obey their expansion.
  auto compatible = [&](int s, int t) {
    for (std::size_t i = 0; i < ctx.order.size(); ++i) {
      const FormulaNode& node = ctx.arena.node(ctx.order[i]);
      switch (node.kind) {
        case FormulaKind::Next:
          if (states[s][i] != states[t][ctx.slot.at(node.children[0])]) return false;
          break;
        case FormulaKind::Until: {
          const Rational& v1 = states[s][ctx.slot.at(node.children[0])];
          const Rational& v2 = states[s][ctx.slot.at(node.children[1])];
          if (states[s][i] != std::max(v2, std::min(v1, states[t][i]))) return false;
          break;
        }
        case FormulaKind::Eventually: {
          const Rational& c = states[s][ctx.slot.at(node.children[0])];
          if (states[s][i] != std::max(c, states[t][i])) return false;
          break;
        }
        case FormulaKind::Globally: {
          const Rational& c = states[s][ctx.slot.at(node.children[0])];
          if (states[s][i] != std::min(c, states[t][i])) return false;
          break;
        }
        default:
          break;
      }
    }
    return true;
  };

  Nbw a;
  a.alphabet = sig.joint_alphabet();
  a.state_count = n;
  a.atom_mask = mask;
  a.atom_val = val;
  a.trans.assign(n, std::vector<std::vector<int>>(a.alphabet.letter_count()));
  for (int s = 0; s < n; ++s) {
    std::vector<int> succ;
    for (int t = 0; t < n; ++t)
      if (compatible(s, t)) succ.push_back(t);
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l)
      if ((l & mask[s]) == val[s]) a.trans[s][l] = succ;
  }
  for (int s = 0; s < n; ++s)
    if (cmp_holds(pred.cmp, states[s][root_slot], pred.bound)) a.initial.push_back(s);

  // One generalized-Buchi set per temporal node: the claimed value must be
  // attained (Until/Eventually realize their max, Globally its min).
  for (std::size_t i = 0; i < ctx.order.size(); ++i) {
    const FormulaNode& node = ctx.arena.node(ctx.order[i]);
    if (!is_temporal(node.kind)) continue;
    std::vector<int> set;
    for (int s = 0; s < n; ++s) {
      const Rational& claim = states[s][i];
      bool attained = false;
      if (node.kind == FormulaKind::Until)
        attained = claim <= states[s][ctx.slot.at(node.children[1])];
      else if (node.kind == FormulaKind::Eventually)
        attained = claim <= states[s][ctx.slot.at(node.children[0])];
      else
        attained = claim >= states[s][ctx.slot.at(node.children[0])];
      if (attained) set.push_back(s);
    }
    a.acceptance.push_back(std::move(set));
  }

  // Restrict to the part reachable from the initial states.
  std::vector<char> reach(n, 0);
  std::deque<int> work;
  for (int q : a.initial)
    if (!reach[q]) {
      reach[q] = 1;
      work.push_back(q);
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l)
      for (int t : a.trans[q][l])
        if (!reach[t]) {
          reach[t] = 1;
          work.push_back(t);
        }
  }
  std::vector<int> remap(n, -1);
  int kept = 0;
  for (int q = 0; q < n; ++q)
    if (reach[q]) remap[q] = kept++;
  Nbw out;
  out.alphabet = a.alphabet;
  out.state_count = kept;
  out.trans.assign(kept, std::vector<std::vector<int>>(a.alphabet.letter_count()));
  out.atom_mask.resize(kept);
  out.atom_val.resize(kept);
  for (int q = 0; q < n; ++q) {
    if (remap[q] < 0) continue;
    out.atom_mask[remap[q]] = a.atom_mask[q];
    out.atom_val[remap[q]] = a.atom_val[q];
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l)
      for (int t : a.trans[q][l])
        if (remap[t] >= 0) out.trans[remap[q]][l].push_back(remap[t]);
  }
  for (int q : a.initial) out.initial.push_back(remap[q]);
  std::sort(out.initial.begin(), out.initial.end());
  for (const auto& set : a.acceptance) {
    std::vector<int> mapped;
    for (int q : set)
      if (remap[q] >= 0) mapped.push_back(remap[q]);
    std::sort(mapped.begin(), mapped.end());
    out.acceptance.push_back(std::move(mapped));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comb functions
// ---------------------------------------------------------------------------

namespace {

// Total, monotone extension used for pair enumeration; agrees with
// eval_comb on pairs with a >= g.
Rational ext_comb(const CombSpec& comb, const std::vector<Rational>& values, const Rational& a,
                  const Rational& g) {
  switch (comb.kind) {
    case CombKind::Implication:
      return std::max(Rational(1) - a, g);
    case CombKind::Difference:
      return Rational(1) - std::max(Rational(0), a - g);
    case CombKind::Ratio:
      if (a == Rational(0) || g >= a) return Rational(1);
      return g / a;
    case CombKind::FactorHope:
      return std::max(comb.lambda * (Rational(1) - a), g);
    case CombKind::Table: {
      // Least monotone extension of the tabulated diagonal pairs.
      bool any = false;
      Rational best(0);
      for (const auto& [pair, value] : comb.table) {
        if (pair.first >= a && pair.second <= g) {
          best = any ? std::max(best, value) : value;
          any = true;
        }
      }
      if (!any) throw std::invalid_argument("comb table undefined around (" + to_string(a) + ", " +
                                            to_string(g) + ")");
      (void)values;
      return best;
    }
  }
  throw std::logic_error("bad comb kind");
}

}  // namespace

Rational eval_comb(const CombSpec& comb, const Rational& a, const Rational& g) {
  if (a < g) throw std::invalid_argument("comb arguments must satisfy a >= g");
  if (comb.kind == CombKind::Table) {
    auto it = comb.table.find({a, g});
    if (it == comb.table.end())
      throw std::invalid_argument("comb table undefined on (" + to_string(a) + ", " + to_string(g) +
                                  ")");
    return it->second;
  }
  return ext_comb(comb, {}, a, g);
}

void check_comb_monotone(const CombSpec& comb, const std::vector<Rational>& values) {
  for (const Rational& a : values)
    for (const Rational& g : values) {
      if (a < g) continue;
      Rational base = eval_comb(comb, a, g);
      if (base < Rational(0) || base > Rational(1))
        throw std::invalid_argument("comb value outside [0,1] at (" + to_string(a) + ", " +
                                    to_string(g) + ")");
      for (const Rational& a2 : values) {
        if (a2 < a || a2 < g) continue;
        if (eval_comb(comb, a2, g) > base)
          throw std::invalid_argument("comb not antitone in the first argument at (" +
                                      to_string(a) + " vs " + to_string(a2) + ", " + to_string(g) +
                                      ")");
      }
      for (const Rational& g2 : values) {
        if (g2 < g || g2 > a) continue;
        if (eval_comb(comb, a, g2) < base)
          throw std::invalid_argument("comb not monotone in the second argument at (" +
                                      to_string(a) + ", " + to_string(g) + " vs " + to_string(g2) +
                                      ")");
      }
    }
}

// ---------------------------------------------------------------------------
// Variant assembly
// ---------------------------------------------------------------------------

namespace {

Nbw empty_nbw(const SignalPartition& sig) {
  Nbw a;
  a.alphabet = sig.joint_alphabet();
  return a;
}

Nbw factor_nbw(const FormulaArena& arena, const DualFactor& f, const SignalPartition& sig) {
  Nbw a = compile_pred_nbw(arena, f.formula, f.pred, sig);
  if (f.projected) return lift_to_joint(exists_project(a, sig), sig);
  return a;
}

Nbw dual_from_terms(const FormulaArena& arena, const std::vector<std::vector<DualFactor>>& terms,
                    const SignalPartition& sig) {
  std::vector<Nbw> parts;
  for (const auto& term : terms) {
    if (term.empty()) throw std::logic_error("empty dual term");
    Nbw acc = factor_nbw(arena, term[0], sig);
    for (std::size_t i = 1; i < term.size(); ++i)
      acc = nbw_product(acc, factor_nbw(arena, term[i], sig));
    parts.push_back(reduce(acc));
  }
  if (parts.empty()) return empty_nbw(sig);
  std::vector<const Nbw*> ptrs;
  for (const Nbw& p : parts) ptrs.push_back(&p);
  return nbw_union(ptrs);
}

void finish(GeSpec& spec, const FormulaArena& arena) {
  spec.dual = reduce(dual_from_terms(arena, spec.dual_terms, spec.sig));
  spec.ucw.structure = reduce(degeneralize(spec.dual));
  spec.ucw.dual = std::make_shared<Nbw>(spec.dual);
}

}  // namespace

std::string variant_name(GeVariant v) {
  switch (v) {
    case GeVariant::Boolean: return "boolean";
    case GeVariant::Guarantee: return "guarantee";
    case GeVariant::Threshold: return "threshold";
    case GeVariant::Full: return "full";
    case GeVariant::AgComb: return "ag";
    case GeVariant::QuantGuarantee: return "quant-guarantee";
  }
  return "?";
}

GeSpec build_ge_boolean(const FormulaArena& arena, FormulaId psi, const SignalPartition& sig) {
  if (!is_boolean_fragment(arena, psi))
    throw std::invalid_argument("boolean ge-synthesis expects a Boolean-fragment formula");
  GeSpec spec;
  spec.variant = GeVariant::Boolean;
  spec.sig = sig;
  spec.formula = psi;
  spec.boolean_language = true;
  spec.values = {Rational(0), Rational(1)};
  spec.dual_terms = {{DualFactor{psi, {Cmp::Lt, Rational(1)}, false},
                      DualFactor{psi, {Cmp::Ge, Rational(1)}, true}}};
  finish(spec, arena);
  return spec;
}

GeSpec build_ge_guarantee(const FormulaArena& arena, FormulaId psi_strong, FormulaId psi_weak,
                          const SignalPartition& sig) {
  if (!is_boolean_fragment(arena, psi_strong) || !is_boolean_fragment(arena, psi_weak))
    throw std::invalid_argument("guarantee ge-synthesis expects Boolean-fragment formulas");
  GeSpec spec;
  spec.variant = GeVariant::Guarantee;
  spec.sig = sig;
  spec.formula = psi_weak;
  spec.strong = psi_strong;
  spec.boolean_language = true;
  spec.values = {Rational(0), Rational(1)};
  spec.dual_terms = {{DualFactor{psi_strong, {Cmp::Lt, Rational(1)}, false}},
                     {DualFactor{psi_weak, {Cmp::Ge, Rational(1)}, true},
                      DualFactor{psi_weak, {Cmp::Lt, Rational(1)}, false}}};
  finish(spec, arena);
  return spec;
}

GeSpec build_ge_threshold(const FormulaArena& arena, FormulaId psi, const Rational& v,
                          const SignalPartition& sig) {
  if (v < Rational(0) || v > Rational(1)) throw std::invalid_argument("threshold outside [0,1]");
  GeSpec spec;
  spec.variant = GeVariant::Threshold;
  spec.sig = sig;
  spec.formula = psi;
  spec.threshold = v;
  spec.boolean_language = is_boolean_fragment(arena, psi);
  spec.values = value_set(arena, psi);
  spec.dual_terms = {{DualFactor{psi, {Cmp::Lt, v}, false}, DualFactor{psi, {Cmp::Ge, v}, true}}};
  finish(spec, arena);
  return spec;
}

GeSpec build_ge_full(const FormulaArena& arena, FormulaId psi, const SignalPartition& sig) {
  GeSpec spec;
  spec.variant = GeVariant::Full;
  spec.sig = sig;
  spec.formula = psi;
  spec.boolean_language = is_boolean_fragment(arena, psi);
  spec.values = value_set(arena, psi);
  for (const Rational& v : spec.values) {
    if (v == Rational(0)) continue;  // every value is >= 0; the clause is vacuous
    spec.dual_terms.push_back(
        {DualFactor{psi, {Cmp::Lt, v}, false}, DualFactor{psi, {Cmp::Ge, v}, true}});
  }
  finish(spec, arena);
  return spec;
}

GeSpec build_ag(const FormulaArena& arena, FormulaId psi, const CombSpec& comb, const Rational& v,
                const SignalPartition& sig) {
  GeSpec spec;
  spec.variant = GeVariant::AgComb;
  spec.sig = sig;
  spec.formula = psi;
  spec.threshold = v;
  spec.comb = comb;
  spec.boolean_language = is_boolean_fragment(arena, psi);
  spec.values = value_set(arena, psi);
  check_comb_monotone(comb, spec.values);
  for (const Rational& v1 : spec.values)
    for (const Rational& v2 : spec.values)
      if (v1 >= v2 && eval_comb(comb, v1, v2) >= v) spec.good_pairs.push_back({v1, v2});
  for (const Rational& u1 : spec.values)
    for (const Rational& u2 : spec.values) {
      if (ext_comb(comb, spec.values, u1, u2) >= v) continue;
      spec.dual_terms.push_back(
          {DualFactor{psi, {Cmp::Ge, u1}, true}, DualFactor{psi, {Cmp::Le, u2}, false}});
    }
  finish(spec, arena);
  return spec;
}

GeSpec build_quant_guarantee(const FormulaArena& arena, FormulaId psi_strong, const Rational& v1,
                             FormulaId psi_weak, const QuantInner& inner,
                             const SignalPartition& sig) {
  if (v1 < Rational(0) || v1 > Rational(1)) throw std::invalid_argument("threshold outside [0,1]");
  GeSpec spec;
  spec.variant = GeVariant::QuantGuarantee;
  spec.sig = sig;
  spec.formula = psi_weak;
  spec.strong = psi_strong;
  spec.threshold = v1;
  spec.threshold2 = inner.v2;
  spec.values = value_set(arena, psi_weak);
  spec.dual_terms = {{DualFactor{psi_strong, {Cmp::Lt, v1}, false}}};
  if (inner.full) {
    for (const Rational& v : spec.values) {
      if (v == Rational(0)) continue;
      spec.dual_terms.push_back(
          {DualFactor{psi_weak, {Cmp::Lt, v}, false}, DualFactor{psi_weak, {Cmp::Ge, v}, true}});
    }
  } else {
    spec.dual_terms.push_back({DualFactor{psi_weak, {Cmp::Lt, inner.v2}, false},
                               DualFactor{psi_weak, {Cmp::Ge, inner.v2}, true}});
  }
  finish(spec, arena);
  return spec;
}

}  // namespace ge
