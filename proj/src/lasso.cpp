#include "ge/lasso.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace ge {

Lasso zip_lassos(const Lasso& x, const Lasso& y, const SignalPartition& sig) {
  if (x.tag != LassoTag::Input || y.tag != LassoTag::Output)
    throw std::invalid_argument("zip expects an input lasso and an output lasso");
  if (x.prefix.size() != y.prefix.size() || x.loop.size() != y.loop.size())
    throw std::invalid_argument("zip expects lassos of the same shape");
  Lasso w;
  w.tag = LassoTag::Joint;
  w.prefix.reserve(x.prefix.size());
  for (std::size_t i = 0; i < x.prefix.size(); ++i)
    w.prefix.push_back(sig.zip(x.prefix[i], y.prefix[i]));
  for (std::size_t i = 0; i < x.loop.size(); ++i) w.loop.push_back(sig.zip(x.loop[i], y.loop[i]));
  return w;
}

Lasso project_input(const Lasso& w, const SignalPartition& sig) {
  if (w.tag != LassoTag::Joint) throw std::invalid_argument("projection expects a joint lasso");
  Lasso x;
  x.tag = LassoTag::Input;
  for (Letter l : w.prefix) x.prefix.push_back(sig.project_input(l));
  for (Letter l : w.loop) x.loop.push_back(sig.project_input(l));
  return x;
}

std::optional<Lasso> parse_lasso(std::string_view text, const Alphabet& alphabet, LassoTag tag) {
  auto parse_word = [&](std::string_view part, std::vector<Letter>& out) -> bool {
    std::size_t i = 0;
    while (i < part.size()) {
      while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i]))) ++i;
      if (i >= part.size()) break;
      std::size_t start = i;
      while (i < part.size() && !std::isspace(static_cast<unsigned char>(part[i]))) ++i;
      auto letter = alphabet.parse_letter(part.substr(start, i - start));
      if (!letter) return false;
      out.push_back(*letter);
    }
    return true;
  };
  Lasso w;
  w.tag = tag;
  auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    if (!parse_word(text, w.loop)) return std::nullopt;
  } else {
    if (!parse_word(text.substr(0, semi), w.prefix)) return std::nullopt;
    if (!parse_word(text.substr(semi + 1), w.loop)) return std::nullopt;
  }
  if (w.loop.empty()) return std::nullopt;
  return w;
}

std::string lasso_to_string(const Lasso& w, const Alphabet& alphabet) {
  std::string out;
  for (Letter l : w.prefix) {
    if (!out.empty()) out += ' ';
    out += alphabet.letter_name(l);
  }
  out += out.empty() ? ";" : " ;";
  for (Letter l : w.loop) {
    out += ' ';
    out += alphabet.letter_name(l);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact multi-valued evaluation on lassos
// ---------------------------------------------------------------------------

namespace {

struct Evaluator {
  const FormulaArena& arena;
  const Lasso& w;
  std::size_t positions;
  // memo[closure-slot][normalized position]
  std::map<FormulaId, std::vector<std::optional<Rational>>> memo;
  std::map<FormulaId, std::size_t> scan_bound;  // per Until/Eventually/Globally node

  Rational eval(FormulaId id, std::size_t pos) {
    pos = w.norm(pos);
    auto& slot = memo[id];
    if (slot.empty()) slot.resize(positions);
    if (slot[pos]) return *slot[pos];
    Rational v = compute(id, pos);
    slot[pos] = v;
    return v;
  }

  std::size_t bound_for(FormulaId id, FormulaId left_child) {
    auto it = scan_bound.find(id);
    if (it != scan_bound.end()) return it->second;
    std::size_t left_values =
        left_child == static_cast<FormulaId>(-1) ? 1 : value_set(arena, left_child).size();
    std::size_t b = w.prefix.size() + w.loop.size() * (left_values + 1);
    scan_bound[id] = b;
    return b;
  }

  Rational compute(FormulaId id, std::size_t pos) {
    const FormulaNode& n = arena.node(id);
    switch (n.kind) {
      case FormulaKind::True: return Rational(1);
      case FormulaKind::False: return Rational(0);
      case FormulaKind::Atom:
        return (w.at(pos) >> n.signal) & 1u ? Rational(1) : Rational(0);
      case FormulaKind::Apply: {
        std::vector<Rational> args;
        for (FormulaId c : n.children) args.push_back(eval(c, pos));
        return apply_op(n.op, n.lambda, args);
      }
      case FormulaKind::Next:
        return eval(n.children[0], w.step(pos));
      case FormulaKind::Until: {
        std::size_t bound = bound_for(id, n.children[0]);
        Rational best(0);
        Rational running_min(1);
        std::size_t p = pos;
        for (std::size_t i = 0; i <= bound; ++i) {
          best = std::max(best, std::min(running_min, eval(n.children[1], p)));
          running_min = std::min(running_min, eval(n.children[0], p));
          p = w.step(p);
        }
        return best;
      }
      case FormulaKind::Eventually: {
        std::size_t bound = bound_for(id, static_cast<FormulaId>(-1));
        Rational best(0);
        std::size_t p = pos;
        for (std::size_t i = 0; i <= bound; ++i) {
          best = std::max(best, eval(n.children[0], p));
          p = w.step(p);
        }
        return best;
      }
      case FormulaKind::Globally: {
        std::size_t bound = bound_for(id, static_cast<FormulaId>(-1));
        Rational worst(1);
        std::size_t p = pos;
        for (std::size_t i = 0; i <= bound; ++i) {
          worst = std::min(worst, eval(n.children[0], p));
          p = w.step(p);
        }
        return worst;
      }
    }
    throw std::logic_error("unknown formula kind");
  }
};

}  // namespace

Rational eval_lasso(const FormulaArena& arena, FormulaId formula, const Lasso& w,
                    const SignalPartition& sig) {
  if (w.tag != LassoTag::Joint)
    throw std::invalid_argument("eval_lasso expects a joint-alphabet lasso");
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  (void)sig;
  Evaluator ev{arena, w, w.size(), {}, {}};
  return ev.eval(formula, 0);
}

}  // namespace ge
