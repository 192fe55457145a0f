#include "ge/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

namespace ge {

int op_arity(OpKind op) {
  switch (op) {
    case OpKind::Neg:
    case OpKind::Factor:
      return 1;
    case OpKind::And:
    case OpKind::Or:
    case OpKind::Implies:
    case OpKind::Wavg:
      return 2;
  }
  return 0;
}

std::string op_name(OpKind op) {
  switch (op) {
    case OpKind::Neg: return "!";
    case OpKind::And: return "&";
    case OpKind::Or: return "|";
    case OpKind::Implies: return "->";
    case OpKind::Factor: return "factor";
    case OpKind::Wavg: return "wavg";
  }
  return "?";
}

Rational apply_op(OpKind op, const Rational& lambda, const std::vector<Rational>& args) {
  switch (op) {
    case OpKind::Neg: return Rational(1) - args[0];
    case OpKind::And: return std::min(args[0], args[1]);
    case OpKind::Or: return std::max(args[0], args[1]);
    case OpKind::Implies: return std::max(Rational(1) - args[0], args[1]);
    case OpKind::Factor: return lambda * args[0];
    case OpKind::Wavg: return lambda * args[0] + (Rational(1) - lambda) * args[1];
  }
  throw std::logic_error("unknown quality operator");
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t node_key(const FormulaNode& n) {
  std::uint64_t h = static_cast<std::uint64_t>(n.kind);
  h = mix(h, static_cast<std::uint64_t>(n.op));
  h = mix(h, static_cast<std::uint64_t>(n.lambda.numerator()));
  h = mix(h, static_cast<std::uint64_t>(n.lambda.denominator()));
  h = mix(h, static_cast<std::uint64_t>(n.signal + 1));
  for (char c : n.atom_name) h = mix(h, static_cast<std::uint64_t>(c));
  for (FormulaId c : n.children) h = mix(h, c);
  return h;
}

bool node_equal(const FormulaNode& a, const FormulaNode& b) {
  return a.kind == b.kind && a.op == b.op && a.lambda == b.lambda && a.signal == b.signal &&
         a.atom_name == b.atom_name && a.children == b.children;
}

}  // namespace

FormulaId FormulaArena::intern(FormulaNode n) {
  std::uint64_t key = node_key(n);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (keys_[i] == key && node_equal(nodes_[i], n)) return static_cast<FormulaId>(i);
  nodes_.push_back(std::move(n));
  keys_.push_back(key);
  return static_cast<FormulaId>(nodes_.size() - 1);
}

FormulaId FormulaArena::mk_true() { return intern({FormulaKind::True}); }
FormulaId FormulaArena::mk_false() { return intern({FormulaKind::False}); }

FormulaId FormulaArena::mk_atom(std::string name, int joint_index) {
  FormulaNode n;
  n.kind = FormulaKind::Atom;
  n.signal = joint_index;
  n.atom_name = std::move(name);
  return intern(std::move(n));
}

FormulaId FormulaArena::mk_apply(OpKind op, std::vector<FormulaId> children, Rational lambda) {
  if (static_cast<int>(children.size()) != op_arity(op))
    throw std::invalid_argument("operator arity mismatch");
  if ((op == OpKind::Factor || op == OpKind::Wavg) &&
      (lambda < Rational(0) || lambda > Rational(1)))
    throw std::invalid_argument("lambda outside [0,1]");
  FormulaNode n;
  n.kind = FormulaKind::Apply;
  n.op = op;
  n.lambda = (op == OpKind::Factor || op == OpKind::Wavg) ? lambda : Rational(0);
  n.children = std::move(children);
  return intern(std::move(n));
}

FormulaId FormulaArena::mk_next(FormulaId child) {
  FormulaNode n;
  n.kind = FormulaKind::Next;
  n.children = {child};
  return intern(std::move(n));
}

FormulaId FormulaArena::mk_until(FormulaId left, FormulaId right) {
  FormulaNode n;
  n.kind = FormulaKind::Until;
  n.children = {left, right};
  return intern(std::move(n));
}

FormulaId FormulaArena::mk_globally(FormulaId child) {
  FormulaNode n;
  n.kind = FormulaKind::Globally;
  n.children = {child};
  return intern(std::move(n));
}

FormulaId FormulaArena::mk_eventually(FormulaId child) {
  FormulaNode n;
  n.kind = FormulaKind::Eventually;
  n.children = {child};
  return intern(std::move(n));
}

namespace {

// Precedence levels for printing: -> (1) < | (2) < & (3) < U (4) < unary (5).
int print_level(const FormulaArena& a, FormulaId id) {
  const FormulaNode& n = a.node(id);
  switch (n.kind) {
    case FormulaKind::Apply:
      switch (n.op) {
        case OpKind::Implies: return 1;
        case OpKind::Or: return 2;
        case OpKind::And: return 3;
        case OpKind::Neg: return 5;
        default: return 6;  // function syntax
      }
    case FormulaKind::Until: return 4;
    case FormulaKind::Next:
    case FormulaKind::Globally:
    case FormulaKind::Eventually:
      return 5;
    default:
      return 6;
  }
}

void print(const FormulaArena& a, FormulaId id, int parent_level, std::string& out) {
  const FormulaNode& n = a.node(id);
  int level = print_level(a, id);
  bool paren = level < parent_level;
  if (paren) out += '(';
  switch (n.kind) {
    case FormulaKind::True: out += "true"; break;
    case FormulaKind::False: out += "false"; break;
    case FormulaKind::Atom: out += n.atom_name; break;
    case FormulaKind::Next:
      out += "X ";
      print(a, n.children[0], 5, out);
      break;
    case FormulaKind::Globally:
      out += "G ";
      print(a, n.children[0], 5, out);
      break;
    case FormulaKind::Eventually:
      out += "F ";
      print(a, n.children[0], 5, out);
      break;
    case FormulaKind::Until:
      print(a, n.children[0], 5, out);
      out += " U ";
      print(a, n.children[1], 5, out);
      break;
    case FormulaKind::Apply:
      switch (n.op) {
        case OpKind::Neg:
          out += '!';
          print(a, n.children[0], 6, out);
          break;
        case OpKind::And:
          print(a, n.children[0], 3, out);
          out += " & ";
          print(a, n.children[1], 4, out);
          break;
        case OpKind::Or:
          print(a, n.children[0], 2, out);
          out += " | ";
          print(a, n.children[1], 3, out);
          break;
        case OpKind::Implies:
          print(a, n.children[0], 2, out);
          out += " -> ";
          print(a, n.children[1], 1, out);
          break;
        case OpKind::Factor:
          out += "factor(" + ge::to_string(n.lambda) + ", ";
          print(a, n.children[0], 0, out);
          out += ')';
          break;
        case OpKind::Wavg:
          out += "wavg(" + ge::to_string(n.lambda) + ", ";
          print(a, n.children[0], 0, out);
          out += ", ";
          print(a, n.children[1], 0, out);
          out += ')';
          break;
      }
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string FormulaArena::to_string(FormulaId id) const {
  std::string out;
  print(*this, id, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const SignalPartition& sig;
  FormulaArena& arena;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos); }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool eat_arrow() {
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      return true;
    }
    return false;
  }

  bool peek_ident_start() {
    skip_ws();
    return pos < text.size() &&
           (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_');
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  Rational rational() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
      ++pos;
    auto r = parse_rational(text.substr(start, pos - start));
    if (!r) fail("expected rational constant n/d");
    if (*r < Rational(0) || *r > Rational(1)) fail("rational constant outside [0,1]");
    return *r;
  }

  FormulaId parse() {
    FormulaId f = implies();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input");
    return f;
  }

  FormulaId implies() {  // right-associative
    FormulaId left = disj();
    if (eat_arrow()) return arena.mk_implies(left, implies());
    return left;
  }

  FormulaId disj() {
    FormulaId f = conj();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        f = arena.mk_or(f, conj());
      } else {
        return f;
      }
    }
  }

  FormulaId conj() {
    FormulaId f = until();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '&') {
        ++pos;
        f = arena.mk_and(f, until());
      } else {
        return f;
      }
    }
  }

  bool peek_until_keyword() {
    skip_ws();
    if (pos >= text.size() || text[pos] != 'U') return false;
    std::size_t after = pos + 1;
    return after >= text.size() ||
           !(std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_');
  }

  FormulaId until() {  // right-associative
    FormulaId left = unary();
    if (peek_until_keyword()) {
      ++pos;
      return arena.mk_until(left, until());
    }
    return left;
  }

  FormulaId unary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of formula");
    char c = text[pos];
    if (c == '!') {
      ++pos;
      return arena.mk_neg(unary());
    }
    if (c == '(') {
      ++pos;
      FormulaId f = implies();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (!peek_ident_start()) fail("expected formula");
    std::size_t word_pos = pos;
    std::string word = ident();
    if (word == "X") return arena.mk_next(unary());
    if (word == "G") return arena.mk_globally(unary());
    if (word == "F") return arena.mk_eventually(unary());
    if (word == "true") return arena.mk_true();
    if (word == "false") return arena.mk_false();
    if (word == "factor" || word == "wavg") {
      if (!eat('(')) fail("expected '(' after " + word);
      Rational lambda = rational();
      if (!eat(',')) fail("expected ','");
      FormulaId first = implies();
      if (word == "factor") {
        if (!eat(')')) fail("expected ')'");
        return arena.mk_factor(lambda, first);
      }
      if (!eat(',')) fail("expected ','");
      FormulaId second = implies();
      if (!eat(')')) fail("expected ')'");
      return arena.mk_wavg(lambda, first, second);
    }
    if (word == "U") {
      pos = word_pos;
      fail("'U' is an infix operator");
    }
    int idx = sig.signal_index(word);
    if (idx < 0) {
      pos = word_pos;
      fail("unknown signal '" + word + "'");
    }
    return arena.mk_atom(word, idx);
  }
};

}  // namespace

FormulaId parse_formula(std::string_view text, const SignalPartition& sig, FormulaArena& arena) {
  Parser p{text, 0, sig, arena};
  return p.parse();
}

// ---------------------------------------------------------------------------
// Closure, value sets, fragment test
// ---------------------------------------------------------------------------

namespace {

void closure_rec(const FormulaArena& a, FormulaId id, std::set<FormulaId>& seen,
                 std::vector<FormulaId>& out) {
  if (seen.count(id)) return;
  seen.insert(id);
  for (FormulaId c : a.node(id).children) closure_rec(a, c, seen, out);
  out.push_back(id);
}

}  // namespace

std::vector<FormulaId> closure(const FormulaArena& arena, FormulaId root) {
  std::set<FormulaId> seen;
  std::vector<FormulaId> out;
  closure_rec(arena, root, seen, out);
  return out;
}

std::vector<Rational> value_set(const FormulaArena& arena, FormulaId root) {
  std::unordered_map<FormulaId, std::vector<Rational>> memo;
  auto rec = [&](auto&& self, FormulaId id) -> const std::vector<Rational>& {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const FormulaNode& n = arena.node(id);
    std::set<Rational> vals;
    switch (n.kind) {
      case FormulaKind::True: vals = {Rational(1)}; break;
      case FormulaKind::False: vals = {Rational(0)}; break;
      case FormulaKind::Atom: vals = {Rational(0), Rational(1)}; break;
      case FormulaKind::Next:
      case FormulaKind::Globally:
      case FormulaKind::Eventually: {
        const auto& c = self(self, n.children[0]);
        vals.insert(c.begin(), c.end());
        break;
      }
      case FormulaKind::Until: {
        // Sound superset: each attainable value is a max of mins of child
        // values, so it lies in V(left) | V(right).
        const auto& l = self(self, n.children[0]);
        const auto& r = self(self, n.children[1]);
        vals.insert(l.begin(), l.end());
        vals.insert(r.begin(), r.end());
        break;
      }
      case FormulaKind::Apply: {
        std::vector<const std::vector<Rational>*> child_sets;
        for (FormulaId c : n.children) child_sets.push_back(&self(self, c));
        std::vector<Rational> args(child_sets.size());
        auto prod = [&](auto&& go, std::size_t i) -> void {
          if (i == child_sets.size()) {
            vals.insert(apply_op(n.op, n.lambda, args));
            return;
          }
          for (const Rational& v : *child_sets[i]) {
            args[i] = v;
            go(go, i + 1);
          }
        };
        prod(prod, 0);
        break;
      }
    }
    auto [pos, _] = memo.emplace(id, std::vector<Rational>(vals.begin(), vals.end()));
    return pos->second;
  };
  return rec(rec, root);
}

bool is_boolean_fragment(const FormulaArena& arena, FormulaId root) {
  for (FormulaId id : closure(arena, root)) {
    const FormulaNode& n = arena.node(id);
    if (n.kind == FormulaKind::Apply && (n.op == OpKind::Factor || n.op == OpKind::Wavg))
      return false;
  }
  return true;
}

}  // namespace ge
