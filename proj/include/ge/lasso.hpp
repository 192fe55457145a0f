#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ge/formula.hpp"
#include "ge/rational.hpp"
#include "ge/signals.hpp"

namespace ge {

enum class LassoTag { Input, Output, Joint };

// Ultimately periodic word prefix.loop^w; the finitely representable class
// every oracle and membership check operates on.
struct Lasso {
  std::vector<Letter> prefix;
  std::vector<Letter> loop;  // nonempty
  LassoTag tag = LassoTag::Joint;

  std::size_t period_start() const { return prefix.size(); }
  std::size_t size() const { return prefix.size() + loop.size(); }

  // Letter at an absolute position, folding the loop.
  Letter at(std::size_t pos) const {
    if (pos < prefix.size()) return prefix[pos];
    return loop[(pos - prefix.size()) % loop.size()];
  }
  // Canonical position in [0, size()) for an absolute position.
  std::size_t norm(std::size_t pos) const {
    if (pos < prefix.size()) return pos;
    return prefix.size() + (pos - prefix.size()) % loop.size();
  }
  std::size_t step(std::size_t normed) const {
    std::size_t next = normed + 1;
    return next < size() ? next : prefix.size();
  }
};

// Merges an input lasso with an output lasso of the same shape.
Lasso zip_lassos(const Lasso& x, const Lasso& y, const SignalPartition& sig);

// Drops the output bits; w|I.
Lasso project_input(const Lasso& w, const SignalPartition& sig);

// "u ; v" or just "v": letters separated by spaces, each "-" or
// comma-joined signal names.
std::optional<Lasso> parse_lasso(std::string_view text, const Alphabet& alphabet, LassoTag tag);
std::string lasso_to_string(const Lasso& w, const Alphabet& alphabet);

// Exact satisfaction value of the formula on the lasso. Until/Eventually
// scan max-of-min candidates over |u| + |v|*(|V(left)|+1) positions; the
// running minimum can strictly drop at most |V(left)| times and the right
// operand is periodic on the loop, so the scan window is exact.
Rational eval_lasso(const FormulaArena& arena, FormulaId formula, const Lasso& w,
                    const SignalPartition& sig);

}  // namespace ge
