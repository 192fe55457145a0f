#pragma once

#include <nlohmann/json_fwd.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ge/lasso.hpp"
#include "ge/signals.hpp"

namespace ge {

using StateSet = std::vector<int>;  // sorted, duplicate-free

// Nondeterministic Buchi automaton over an explicit alphabet, with a
// generalized acceptance list (singleton = plain Buchi, empty = every
// infinite run accepts). States may carry an atomic-valuation annotation
// (which alphabet bits the state pins, and to what); products use it to
// prune pairs with contradictory valuations.
struct Nbw {
  Alphabet alphabet;
  int state_count = 0;
  std::vector<int> initial;
  std::vector<std::vector<std::vector<int>>> trans;  // [state][letter] -> sorted targets
  std::vector<std::vector<int>> acceptance;          // generalized Buchi sets
  std::vector<Letter> atom_mask;                     // optional, per state
  std::vector<Letter> atom_val;

  bool has_annotation() const { return !atom_mask.empty(); }
  bool is_plain_buchi() const { return acceptance.size() == 1; }
  void validate() const;  // throws std::invalid_argument on structural breakage
};

// Universal co-Buchi view: the same structure read with "every run visits
// each rejecting set only finitely often". Built by dualizing an NBW; keeps
// a handle to that dual NBW (their languages are complements).
struct Ucw {
  Nbw structure;                 // rejecting sets = structure.acceptance
  std::shared_ptr<Nbw> dual;     // the NBW this UCW was dualized from
};

// Deterministic finite-word automaton; total transition function.
struct Dfw {
  Alphabet alphabet;
  int state_count = 0;
  int initial = 0;
  std::vector<std::vector<int>> trans;  // [state][letter] -> state
  std::vector<char> accepting;
  std::vector<StateSet> macro;  // provenance when built by subset construction

  void validate() const;
  int run(const std::vector<Letter>& word) const;
  bool accepts(const std::vector<Letter>& word) const { return accepting[run(word)]; }
};

// --- constructions ---------------------------------------------------------

// Intersection; concatenates the generalized acceptance lists (one product
// copy). With prune_inconsistent, annotated state pairs whose pinned atoms
// contradict are dropped; the language is the same either way.
Nbw nbw_product(const Nbw& a, const Nbw& b, bool prune_inconsistent = true);

// Disjoint-state union. Shorter acceptance lists are padded with all-state
// sets, which a run inside one component satisfies vacuously.
Nbw nbw_union(const std::vector<const Nbw*>& parts);

// Existential projection on the inputs: the result reads 2^I and moves to
// every target reachable under some output completion. Output atoms are
// erased from annotations.
Nbw exists_project(const Nbw& a, const SignalPartition& sig);

// Re-expose an input-alphabet automaton over 2^(I u O); output bits ignored.
Nbw lift_to_joint(const Nbw& a, const SignalPartition& sig);

// Counter product collapsing generalized acceptance to a single set.
Nbw degeneralize(const Nbw& a);

// Structural reinterpretation as a universal co-Buchi automaton (language =
// complement). Degeneralizes first so the co-Buchi condition is a single set.
Ucw dualize(const Nbw& a);

// Rank-based complementation, ranks <= 2|states|; input must be plain Buchi.
Nbw complement_nbw(const Nbw& a);

// Reachable subset construction; acceptance left unset (all false).
Dfw subset_construct(const Nbw& a);

// States with a nonempty residual language.
std::vector<char> live_state_mask(const Nbw& a);
StateSet live_states(const Nbw& a);

bool is_empty(const Nbw& a);
bool is_universal(const Nbw& a);

// Exact membership of u.v^w via a loop-synchronized product.
bool lasso_member(const Nbw& a, const Lasso& w);

// Some accepting lasso, if the language is nonempty.
std::optional<Lasso> emptiness_witness(const Nbw& a);

// Reachable trim + dead-state removal + bisimulation quotient. Language-
// preserving; annotations participate in the quotient signature.
Nbw reduce(const Nbw& a);

// --- universality oracle ---------------------------------------------------

// Ramsey-style universality: the transition-profile monoid is generated
// once per automaton, after which queries for arbitrary initial sets are
// answered from an antichain of "good origin" sets. Exact; throws
// std::runtime_error if the monoid exceeds the profile cap.
class UniversalityOracle {
 public:
  explicit UniversalityOracle(const Nbw& a, std::size_t profile_cap = 500000);
  ~UniversalityOracle();
  UniversalityOracle(UniversalityOracle&&) noexcept;
  UniversalityOracle& operator=(UniversalityOracle&&) noexcept;

  // Is every word accepted when starting from `initial`?
  bool universal_from(const StateSet& initial) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// --- serialization ---------------------------------------------------------

nlohmann::ordered_json nbw_to_json(const Nbw& a);
Nbw nbw_from_json(const nlohmann::json& j);
std::string nbw_to_dot(const Nbw& a, const std::string& name = "nbw");
std::string nbw_to_hoa(const Nbw& a, bool co_buchi = false);
nlohmann::ordered_json dfw_to_json(const Dfw& d);
Dfw dfw_from_json(const nlohmann::json& j);
std::string dfw_to_dot(const Dfw& d, const std::string& name = "dfw");

}  // namespace ge
