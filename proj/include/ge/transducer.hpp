#pragma once

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

#include "ge/compile.hpp"
#include "ge/monitors.hpp"

namespace ge {

// Mealy-style machine: output for a nonempty input history is the label of
// the state reached after consuming it. Environment counterstrategies use
// the same shape with the roles of the partitions swapped (they read output
// letters and label states with input letters).
struct Transducer {
  SignalPartition sig;
  int state_count = 0;
  int initial = 0;
  std::vector<std::vector<int>> trans;  // [state][input letter] -> state
  std::vector<Letter> label;            // [state] -> output letter

  void validate() const;
  int step(int state, Letter input) const { return trans[state][input]; }
  Letter output_for(const std::vector<Letter>& input_history) const;
};

// The computation x (x) f(x) as a lasso: simulated until the (state, loop
// position) pair repeats, then split at the repeat.
Lasso run_transducer_lasso(const Transducer& t, const Lasso& x);

// Interprets the transducer as a one-run-per-input-word automaton over the
// joint alphabet (all states accepting).
Nbw transducer_to_nbw(const Transducer& t);

// max { v in V(psi) : x is v-hopeful }, i.e. [[x, exists O. psi]]; exact.
Rational hopefulness_value(const FormulaArena& arena, FormulaId psi, const Lasso& x,
                           const SignalPartition& sig);

// Precompiled per-value projection automata for repeated hopefulness queries.
class HopefulnessOracle {
 public:
  HopefulnessOracle(const FormulaArena& arena, FormulaId psi, const SignalPartition& sig);
  Rational value(const Lasso& x) const;

 private:
  std::vector<std::pair<Rational, Nbw>> tiers_;  // descending thresholds
};

struct LassoViolation {
  Lasso input;
  Rational hopeful{0};   // variant-relevant requirement level
  Rational achieved{0};
  std::string detail;
};

struct LassoReport {
  std::size_t lassos_checked = 0;
  std::vector<LassoViolation> violations;
  bool pass() const { return violations.empty(); }
};

// Enumerates every input lasso with |u| <= max_u, |v| <= max_v and checks
// the variant's defining condition via the evaluation oracles. Refuses with
// a size estimate when the enumeration would exceed `cap` lassos.
LassoReport verify_ge_on_lassos(const FormulaArena& arena, const Transducer& t, const GeSpec& spec,
                                int max_u, int max_v, std::size_t cap = 200000);

// --- serialization ---------------------------------------------------------

nlohmann::ordered_json transducer_to_json(const Transducer& t);
Transducer transducer_from_json(const nlohmann::json& j);
std::string transducer_to_dot(const Transducer& t, const std::string& name = "transducer");

// --- interactive stepping ---------------------------------------------------

struct SessionStep {
  Letter input;
  Letter output;
  std::map<std::string, bool> flags;
};

// Replaying the log from scratch reproduces the state; single-owner.
class SimulationSession {
 public:
  SimulationSession(const Transducer& t, const MonitorBundle* monitors);

  SessionStep advance(Letter input);
  const std::vector<SessionStep>& log() const { return log_; }
  int transducer_state() const { return state_; }

 private:
  const Transducer& t_;
  const MonitorBundle* monitors_;
  int state_;
  std::vector<int> monitor_states_;
  std::vector<SessionStep> log_;
};

}  // namespace ge
