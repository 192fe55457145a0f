#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ge/compile.hpp"
#include "ge/transducer.hpp"

namespace ge {

// Turn-based safety game from the k-counting construction over a UCW: game
// positions track, per UCW state, the maximal number of rejecting states any
// run prefix has visited (capped at k+1 = unsafe). The environment picks
// input letters, the system answers with output letters; keeping every
// counter <= k forever wins for the system.
struct SafetyGame {
  SignalPartition sig;
  int bound = 0;
  // Environment positions are counting functions; system positions are
  // (env position, input letter) pairs reached after the environment move.
  std::vector<std::vector<int>> env_moves;  // [env pos][input] -> sys pos
  std::vector<std::vector<int>> sys_moves;  // [sys pos][output] -> env pos
  std::vector<char> env_unsafe;             // counter overflow positions
  int initial = 0;
  std::vector<std::vector<signed char>> counters;  // per env position (diagnostic)
};

SafetyGame ucw_to_safety_game(const Ucw& u, const SignalPartition& sig, int k);

struct GameSolution {
  std::vector<char> env_winning;  // for the system, per env position
  std::vector<char> sys_winning;  // per sys position
  std::vector<Letter> strategy;   // per winning sys position: chosen output
};

// Exact attractor computation; the positional strategy picks the least
// output letter that stays inside the winning region.
GameSolution solve_safety_game(const SafetyGame& g);

enum class Verdict { Realizable, Unrealizable, Unknown };

std::string verdict_name(Verdict v);

struct SynthesisResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Transducer> transducer;        // Realizable
  std::optional<Transducer> counterstrategy;   // Unrealizable (env machine)
  int k_used = -1;
  int m_used = -1;
  int k_max = 0;
  int m_max = 0;
  std::optional<Lasso> witness;                // verification diagnostics
};

struct SynthOptions {
  int k_max = 8;
  int m_max = 4;
  bool minimize = true;  // Hopcroft-style reduction of the extracted machine
};

// Bounded (Safraless) synthesis: iterate k = 0..k_max on the counting game,
// interleaved with the environment counterstrategy search for Boolean-
// language specs. Resource caps yield Unknown, never a wrong verdict.
SynthesisResult synthesize(const GeSpec& spec, const SynthOptions& opts = {});

// Exact check L(t) subseteq L(spec.ucw) via emptiness of the product of the
// transducer automaton with the dual NBW; returns a violating computation
// lasso when it fails.
bool verify_transducer(const Transducer& t, const GeSpec& spec,
                       std::optional<Lasso>* witness = nullptr);

// Enumerates environment transducers with <= m_max states (outputs read,
// inputs emitted; the environment moves first) and returns the first one
// whose computations all land in the dual language; exact certificate.
std::optional<Transducer> find_env_counterstrategy(const FormulaArena& arena, const GeSpec& spec,
                                                   int m_max);

// Certifies one candidate counterstrategy.
bool env_certifies(const FormulaArena& arena, const GeSpec& spec, const Transducer& env);

// Mealy reduction: merges states with equal labels and successor classes.
Transducer minimize_transducer(const Transducer& t);

struct AgOptimum {
  Rational value{0};                    // largest certified realizable comb value
  std::optional<Transducer> transducer;
  bool exact = false;                   // next image value was refuted (or none above)
  std::optional<Rational> unknown_up_to;  // open interval top when probes were inconclusive
};

// Binary search for the largest realizable comb value over the image
// { comb(v1,v2) : v1 >= v2 in V(psi) }.
AgOptimum optimize_ag(const FormulaArena& arena, FormulaId psi, const CombSpec& comb,
                      const SignalPartition& sig, const SynthOptions& opts = {});

}  // namespace ge
