#pragma once

#include <map>
#include <string>
#include <vector>

#include "ge/compile.hpp"

namespace ge {

enum class MonitorColor { Green, Red, Blue };

std::string color_name(MonitorColor c);

// v parameterizes the flag level; v = 1 is the Boolean reading.
struct MonitorKind {
  MonitorColor color = MonitorColor::Green;
  Rational threshold{1};
};

// Prefix classifier over input words:
//   green: some output prefix leaves every input continuation v-hopeful
//          (light v-green);
//   red:   no output prefix and continuation ever reaches value >= v;
//   blue:  some output prefix forces value >= v on every continuation.
// Accepting states are absorbing: a raised flag stays up.
Dfw build_monitor(const FormulaArena& arena, FormulaId formula, const SignalPartition& sig,
                  const MonitorKind& kind);

struct MonitorBundle {
  SignalPartition sig;
  std::vector<std::pair<MonitorKind, Dfw>> monitors;
  std::string formula_text;  // provenance
};

MonitorBundle build_monitor_bundle(const FormulaArena& arena, FormulaId formula,
                                   const SignalPartition& sig,
                                   const std::vector<MonitorKind>& kinds);

// Flag name -> raised, e.g. {"green@1": true}. Flags are monotone along
// prefix extensions.
std::map<std::string, bool> run_monitors(const MonitorBundle& bundle,
                                         const std::vector<Letter>& input_prefix);

std::string monitor_flag_name(const MonitorKind& kind);

// Throws std::logic_error if some successor of an accepting state is not
// accepting; monitors must satisfy this structurally.
void check_absorbing(const Dfw& d);

}  // namespace ge
