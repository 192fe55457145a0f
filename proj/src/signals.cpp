#include "ge/signals.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace ge {

std::string Alphabet::letter_name(Letter l) const {
  std::string out;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (l & (Letter{1} << i)) {
      if (!out.empty()) out += ',';
      out += signals[i];
    }
  }
  return out.empty() ? "-" : out;
}

std::optional<Letter> Alphabet::parse_letter(std::string_view text) const {
  Letter l = 0;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip();
  if (i < text.size() && text[i] == '-') {
    ++i;
    skip();
    return i == text.size() ? std::optional<Letter>(0) : std::nullopt;
  }
  while (i < text.size()) {
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',')
      ++i;
    std::string_view name = text.substr(start, i - start);
    auto it = std::find(signals.begin(), signals.end(), name);
    if (it == signals.end()) return std::nullopt;
    l |= Letter{1} << (it - signals.begin());
    skip();
  }
  return l;
}

SignalPartition::SignalPartition(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                 std::size_t max_signals)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  if (inputs_.size() + outputs_.size() > max_signals)
    throw std::invalid_argument("signal partition exceeds the explicit-alphabet cap of " +
                                std::to_string(max_signals) + " signals");
  std::unordered_set<std::string> seen;
  for (const auto& group : {inputs_, outputs_}) {
    for (const auto& s : group) {
      if (s.empty()) throw std::invalid_argument("empty signal name");
      if (!seen.insert(s).second) throw std::invalid_argument("duplicate signal name: " + s);
    }
  }
}

Alphabet SignalPartition::joint_alphabet() const {
  std::vector<std::string> all = inputs_;
  all.insert(all.end(), outputs_.begin(), outputs_.end());
  return Alphabet{std::move(all)};
}

int SignalPartition::signal_index(std::string_view name) const {
  for (std::size_t i = 0; i < inputs_.size(); ++i)
    if (inputs_[i] == name) return static_cast<int>(i);
  for (std::size_t i = 0; i < outputs_.size(); ++i)
    if (outputs_[i] == name) return static_cast<int>(inputs_.size() + i);
  return -1;
}

}  // namespace ge
