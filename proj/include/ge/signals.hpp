#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ge {

// A letter is a subset of an alphabet's signals, encoded as a bitmask with
// bit i standing for signals[i].
using Letter = std::uint32_t;

struct Alphabet {
  std::vector<std::string> signals;

  std::size_t letter_count() const { return std::size_t{1} << signals.size(); }
  bool operator==(const Alphabet&) const = default;

  // "-" for the empty letter, otherwise comma-joined signal names.
  std::string letter_name(Letter l) const;
  // Accepts "-", "", and names joined by ',' or whitespace.
  std::optional<Letter> parse_letter(std::string_view text) const;
};

inline constexpr std::size_t kDefaultMaxSignals = 8;

// Ordered, disjoint input and output signal sets. Joint letters place input
// bits low and output bits high, so an input letter is also the joint letter
// with all outputs absent.
class SignalPartition {
 public:
  SignalPartition() = default;
  SignalPartition(std::vector<std::string> inputs, std::vector<std::string> outputs,
                  std::size_t max_signals = kDefaultMaxSignals);

  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  int input_count() const { return static_cast<int>(inputs_.size()); }
  int output_count() const { return static_cast<int>(outputs_.size()); }

  Alphabet input_alphabet() const { return Alphabet{inputs_}; }
  Alphabet output_alphabet() const { return Alphabet{outputs_}; }
  Alphabet joint_alphabet() const;

  // Index in the joint signal order (inputs then outputs); -1 if unknown.
  int signal_index(std::string_view name) const;
  bool is_input_index(int joint_index) const { return joint_index >= 0 && joint_index < input_count(); }

  Letter input_mask() const { return static_cast<Letter>((1u << inputs_.size()) - 1); }
  Letter zip(Letter input, Letter output) const {
    return static_cast<Letter>(input | (output << inputs_.size()));
  }
  Letter project_input(Letter joint) const { return joint & input_mask(); }
  Letter output_part(Letter joint) const { return joint >> inputs_.size(); }

  std::size_t input_letter_count() const { return std::size_t{1} << inputs_.size(); }
  std::size_t output_letter_count() const { return std::size_t{1} << outputs_.size(); }
  std::size_t joint_letter_count() const { return std::size_t{1} << (inputs_.size() + outputs_.size()); }

 private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

}  // namespace ge
