#include <nlohmann/json.hpp>

#include <sstream>

#include "ge/automata.hpp"

namespace ge {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json alphabet_to_json(const Alphabet& a) { return ordered_json(a.signals); }

Alphabet alphabet_from_json(const json& j) {
  Alphabet a;
  for (const auto& s : j) a.signals.push_back(s.get<std::string>());
  if (a.signals.size() > 16) throw std::invalid_argument("alphabet too large");
  return a;
}

}  // namespace

ordered_json nbw_to_json(const Nbw& a) {
  ordered_json j;
  j["signals"] = alphabet_to_json(a.alphabet);
  j["states"] = a.state_count;
  j["initial"] = a.initial;
  ordered_json trans = ordered_json::array();
  for (int q = 0; q < a.state_count; ++q)
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l)
      if (!a.trans[q][l].empty())
        trans.push_back({{"from", q}, {"letter", a.alphabet.letter_name(l)}, {"to", a.trans[q][l]}});
  j["transitions"] = std::move(trans);
  j["acceptance"] = a.acceptance;
  return j;
}

Nbw nbw_from_json(const json& j) {
  Nbw a;
  a.alphabet = alphabet_from_json(j.at("signals"));
  a.state_count = j.at("states").get<int>();
  a.initial = j.at("initial").get<std::vector<int>>();
  a.trans.assign(a.state_count, std::vector<std::vector<int>>(a.alphabet.letter_count()));
  for (const auto& t : j.at("transitions")) {
    int from = t.at("from").get<int>();
    auto letter = a.alphabet.parse_letter(t.at("letter").get<std::string>());
    if (!letter) throw std::invalid_argument("unknown letter in automaton transition");
    if (from < 0 || from >= a.state_count) throw std::invalid_argument("transition source out of range");
    for (int to : t.at("to").get<std::vector<int>>()) a.trans[from][*letter].push_back(to);
  }
  for (auto& row : a.trans)
    for (auto& targets : row) std::sort(targets.begin(), targets.end());
  a.acceptance = j.at("acceptance").get<std::vector<std::vector<int>>>();
  a.validate();
  return a;
}

std::string nbw_to_dot(const Nbw& a, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  init [shape=point];\n";
  for (int q : a.initial) out << "  init -> s" << q << ";\n";
  for (int q = 0; q < a.state_count; ++q) {
    out << "  s" << q << " [label=\"" << q;
    for (std::size_t j = 0; j < a.acceptance.size(); ++j)
      if (std::binary_search(a.acceptance[j].begin(), a.acceptance[j].end(), q)) out << " F" << j;
    out << "\"];\n";
  }
  for (int q = 0; q < a.state_count; ++q)
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l)
      for (int t : a.trans[q][l])
        out << "  s" << q << " -> s" << t << " [label=\"" << a.alphabet.letter_name(l) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string nbw_to_hoa(const Nbw& a, bool co_buchi) {
  std::ostringstream out;
  out << "HOA: v1\n";
  out << "States: " << a.state_count << "\n";
  for (int q : a.initial) out << "Start: " << q << "\n";
  out << "AP: " << a.alphabet.signals.size();
  for (const auto& s : a.alphabet.signals) out << " \"" << s << "\"";
  out << "\n";
  std::size_t sets = a.acceptance.size();
  if (co_buchi) {
    out << "acc-name: " << (sets <= 1 ? "co-Buchi" : "generalized-co-Buchi " + std::to_string(sets))
        << "\n";
    out << "Acceptance: " << std::max<std::size_t>(sets, 1) << " ";
    if (sets == 0) {
      out << "t";
    } else {
      for (std::size_t j = 0; j < sets; ++j) out << (j ? "|" : "") << "Fin(" << j << ")";
    }
    out << "\n";
  } else {
    out << "acc-name: " << (sets <= 1 ? "Buchi" : "generalized-Buchi " + std::to_string(sets)) << "\n";
    out << "Acceptance: " << std::max<std::size_t>(sets, 1) << " ";
    if (sets == 0) {
      out << "t";
    } else {
      for (std::size_t j = 0; j < sets; ++j) out << (j ? "&" : "") << "Inf(" << j << ")";
    }
    out << "\n";
  }
  out << "properties: explicit-labels trans-labels\n";
  out << "--BODY--\n";
  for (int q = 0; q < a.state_count; ++q) {
    out << "State: " << q;
    std::string marks;
    for (std::size_t j = 0; j < sets; ++j)
      if (std::binary_search(a.acceptance[j].begin(), a.acceptance[j].end(), q))
        marks += (marks.empty() ? "" : " ") + std::to_string(j);
    if (!marks.empty()) out << " {" << marks << "}";
    out << "\n";
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l) {
      if (a.trans[q][l].empty()) continue;
      std::string label;
      for (std::size_t i = 0; i < a.alphabet.signals.size(); ++i) {
        if (!label.empty()) label += "&";
        if (!((l >> i) & 1u)) label += "!";
        label += std::to_string(i);
      }
      if (label.empty()) label = "t";
      for (int t : a.trans[q][l]) out << "  [" << label << "] " << t << "\n";
    }
  }
  out << "--END--\n";
  return out.str();
}

ordered_json dfw_to_json(const Dfw& d) {
  ordered_json j;
  j["signals"] = alphabet_to_json(d.alphabet);
  j["states"] = d.state_count;
  j["initial"] = d.initial;
  ordered_json trans = ordered_json::array();
  for (int q = 0; q < d.state_count; ++q)
    for (Letter l = 0; l < d.alphabet.letter_count(); ++l)
      trans.push_back({{"from", q}, {"letter", d.alphabet.letter_name(l)}, {"to", d.trans[q][l]}});
  j["transitions"] = std::move(trans);
  std::vector<int> acc;
  for (int q = 0; q < d.state_count; ++q)
    if (d.accepting[q]) acc.push_back(q);
  j["accepting"] = acc;
  return j;
}

Dfw dfw_from_json(const json& j) {
  Dfw d;
  d.alphabet = alphabet_from_json(j.at("signals"));
  d.state_count = j.at("states").get<int>();
  d.initial = j.at("initial").get<int>();
  d.trans.assign(d.state_count, std::vector<int>(d.alphabet.letter_count(), -1));
  for (const auto& t : j.at("transitions")) {
    auto letter = d.alphabet.parse_letter(t.at("letter").get<std::string>());
    if (!letter) throw std::invalid_argument("unknown letter in dfw transition");
    d.trans.at(t.at("from").get<int>()).at(*letter) = t.at("to").get<int>();
  }
  d.accepting.assign(d.state_count, 0);
  for (int q : j.at("accepting").get<std::vector<int>>()) d.accepting.at(q) = 1;
  d.validate();
  return d;
}

std::string dfw_to_dot(const Dfw& d, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n";
  out << "  init [shape=point];\n  init -> s" << d.initial << ";\n";
  for (int q = 0; q < d.state_count; ++q)
    out << "  s" << q << " [shape=" << (d.accepting[q] ? "doublecircle" : "circle") << ", label=\""
        << q << "\"];\n";
  for (int q = 0; q < d.state_count; ++q)
    for (Letter l = 0; l < d.alphabet.letter_count(); ++l)
      out << "  s" << q << " -> s" << d.trans[q][l] << " [label=\"" << d.alphabet.letter_name(l)
          << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace ge
