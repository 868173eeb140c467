#include "syncgame/dfa_format.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "syncgame/errors.hpp"
#include "text_util.hpp"

namespace syncgame {

namespace {

using detail::Token;
using detail::parse_index;
using detail::tokenize;

struct Edge {
  Token from;
  Token letter;
  Token to;
  std::size_t line;
};

}  // namespace

Dfa parse_dfa(std::istream& in) {
  std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_dfa(content);
}

Dfa parse_dfa(std::string_view text) {
  std::optional<std::size_t> states;
  std::optional<std::vector<std::string>> alphabet;
  std::optional<std::string> name;
  bool in_transitions = false;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t last_line = 1;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    last_line = line_no;

    if (in_transitions) {
      if (tokens.size() != 3) {
        throw ParseError(line_no, tokens.front().column,
                         "expected '<state> <letter> <state>'");
      }
      edges.push_back({tokens[0], tokens[1], tokens[2], line_no});
      continue;
    }

    const std::string& key = tokens.front().text;
    if (key == "name:") {
      auto start = line.find("name:") + 5;
      std::string label(line.substr(start));
      label.erase(0, label.find_first_not_of(" \t"));
      label.erase(label.find_last_not_of(" \t\r") + 1);
      name = label;
    } else if (key == "states:") {
      if (states) throw ParseError(line_no, 1, "duplicate 'states:' line");
      if (tokens.size() != 2) throw ParseError(line_no, 1, "expected 'states: <n>'");
      auto n = parse_index(tokens[1].text);
      if (!n || *n == 0) {
        throw ParseError(line_no, tokens[1].column, "state count must be a positive integer");
      }
      states = *n;
    } else if (key == "alphabet:") {
      if (alphabet) throw ParseError(line_no, 1, "duplicate 'alphabet:' line");
      if (tokens.size() < 2) throw ParseError(line_no, 1, "alphabet must be nonempty");
      std::vector<std::string> letters;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (std::find(letters.begin(), letters.end(), tokens[i].text) != letters.end()) {
          throw ParseError(line_no, tokens[i].column, "duplicate letter '" + tokens[i].text + "'");
        }
        letters.push_back(tokens[i].text);
      }
      alphabet = std::move(letters);
    } else if (key == "transitions:") {
      if (tokens.size() != 1) throw ParseError(line_no, tokens[1].column, "unexpected text after 'transitions:'");
      if (!states) throw ParseError(line_no, 1, "'states:' must precede 'transitions:'");
      if (!alphabet) throw ParseError(line_no, 1, "'alphabet:' must precede 'transitions:'");
      in_transitions = true;
    } else {
      throw ParseError(line_no, tokens.front().column, "unexpected '" + key + "'");
    }
  }

  if (!states) throw ParseError(last_line, 1, "missing 'states:' line");
  if (!alphabet) throw ParseError(last_line, 1, "missing 'alphabet:' line");
  if (!in_transitions) throw ParseError(last_line, 1, "missing 'transitions:' section");

  const std::size_t n = *states;
  const std::size_t k = alphabet->size();

  // Numeric names keep their value when every name is a valid index.
  bool numeric = true;
  for (const auto& e : edges) {
    for (const Token* t : {&e.from, &e.to}) {
      auto v = parse_index(t->text);
      if (!v || *v >= n) numeric = false;
    }
  }
  std::map<std::string, State> index_of;
  auto resolve = [&](const Token& t, std::size_t line) -> State {
    if (numeric) return static_cast<State>(*parse_index(t.text));
    auto it = index_of.find(t.text);
    if (it != index_of.end()) return it->second;
    if (index_of.size() == n) {
      throw ParseError(line, t.column, "more than " + std::to_string(n) + " distinct state names");
    }
    const auto idx = static_cast<State>(index_of.size());
    index_of.emplace(t.text, idx);
    return idx;
  };

  constexpr State kUnset = ~State{0};
  std::vector<State> table(n * k, kUnset);
  for (const auto& e : edges) {
    const State from = resolve(e.from, e.line);
    auto letter = std::find(alphabet->begin(), alphabet->end(), e.letter.text);
    if (letter == alphabet->end()) {
      throw ParseError(e.line, e.letter.column, "unknown letter '" + e.letter.text + "'");
    }
    const State to = resolve(e.to, e.line);
    const auto a = static_cast<std::size_t>(letter - alphabet->begin());
    State& slot = table[from * k + a];
    if (slot != kUnset && slot != to) {
      throw ParseError(e.line, e.from.column,
                       "conflicting duplicate transition for (" + e.from.text + ", " + e.letter.text + ")");
    }
    slot = to;
  }

  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < k; ++a) {
      if (table[q * k + a] != kUnset) continue;
      std::string state_name = std::to_string(q);
      if (!numeric) {
        state_name = "#" + std::to_string(q);
        for (const auto& [label, idx] : index_of) {
          if (idx == q) state_name = label;
        }
      }
      throw ParseError(last_line, 1,
                       "incomplete table: missing transition (" + state_name + ", " + (*alphabet)[a] + ")");
    }
  }

  return Dfa(n, std::move(*alphabet), std::move(table), std::move(name));
}

std::string serialize_dfa(const Dfa& dfa) {
  std::ostringstream out;
  if (dfa.name()) out << "name: " << *dfa.name() << '\n';
  out << "states: " << dfa.size() << '\n';
  out << "alphabet:";
  for (const auto& letter : dfa.alphabet()) out << ' ' << letter;
  out << "\ntransitions:\n";
  for (State q = 0; q < dfa.size(); ++q) {
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      out << q << ' ' << dfa.alphabet()[a] << ' ' << dfa.next(q, a) << '\n';
    }
  }
  return out.str();
}

}  // namespace syncgame
