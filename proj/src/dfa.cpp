#include "syncgame/dfa.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "syncgame/errors.hpp"

namespace syncgame {

// ---------------------------------------------------------------------------
// StateSet

StateSet::StateSet(std::size_t universe)
    : universe_(universe), bits_((universe + 63) / 64, 0) {}

StateSet StateSet::full(std::size_t universe) {
  StateSet s(universe);
  for (State q = 0; q < universe; ++q) s.insert(q);
  return s;
}

StateSet StateSet::of(std::size_t universe, std::initializer_list<State> states) {
  StateSet s(universe);
  for (State q : states) s.insert(q);
  return s;
}

StateSet StateSet::from_mask(std::size_t universe, StateMask mask) {
  if (universe > kMaxMaskStates) {
    throw PreconditionError("mask conversion needs at most 64 states");
  }
  StateSet s(universe);
  if (universe > 0) s.bits_[0] = mask & full_mask(universe);
  return s;
}

bool StateSet::contains(State q) const {
  return q < universe_ && ((bits_[q / 64] >> (q % 64)) & 1U) != 0;
}

void StateSet::insert(State q) {
  if (q >= universe_) throw PreconditionError("state out of range");
  bits_[q / 64] |= std::uint64_t{1} << (q % 64);
}

void StateSet::erase(State q) {
  if (q < universe_) bits_[q / 64] &= ~(std::uint64_t{1} << (q % 64));
}

std::size_t StateSet::size() const noexcept {
  std::size_t total = 0;
  for (auto word : bits_) total += static_cast<std::size_t>(std::popcount(word));
  return total;
}

bool StateSet::is_subset_of(const StateSet& other) const {
  if (other.universe_ != universe_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if ((bits_[i] & ~other.bits_[i]) != 0) return false;
  }
  return true;
}

std::vector<State> StateSet::members() const {
  std::vector<State> out;
  for (State q = 0; q < universe_; ++q) {
    if (contains(q)) out.push_back(q);
  }
  return out;
}

StateMask StateSet::mask() const {
  if (universe_ > kMaxMaskStates) {
    throw PreconditionError("mask conversion needs at most 64 states");
  }
  return bits_.empty() ? 0 : bits_[0];
}

std::string StateSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (State q : members()) {
    if (!first) out += ',';
    out += std::to_string(q);
    first = false;
  }
  return out + "}";
}

std::string mask_to_string(StateMask m) {
  std::string out = "{";
  bool first = true;
  for (State q = 0; m != 0; ++q, m >>= 1) {
    if ((m & 1U) == 0) continue;
    if (!first) out += ',';
    out += std::to_string(q);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(std::size_t states, std::vector<std::string> alphabet,
         std::vector<State> table, std::optional<std::string> name)
    : states_(states),
      alphabet_(std::move(alphabet)),
      table_(std::move(table)),
      name_(std::move(name)) {
  if (states_ == 0) throw PreconditionError("a DFA needs at least one state");
  if (alphabet_.empty()) throw PreconditionError("alphabet must be nonempty");
  std::unordered_set<std::string> seen;
  for (const auto& letter : alphabet_) {
    if (letter.empty()) throw PreconditionError("empty letter symbol");
    if (!seen.insert(letter).second) {
      throw PreconditionError("duplicate letter '" + letter + "'");
    }
  }
  if (table_.size() != states_ * alphabet_.size()) {
    throw PreconditionError("transition table has wrong size");
  }
  for (State t : table_) {
    if (t >= states_) throw PreconditionError("transition target out of range");
  }
}

State Dfa::apply(State q, const Word& w) const {
  for (Letter a : w) q = next(q, a);
  return q;
}

std::vector<State> Dfa::letter_map(Letter a) const {
  std::vector<State> out(states_);
  for (State q = 0; q < states_; ++q) out[q] = next(q, a);
  return out;
}

std::optional<Letter> Dfa::letter_index(std::string_view symbol) const {
  for (Letter a = 0; a < alphabet_.size(); ++a) {
    if (alphabet_[a] == symbol) return a;
  }
  return std::nullopt;
}

namespace {

bool single_char_alphabet(const std::vector<std::string>& alphabet) {
  return std::all_of(alphabet.begin(), alphabet.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

}  // namespace

Word Dfa::parse_word(std::string_view text) const {
  Word w;
  auto lookup = [&](std::string_view token) {
    auto a = letter_index(token);
    if (!a) throw PreconditionError("unknown letter '" + std::string(token) + "'");
    w.push_back(*a);
  };
  const bool has_space = std::any_of(text.begin(), text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  });
  if (has_space) {
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) lookup(token);
  } else if (single_char_alphabet(alphabet_)) {
    for (char c : text) lookup(std::string_view(&c, 1));
  } else if (!text.empty()) {
    lookup(text);
  }
  return w;
}

std::string Dfa::format_word(const Word& w) const {
  const bool compact = single_char_alphabet(alphabet_);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += alphabet_.at(w[i]);
  }
  return out;
}

Dfa Dfa::with_name(std::optional<std::string> name) const {
  Dfa copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

StateSet apply_word(const Dfa& dfa, const StateSet& s, const Word& w) {
  if (s.universe() != dfa.size()) {
    throw PreconditionError("state set does not belong to this DFA");
  }
  StateSet current = s;
  for (Letter a : w) {
    StateSet next(dfa.size());
    for (State q : current.members()) next.insert(dfa.next(q, a));
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// SubsetAction

SubsetAction::SubsetAction(const Dfa& dfa)
    : states_(dfa.size()), letters_(dfa.alphabet_size()) {
  if (states_ > kMaxMaskStates) {
    throw PreconditionError("subset action needs at most 64 states");
  }
  table_.assign(letters_ * kChunks * 256, 0);
  for (Letter a = 0; a < letters_; ++a) {
    for (std::size_t c = 0; c < kChunks; ++c) {
      for (std::size_t byte = 0; byte < 256; ++byte) {
        StateMask out = 0;
        for (std::size_t bit = 0; bit < 8; ++bit) {
          const std::size_t q = c * 8 + bit;
          if (((byte >> bit) & 1U) != 0 && q < states_) {
            out |= StateMask{1} << dfa.next(static_cast<State>(q), a);
          }
        }
        table_[(a * kChunks + c) * 256 + byte] = out;
      }
    }
  }
}

}  // namespace syncgame
