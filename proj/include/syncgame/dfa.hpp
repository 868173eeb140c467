#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace syncgame {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// A finite sequence of letter indices; the empty word is allowed.
using Word = std::vector<Letter>;

/// Subsets of at most this many states fit in one machine word. Subset
/// games and configuration searches are restricted to it.
inline constexpr std::size_t kMaxMaskStates = 64;

using StateMask = std::uint64_t;

inline StateMask full_mask(std::size_t n) {
  return n >= 64 ? ~StateMask{0} : (StateMask{1} << n) - 1;
}

/// A subset of the states 0..universe-1 stored as a fixed-width bit vector.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe);

  static StateSet full(std::size_t universe);
  static StateSet of(std::size_t universe, std::initializer_list<State> states);
  static StateSet from_mask(std::size_t universe, StateMask mask);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(State q) const;
  void insert(State q);
  void erase(State q);
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  bool is_subset_of(const StateSet& other) const;
  std::vector<State> members() const;

  /// Requires universe() <= 64.
  StateMask mask() const;

  /// "{0,2,5}"
  std::string to_string() const;

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend auto operator<=>(const StateSet&, const StateSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Complete deterministic finite automaton over states 0..n-1.
///
/// Letters are ordered as given; every lexicographic tie-break in the
/// library uses that order.
class Dfa {
 public:
  /// `table[q * alphabet.size() + a]` is q·a. Throws PreconditionError on an
  /// empty state set, empty or duplicated alphabet, wrong table size or an
  /// out-of-range target.
  Dfa(std::size_t states, std::vector<std::string> alphabet,
      std::vector<State> table, std::optional<std::string> name = {});

  std::size_t size() const noexcept { return states_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::optional<std::string>& name() const noexcept { return name_; }
  const std::vector<State>& table() const noexcept { return table_; }

  State next(State q, Letter a) const { return table_[q * alphabet_.size() + a]; }
  State apply(State q, const Word& w) const;

  /// Image array of a single letter: result[q] = q·a.
  std::vector<State> letter_map(Letter a) const;

  std::optional<Letter> letter_index(std::string_view symbol) const;

  /// Reads a word. Whitespace-separated tokens are looked up one by one;
  /// without whitespace and with single-character letters, each character
  /// is a letter. Throws PreconditionError on an unknown letter.
  Word parse_word(std::string_view text) const;

  /// Inverse of parse_word: letters are concatenated when all letter
  /// symbols are single characters, space-separated otherwise.
  std::string format_word(const Word& w) const;

  Dfa with_name(std::optional<std::string> name) const;

  /// Structural equality; the name is ignored.
  friend bool operator==(const Dfa& a, const Dfa& b) {
    return a.states_ == b.states_ && a.alphabet_ == b.alphabet_ &&
           a.table_ == b.table_;
  }

 private:
  std::size_t states_;
  std::vector<std::string> alphabet_;
  std::vector<State> table_;
  std::optional<std::string> name_;
};

/// { q·w : q ∈ s }.
StateSet apply_word(const Dfa& dfa, const StateSet& s, const Word& w);

/// Fast subset images for automata with at most 64 states. Each letter's
/// action on a mask is tabulated per byte of the mask.
class SubsetAction {
 public:
  explicit SubsetAction(const Dfa& dfa);

  StateMask image(StateMask mask, Letter a) const {
    StateMask out = 0;
    const auto* t = &table_[a * kChunks * 256];
    for (std::size_t c = 0; mask != 0; ++c, mask >>= 8) {
      out |= t[c * 256 + (mask & 0xff)];
    }
    return out;
  }

  StateMask image(StateMask mask, const Word& w) const {
    for (Letter a : w) mask = image(mask, a);
    return mask;
  }

  std::size_t states() const noexcept { return states_; }
  std::size_t letters() const noexcept { return letters_; }

 private:
  static constexpr std::size_t kChunks = 8;
  std::size_t states_;
  std::size_t letters_;
  std::vector<StateMask> table_;
};

inline bool is_singleton(StateMask m) { return m != 0 && (m & (m - 1)) == 0; }

inline int popcount(StateMask m) { return __builtin_popcountll(m); }

/// "{0,2,5}" for a mask.
std::string mask_to_string(StateMask m);

}  // namespace syncgame
