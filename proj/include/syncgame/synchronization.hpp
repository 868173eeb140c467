#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "syncgame/dfa.hpp"

namespace syncgame {

/// Index of the unordered pair {p, q}, p != q, in the pair automaton.
/// Pairs are ordered lexicographically by (min, max).
class PairIndex {
 public:
  explicit PairIndex(std::size_t states) : n_(states) {}

  std::size_t count() const noexcept { return n_ < 2 ? 0 : n_ * (n_ - 1) / 2; }

  std::size_t index(State p, State q) const {
    if (p > q) std::swap(p, q);
    // Pairs with first element p start after sum_{i<p} (n-1-i).
    return p * (2 * n_ - p - 1) / 2 + (q - p - 1);
  }

  std::pair<State, State> pair(std::size_t idx) const;

 private:
  std::size_t n_;
};

/// For every pair {p,q}, the length of a shortest word w with p·w = q·w,
/// or nullopt if none exists. Indexed by PairIndex.
std::vector<std::optional<std::size_t>> pair_merge_distances(const Dfa& dfa);

/// Lexicographically least among the shortest words merging p and q.
std::optional<Word> shortest_merging_word(const Dfa& dfa, State p, State q);

/// True iff some word maps all states to one state; decided on the pair
/// automaton.
bool is_synchronizing(const Dfa& dfa);

enum class ResetMode { exact, greedy };

inline constexpr std::size_t kDefaultExactBound = 20;

/// Reset word search. `exact` returns the lexicographically least reset word
/// of minimum length by breadth-first search over subsets of Q and throws
/// CapExceeded when the DFA has more than `exact_bound` states. `greedy`
/// repeatedly merges the pair with the shortest merging word. Returns
/// nullopt iff the DFA is not synchronizing.
std::optional<Word> shortest_reset_word(const Dfa& dfa, ResetMode mode,
                                        std::size_t exact_bound = kDefaultExactBound);

/// True iff every directed cycle of the transition digraph is a self-loop.
bool is_weakly_acyclic(const Dfa& dfa);

/// The least k such that every word of length >= k is a reset word, or
/// nullopt if the DFA is not definite.
std::optional<std::size_t> is_definite(const Dfa& dfa);

}  // namespace syncgame
