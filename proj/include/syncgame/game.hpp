#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "syncgame/dfa.hpp"
#include "syncgame/synchronization.hpp"

namespace syncgame {

/// normal: Bob answers every Alice letter with one letter.
/// modified: Bob answers with an arbitrary, possibly empty, word.
enum class GameRule { normal, modified };

std::string_view to_string(GameRule rule);
std::optional<GameRule> parse_rule(std::string_view text);

enum class Player { alice, bob };
std::string_view to_string(Player p);

/// Number of Alice moves still needed under optimal play, or nullopt when
/// Bob wins.
using GameValue = std::optional<std::size_t>;

/// Solution of the game restricted to two tokens. Indexed by PairIndex.
struct PairGameSolution {
  std::size_t states = 0;
  GameRule rule = GameRule::normal;
  /// Alice to move at the pair.
  std::vector<GameValue> alice_distance;
  /// Bob to move at the pair.
  std::vector<GameValue> bob_distance;
  /// Optimal letter at Alice-winning Alice-turn pairs.
  std::vector<std::optional<Letter>> alice_move;
  /// Bob's reply at every Bob-turn pair: a winning reply when Bob wins,
  /// otherwise one maximising the remaining distance. A single letter
  /// under the normal rule.
  std::vector<Word> bob_move;

  bool alice_wins(State p, State q) const;
  GameValue alice_value(State p, State q) const;
  GameValue bob_value(State p, State q) const;
};

/// Attractor computation on the pair game; O(n²k) under the normal rule.
PairGameSolution solve_pair_game(const Dfa& dfa, GameRule rule);

/// Alice wins from every two-element subset (and the DFA synchronizes).
bool is_a_automaton(const Dfa& dfa, GameRule rule);
bool is_a_automaton(const Dfa& dfa, const PairGameSolution& solution);

inline constexpr std::size_t kDefaultTokenGameCap = std::size_t{1} << 22;

/// Retrograde solution of the full token game over every token set
/// reachable from the initial one.
class TokenGameSolution {
 public:
  StateMask initial() const noexcept { return initial_; }
  GameRule rule() const noexcept { return rule_; }
  std::size_t position_count() const noexcept { return positions_.size(); }
  bool contains(StateMask tokens) const { return index_.count(tokens) != 0; }

  GameValue alice_value(StateMask tokens) const;
  GameValue bob_value(StateMask tokens) const;
  /// Value at the initial token set with Alice to move.
  GameValue value() const { return alice_value(initial_); }

  /// Argmin letter, least letter on ties; nullopt when Bob wins there.
  std::optional<Letter> best_move(StateMask tokens) const;
  /// Bob's reply: a winning one when available, otherwise the one that
  /// delays Alice most. Ties go to the shortest, then lexicographically
  /// least word.
  Word bob_delay_move(StateMask tokens) const;

  friend TokenGameSolution solve_token_game(const Dfa&, StateMask, GameRule, std::size_t);

 private:
  std::size_t at(StateMask tokens) const;

  StateMask initial_ = 0;
  GameRule rule_ = GameRule::normal;
  std::vector<StateMask> positions_;
  std::unordered_map<StateMask, std::size_t> index_;
  std::vector<GameValue> alice_;
  std::vector<GameValue> bob_;
  std::vector<std::optional<Letter>> best_;
  std::size_t letters_ = 0;
  std::vector<std::size_t> table_;  // position * letters + letter
};

/// Throws CapExceeded when more than `cap` token sets are reachable and
/// PreconditionError for automata with more than 64 states or an empty
/// initial set.
TokenGameSolution solve_token_game(const Dfa& dfa, StateMask initial, GameRule rule,
                                   std::size_t cap = kDefaultTokenGameCap);

/// C(n,2)·(n−2)+1, the worst case for Alice on an n-state A-automaton.
std::size_t cubic_bound(std::size_t n);

}  // namespace syncgame
