#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "syncgame/dfa.hpp"
#include "syncgame/errors.hpp"
#include "syncgame/game.hpp"
#include "syncgame/uniform.hpp"

namespace syncgame {

enum class GameStatus { ongoing, alice_won, bob_resigned_or_capped };
std::string_view to_string(GameStatus s);

struct MoveRecord {
  Player player;
  Word word;
  StateMask tokens_after;
};

class MoveError : public Error {
 public:
  enum class Kind { not_your_turn, game_over, illegal_word };
  MoveError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::size_t kMaxBobWordLength = 64;

/// Live game state. Tokens are a mask, so at most 64 states are supported.
/// Not synchronized; callers serialize mutations.
class GameSession {
 public:
  /// `move_cap` bounds Alice's moves; by default 4·2^n.
  GameSession(std::shared_ptr<const Dfa> dfa, GameRule rule, std::optional<StateMask> initial = {},
              std::optional<std::size_t> move_cap = {});

  const Dfa& dfa() const noexcept { return *dfa_; }
  std::shared_ptr<const Dfa> dfa_ptr() const noexcept { return dfa_; }
  GameRule rule() const noexcept { return rule_; }
  StateMask initial() const noexcept { return initial_; }
  StateMask tokens() const noexcept { return tokens_; }
  Player turn() const noexcept { return turn_; }
  GameStatus status() const noexcept { return status_; }
  std::size_t alice_moves() const noexcept { return alice_moves_; }
  std::size_t move_cap() const noexcept { return move_cap_; }
  const std::vector<MoveRecord>& history() const noexcept { return history_; }

  /// Throws MoveError. Alice plays exactly one letter; Bob plays one letter
  /// under the normal rule and any word of at most 64 letters under the
  /// modified rule.
  const MoveRecord& play(Player who, const Word& word);

 private:
  std::shared_ptr<const Dfa> dfa_;
  SubsetAction action_;
  GameRule rule_;
  StateMask initial_;
  StateMask tokens_;
  Player turn_ = Player::alice;
  GameStatus status_ = GameStatus::ongoing;
  std::size_t alice_moves_ = 0;
  std::size_t move_cap_;
  std::vector<MoveRecord> history_;
};

/// One JSON object per line: {"player","word","tokens_after"}.
std::string transcript_jsonl(const GameSession& session);

struct EngineOptions {
  std::size_t token_cap = kDefaultTokenGameCap;
  std::size_t config_cap = 200'000;
};

struct EngineAdvice {
  Word move;
  /// "token-game", "uniform-strategy" or "pair-merging".
  std::string source;
  /// Alice moves still needed under optimal play, when known.
  GameValue value;
  bool value_known = false;
  /// Other letters that are equally good for Alice.
  std::vector<Word> alternatives;
  std::string explanation;
};

/// Move selection for either side. Solutions are computed lazily and cached
/// for the automaton, rule and initial token set it was built for.
class Engine {
 public:
  Engine(std::shared_ptr<const Dfa> dfa, GameRule rule, StateMask initial, EngineOptions options = {});

  /// Throws MoveError when it is not `role`'s turn or the game is over.
  EngineAdvice advise(const GameSession& session, Player role);
  Word move(const GameSession& session, Player role) { return advise(session, role).move; }

  /// Built on first use; null when the token game exceeds its cap.
  const TokenGameSolution* token_solution();

 private:
  const PairGameSolution& pair_solution();
  const std::optional<Word>& uniform_word();
  EngineAdvice alice_advice(const GameSession& s);
  EngineAdvice bob_advice(const GameSession& s);

  std::shared_ptr<const Dfa> dfa_;
  GameRule rule_;
  StateMask initial_;
  EngineOptions options_;
  bool token_tried_ = false;
  std::optional<TokenGameSolution> token_;
  std::optional<PairGameSolution> pair_;
  bool uniform_tried_ = false;
  std::optional<Word> uniform_;
};

}  // namespace syncgame
