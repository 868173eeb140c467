#include "syncgame/session.hpp"

#include <algorithm>

#include "json.hpp"

namespace syncgame {

std::string_view to_string(GameStatus s) {
  switch (s) {
    case GameStatus::ongoing: return "ongoing";
    case GameStatus::alice_won: return "alice_won";
    case GameStatus::bob_resigned_or_capped: return "bob_resigned_or_capped";
  }
  return "unknown";
}

namespace {

std::size_t default_move_cap(std::size_t n) {
  return std::size_t{4} << std::min<std::size_t>(n, 40);
}

}  // namespace

GameSession::GameSession(std::shared_ptr<const Dfa> dfa, GameRule rule, std::optional<StateMask> initial,
                         std::optional<std::size_t> move_cap)
    : dfa_(std::move(dfa)),
      action_(*dfa_),
      rule_(rule),
      initial_(initial.value_or(full_mask(dfa_->size()))),
      tokens_(initial_),
      move_cap_(move_cap.value_or(default_move_cap(dfa_->size()))) {
  if (initial_ == 0 || (initial_ & ~full_mask(dfa_->size())) != 0) {
    throw PreconditionError("initial tokens must be a nonempty set of states");
  }
  if (is_singleton(tokens_)) status_ = GameStatus::alice_won;
}

const MoveRecord& GameSession::play(Player who, const Word& word) {
  if (status_ != GameStatus::ongoing) throw MoveError(MoveError::Kind::game_over, "the game is over");
  if (who != turn_) {
    throw MoveError(MoveError::Kind::not_your_turn, "it is " + std::string(to_string(turn_)) + "'s turn");
  }
  for (Letter a : word) {
    if (a >= dfa_->alphabet_size()) throw MoveError(MoveError::Kind::illegal_word, "unknown letter");
  }
  if (who == Player::alice || rule_ == GameRule::normal) {
    if (word.size() != 1) {
      throw MoveError(MoveError::Kind::illegal_word, std::string(to_string(who)) + " must play exactly one letter");
    }
  } else if (word.size() > kMaxBobWordLength) {
    throw MoveError(MoveError::Kind::illegal_word,
                    "Bob's word is limited to " + std::to_string(kMaxBobWordLength) + " letters");
  }

  tokens_ = action_.image(tokens_, word);
  history_.push_back({who, word, tokens_});
  if (who == Player::alice) ++alice_moves_;
  turn_ = who == Player::alice ? Player::bob : Player::alice;
  if (is_singleton(tokens_)) {
    status_ = GameStatus::alice_won;
  } else if (turn_ == Player::alice && alice_moves_ >= move_cap_) {
    status_ = GameStatus::bob_resigned_or_capped;
  }
  return history_.back();
}

std::string transcript_jsonl(const GameSession& session) {
  std::string out;
  for (const auto& m : session.history()) {
    nlohmann::json j;
    j["player"] = to_string(m.player);
    j["word"] = session.dfa().format_word(m.word);
    j["tokens_after"] = StateSet::from_mask(session.dfa().size(), m.tokens_after).members();
    out += j.dump();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(std::shared_ptr<const Dfa> dfa, GameRule rule, StateMask initial, EngineOptions options)
    : dfa_(std::move(dfa)), rule_(rule), initial_(initial), options_(options) {}

const TokenGameSolution* Engine::token_solution() {
  if (!token_tried_) {
    token_tried_ = true;
    try {
      token_ = solve_token_game(*dfa_, initial_, rule_, options_.token_cap);
    } catch (const CapExceeded&) {
    }
  }
  return token_ ? &*token_ : nullptr;
}

const PairGameSolution& Engine::pair_solution() {
  if (!pair_) pair_ = solve_pair_game(*dfa_, rule_);
  return *pair_;
}

const std::optional<Word>& Engine::uniform_word() {
  if (!uniform_tried_) {
    uniform_tried_ = true;
    try {
      uniform_ = decide_uws(*dfa_, rule_, options_.config_cap).word;
    } catch (const CapExceeded&) {
      try {
        uniform_ = ds_uniform_strategy(*dfa_).word;
      } catch (const Error&) {
      }
    }
  }
  return uniform_;
}

EngineAdvice Engine::advise(const GameSession& s, Player role) {
  if (s.status() != GameStatus::ongoing) throw MoveError(MoveError::Kind::game_over, "the game is over");
  if (s.turn() != role) {
    throw MoveError(MoveError::Kind::not_your_turn, "it is " + std::string(to_string(s.turn())) + "'s turn");
  }
  return role == Player::alice ? alice_advice(s) : bob_advice(s);
}

namespace {

std::string describe(const GameValue& v) {
  return v ? std::to_string(*v) + " more Alice move(s) under optimal play" : "Bob can prevent synchronization";
}

std::vector<State> members(StateMask m) {
  std::vector<State> out;
  for (State q = 0; m != 0; ++q, m >>= 1) {
    if ((m & 1U) != 0) out.push_back(q);
  }
  return out;
}

}  // namespace

EngineAdvice Engine::alice_advice(const GameSession& s) {
  const StateMask tokens = s.tokens();
  const Dfa& dfa = *dfa_;
  const SubsetAction action(dfa);
  EngineAdvice advice;

  if (const auto* sol = token_solution(); sol && sol->contains(tokens)) {
    advice.source = "token-game";
    advice.value = sol->alice_value(tokens);
    advice.value_known = true;
    if (auto best = sol->best_move(tokens)) {
      advice.move = Word{*best};
      for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
        const auto v = sol->bob_value(action.image(tokens, a));
        if (a != *best && v && *v + 1 == *advice.value) advice.alternatives.push_back(Word{a});
      }
    } else {
      Letter pick = 0;
      for (Letter a = 1; a < dfa.alphabet_size(); ++a) {
        if (popcount(action.image(tokens, a)) < popcount(action.image(tokens, pick))) pick = a;
      }
      advice.move = Word{pick};
    }
    advice.explanation = describe(advice.value);
    return advice;
  }

  // A strategy winning from Q also wins from every subset of Q, provided
  // Alice has spelled its prefix so far.
  Word played;
  for (const auto& m : s.history()) {
    if (m.player == Player::alice) played.insert(played.end(), m.word.begin(), m.word.end());
  }
  if (const auto& w = uniform_word();
      w && played.size() < w->size() && std::equal(played.begin(), played.end(), w->begin())) {
    advice.source = "uniform-strategy";
    advice.move = Word{(*w)[s.alice_moves()]};
    advice.explanation = "letter " + std::to_string(s.alice_moves() + 1) + " of the uniform strategy " +
                         dfa.format_word(*w);
    return advice;
  }

  const auto& pairs = pair_solution();
  const auto states = members(tokens);
  GameValue best;
  std::optional<Letter> letter;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      const auto v = pairs.alice_value(states[i], states[j]);
      if (v && (!best || *v < *best)) {
        best = v;
        letter = pairs.alice_move[PairIndex(dfa.size()).index(states[i], states[j])];
      }
    }
  }
  advice.source = "pair-merging";
  advice.move = Word{letter.value_or(0)};
  advice.explanation = best ? "merging the closest pair of tokens" : "no winning pair strategy exists";
  return advice;
}

EngineAdvice Engine::bob_advice(const GameSession& s) {
  const StateMask tokens = s.tokens();
  const Dfa& dfa = *dfa_;
  EngineAdvice advice;
  if (const auto* sol = token_solution(); sol && sol->contains(tokens)) {
    advice.source = "token-game";
    advice.move = sol->bob_delay_move(tokens);
    advice.value = sol->bob_value(tokens);
    advice.value_known = true;
    advice.explanation = describe(advice.value);
    return advice;
  }

  const auto& pairs = pair_solution();
  const SubsetAction action(dfa);
  std::vector<Word> candidates;
  if (rule_ == GameRule::modified) candidates.push_back(Word{});
  for (Letter a = 0; a < dfa.alphabet_size(); ++a) candidates.push_back(Word{a});
  // Score: the slowest pair for Alice; nullopt (Bob wins) beats any number.
  auto score = [&](StateMask m) -> GameValue {
    const auto states = members(m);
    std::size_t worst = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = i + 1; j < states.size(); ++j) {
        const auto v = pairs.alice_value(states[i], states[j]);
        if (!v) return std::nullopt;
        worst = std::max(worst, *v);
      }
    }
    return worst;
  };
  std::size_t pick = 0;
  GameValue pick_score = score(action.image(tokens, candidates[0]));
  for (std::size_t i = 1; i < candidates.size() && pick_score; ++i) {
    const GameValue v = score(action.image(tokens, candidates[i]));
    if (!v || *v > *pick_score) {
      pick = i;
      pick_score = v;
    }
  }
  advice.source = "pair-merging";
  advice.move = candidates[pick];
  advice.explanation = pick_score ? "keeping the slowest pair apart" : "keeping a pair Alice cannot merge";
  return advice;
}

}  // namespace syncgame
