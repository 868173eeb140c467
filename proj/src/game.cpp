#include "syncgame/game.hpp"

#include <algorithm>
#include <unordered_map>

#include "retrograde.hpp"
#include "syncgame/errors.hpp"

namespace syncgame {

std::string_view to_string(GameRule rule) {
  return rule == GameRule::normal ? "normal" : "modified";
}

std::optional<GameRule> parse_rule(std::string_view text) {
  if (text == "normal") return GameRule::normal;
  if (text == "modified") return GameRule::modified;
  return std::nullopt;
}

std::string_view to_string(Player p) { return p == Player::alice ? "alice" : "bob"; }

namespace {

/// INF compares greater than every finite value.
bool better_for_bob(const GameValue& candidate, const GameValue& incumbent) {
  if (!incumbent) return false;
  if (!candidate) return true;
  return *candidate > *incumbent;
}

/// Values plus Alice's moves over an explicit position space given by a
/// successor table indexed p * letters + a.
struct Solved {
  detail::RetroValues values;
  std::vector<std::optional<Letter>> best;
};

Solved solve_positions(const std::vector<bool>& won, std::size_t letters, const std::vector<std::size_t>& succ,
                       GameRule rule) {
  const std::size_t count = won.size();
  Solved s;
  if (rule == GameRule::normal) {
    detail::RetroGraph g;
    g.won = won;
    g.alice_succ.resize(count);
    g.bob_succ.resize(count);
    for (std::size_t p = 0; p < count; ++p) {
      if (won[p]) continue;
      g.alice_succ[p].assign(succ.begin() + static_cast<std::ptrdiff_t>(p * letters),
                             succ.begin() + static_cast<std::ptrdiff_t>((p + 1) * letters));
      auto targets = g.alice_succ[p];
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      g.bob_succ[p] = std::move(targets);
    }
    s.values = detail::retrograde(g);
  } else {
    s.values = detail::retrograde_closure(won, letters, succ);
  }
  s.best.assign(count, std::nullopt);
  for (std::size_t p = 0; p < count; ++p) {
    const auto& alice = s.values.alice[p];
    if (won[p] || !alice) continue;
    for (Letter a = 0; a < letters; ++a) {
      const auto& b = s.values.bob[succ[p * letters + a]];
      if (b && *b + 1 == *alice) {
        s.best[p] = a;
        break;
      }
    }
  }
  return s;
}

/// Bob's reply at p. Normal rule: the letter whose target Alice value is
/// worst for her, least letter on ties. Modified rule: a word to the first
/// position, in (length, lexicographic) order, whose Alice value equals
/// Bob's value at p.
Word bob_reply(std::size_t p, std::size_t letters, const std::vector<std::size_t>& succ,
               const detail::RetroValues& v, GameRule rule) {
  if (rule == GameRule::normal) {
    Letter choice = 0;
    GameValue best_value = v.alice[succ[p * letters]];
    for (Letter a = 1; a < letters; ++a) {
      if (better_for_bob(v.alice[succ[p * letters + a]], best_value)) {
        choice = a;
        best_value = v.alice[succ[p * letters + a]];
      }
    }
    return Word{choice};
  }
  const GameValue target = v.bob[p];
  std::vector<std::size_t> order{p};
  std::unordered_map<std::size_t, std::pair<std::size_t, Letter>> parent{{p, {p, 0}}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t at = order[i];
    if (v.alice[at] == target) {
      Word w;
      for (std::size_t x = at; x != p; x = parent[x].first) w.push_back(parent[x].second);
      return Word(w.rbegin(), w.rend());
    }
    for (Letter a = 0; a < letters; ++a) {
      const std::size_t t = succ[at * letters + a];
      if (parent.emplace(t, std::pair{at, a}).second) order.push_back(t);
    }
  }
  return Word{};
}

}  // namespace

// ---------------------------------------------------------------------------
// Pair game

bool PairGameSolution::alice_wins(State p, State q) const { return alice_value(p, q).has_value(); }

GameValue PairGameSolution::alice_value(State p, State q) const {
  if (p == q) return 0;
  return alice_distance.at(PairIndex(states).index(p, q));
}

GameValue PairGameSolution::bob_value(State p, State q) const {
  if (p == q) return 0;
  return bob_distance.at(PairIndex(states).index(p, q));
}

PairGameSolution solve_pair_game(const Dfa& dfa, GameRule rule) {
  const PairIndex pairs(dfa.size());
  const std::size_t count = pairs.count();
  const std::size_t merged = count;  // extra won position
  std::vector<std::pair<State, State>> decoded(count);
  for (std::size_t i = 0; i < count; ++i) decoded[i] = pairs.pair(i);

  std::vector<bool> won(count + 1, false);
  won[merged] = true;
  const std::size_t k = dfa.alphabet_size();
  std::vector<std::size_t> succ;
  succ.reserve((count + 1) * k);
  for (std::size_t pos = 0; pos <= count; ++pos) {
    for (Letter a = 0; a < k; ++a) {
      if (pos == merged) {
        succ.push_back(merged);
        continue;
      }
      const State p = dfa.next(decoded[pos].first, a);
      const State q = dfa.next(decoded[pos].second, a);
      succ.push_back(p == q ? merged : pairs.index(p, q));
    }
  }
  const Solved s = solve_positions(won, k, succ, rule);

  PairGameSolution out;
  out.states = dfa.size();
  out.rule = rule;
  out.alice_distance.assign(s.values.alice.begin(), s.values.alice.begin() + static_cast<std::ptrdiff_t>(count));
  out.bob_distance.assign(s.values.bob.begin(), s.values.bob.begin() + static_cast<std::ptrdiff_t>(count));
  out.alice_move.assign(s.best.begin(), s.best.begin() + static_cast<std::ptrdiff_t>(count));
  out.bob_move.reserve(count);
  for (std::size_t pos = 0; pos < count; ++pos) out.bob_move.push_back(bob_reply(pos, k, succ, s.values, rule));
  return out;
}

bool is_a_automaton(const Dfa& dfa, const PairGameSolution& solution) {
  if (!is_synchronizing(dfa)) return false;
  return std::all_of(solution.alice_distance.begin(), solution.alice_distance.end(),
                     [](const GameValue& v) { return v.has_value(); });
}

bool is_a_automaton(const Dfa& dfa, GameRule rule) {
  return is_a_automaton(dfa, solve_pair_game(dfa, rule));
}

// ---------------------------------------------------------------------------
// Token game

std::size_t TokenGameSolution::at(StateMask tokens) const {
  auto it = index_.find(tokens);
  if (it == index_.end()) {
    throw PreconditionError("token set " + mask_to_string(tokens) + " is not covered by this solution");
  }
  return it->second;
}

GameValue TokenGameSolution::alice_value(StateMask tokens) const { return alice_[at(tokens)]; }
GameValue TokenGameSolution::bob_value(StateMask tokens) const { return bob_[at(tokens)]; }
std::optional<Letter> TokenGameSolution::best_move(StateMask tokens) const { return best_[at(tokens)]; }
Word TokenGameSolution::bob_delay_move(StateMask tokens) const {
  const detail::RetroValues v{alice_, bob_};
  return bob_reply(at(tokens), letters_, table_, v, rule_);
}

TokenGameSolution solve_token_game(const Dfa& dfa, StateMask initial, GameRule rule, std::size_t cap) {
  if (dfa.size() > kMaxMaskStates) throw PreconditionError("token game needs at most 64 states");
  if (initial == 0 || (initial & ~full_mask(dfa.size())) != 0) {
    throw PreconditionError("initial token set must be a nonempty set of states");
  }
  const SubsetAction action(dfa);
  const std::size_t k = dfa.alphabet_size();

  TokenGameSolution sol;
  sol.initial_ = initial;
  sol.rule_ = rule;
  sol.positions_.push_back(initial);
  sol.index_.emplace(initial, 0);
  std::vector<std::size_t>& table = sol.table_;
  for (std::size_t i = 0; i < sol.positions_.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      const StateMask next = action.image(sol.positions_[i], a);
      auto [it, inserted] = sol.index_.emplace(next, sol.positions_.size());
      if (inserted) {
        if (sol.positions_.size() >= cap) {
          throw CapExceeded("token game exceeds " + std::to_string(cap) + " positions");
        }
        sol.positions_.push_back(next);
      }
      table.push_back(it->second);
    }
  }
  const std::size_t count = sol.positions_.size();
  std::vector<bool> won(count);
  for (std::size_t i = 0; i < count; ++i) won[i] = is_singleton(sol.positions_[i]);

  sol.letters_ = k;
  Solved s = solve_positions(won, k, table, rule);
  sol.alice_ = std::move(s.values.alice);
  sol.bob_ = std::move(s.values.bob);
  sol.best_ = std::move(s.best);
  return sol;
}

std::size_t cubic_bound(std::size_t n) {
  if (n < 2) return 1;
  return n * (n - 1) / 2 * (n - 2) + 1;
}

}  // namespace syncgame
