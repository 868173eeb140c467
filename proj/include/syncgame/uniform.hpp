#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "syncgame/dfa.hpp"
#include "syncgame/game.hpp"
#include "syncgame/monoid.hpp"

namespace syncgame {

/// The token sets of every Bob-reply branch after a fixed Alice prefix.
/// Canonical form: no singletons, no member contained in another, members
/// sorted ascending. The empty configuration means every branch is won.
struct Configuration {
  std::vector<StateMask> branches;

  bool accepting() const noexcept { return branches.empty(); }
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Canonical form of an arbitrary collection of token sets.
Configuration canonicalize(std::vector<StateMask> sets);

/// One Alice letter followed by every possible Bob reply. Under the modified
/// rule the replies are all words, the empty one included; the closure of
/// each subset is memoized.
class ConfigurationStepper {
 public:
  ConfigurationStepper(const Dfa& dfa, GameRule rule);

  Configuration step(const Configuration& c, Letter a);
  /// Token sets Bob can produce from `tokens` (already moved by Alice).
  const std::vector<StateMask>& replies(StateMask tokens);
  /// Least (length, lex) Bob reply turning `from` into exactly `to`.
  std::optional<Word> reply_word(StateMask from, StateMask to) const;

  const SubsetAction& action() const noexcept { return action_; }
  GameRule rule() const noexcept { return rule_; }

 private:
  SubsetAction action_;
  GameRule rule_;
  std::unordered_map<StateMask, std::vector<StateMask>> closure_;
  std::vector<StateMask> scratch_;
};

struct VerificationResult {
  bool wins = false;
  /// Canonical branch count after each Alice letter (and Bob's reply).
  std::vector<std::size_t> branch_counts;
  /// Shortest prefix after which every branch is won.
  std::optional<std::size_t> won_after;
  /// When the word fails: Bob's replies, one per Alice letter, that leave
  /// at least two tokens at the end.
  std::vector<Word> counterexample;
};

/// Simulates C_0 = {initial}, C_i = {P·a_i·u : P ∈ C_{i−1}, u a Bob reply}.
/// The word wins when the final configuration holds only singletons.
VerificationResult verify_uniform_strategy_detailed(const Dfa& dfa, const Word& w, GameRule rule,
                                                    std::optional<StateMask> initial = {});
bool verify_uniform_strategy(const Dfa& dfa, const Word& w, GameRule rule);

inline constexpr std::size_t kDefaultConfigCap = 200'000;

struct UniformStrategyReport {
  bool exists = false;
  std::optional<Word> word;
  /// Distinct configurations visited.
  std::size_t explored = 0;
  /// 2^(2^n − 1) − 2^n in decimal when n ≤ 16, otherwise symbolic.
  std::string bound;
};

/// 2^(2^n − 1) − 2^n, as decimal text for n ≤ 16.
std::string configuration_bound(std::size_t n);

/// Breadth-first search of the configuration automaton from {Q}. Returns
/// the shortest uniform winning strategy or exists = false after the
/// reachable configurations are exhausted. Throws CapExceeded when more
/// than `cap` configurations would be needed to decide.
UniformStrategyReport decide_uws(const Dfa& dfa, GameRule rule, std::size_t cap = kDefaultConfigCap);

/// Same search started from a two-element set.
std::optional<Word> pair_uniform_strategy(const Dfa& dfa, const StateSet& pair, GameRule rule,
                                          std::size_t cap = kDefaultConfigCap);

struct DsStrategyOptions {
  std::size_t monoid_cap = kDefaultMonoidCap;
  /// Largest power tried when the monoid is too large for the algebra.
  std::size_t fallback_max_power = 256;
};

struct DsStrategy {
  Word word;
  /// The reset word w; `word` is w^power.
  Word base;
  std::size_t power = 0;
  /// Kernel element used as ζ; absent on the fallback path.
  std::optional<std::size_t> zeta;
  bool fallback = false;
};

/// w^m for w the shortest witness of a kernel element and m the nilpotency
/// index of the minimal archimedean component. The result is checked under
/// both rules. Throws NotSynchronizing, NotInDs, or InternalError if the
/// check fails.
DsStrategy ds_uniform_strategy(const Dfa& dfa, const DsStrategyOptions& options = {});

}  // namespace syncgame
