#include "syncgame/uniform.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <unordered_set>

#include "syncgame/errors.hpp"
#include "syncgame/synchronization.hpp"

namespace syncgame {

Configuration canonicalize(std::vector<StateMask> sets) {
  std::vector<std::pair<int, StateMask>> keyed;  // (-size, set)
  keyed.reserve(sets.size());
  for (StateMask s : sets) {
    const int size = popcount(s);
    if (size >= 2) keyed.emplace_back(-size, s);
  }
  std::sort(keyed.begin(), keyed.end());
  keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
  Configuration c;
  for (const auto& [size, s] : keyed) {
    const bool covered = std::any_of(c.branches.begin(), c.branches.end(),
                                     [s](StateMask kept) { return (s & ~kept) == 0; });
    if (!covered) c.branches.push_back(s);
  }
  std::sort(c.branches.begin(), c.branches.end());
  return c;
}

// ---------------------------------------------------------------------------
// ConfigurationStepper

ConfigurationStepper::ConfigurationStepper(const Dfa& dfa, GameRule rule)
    : action_(dfa), rule_(rule) {}

const std::vector<StateMask>& ConfigurationStepper::replies(StateMask tokens) {
  if (rule_ == GameRule::normal) {
    scratch_.clear();
    for (Letter x = 0; x < action_.letters(); ++x) scratch_.push_back(action_.image(tokens, x));
    return scratch_;
  }
  auto it = closure_.find(tokens);
  if (it != closure_.end()) return it->second;
  std::vector<StateMask> seen{tokens};
  std::unordered_set<StateMask> mark{tokens};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (Letter x = 0; x < action_.letters(); ++x) {
      const StateMask t = action_.image(seen[i], x);
      if (mark.insert(t).second) seen.push_back(t);
    }
  }
  return closure_.emplace(tokens, std::move(seen)).first->second;
}

std::optional<Word> ConfigurationStepper::reply_word(StateMask from, StateMask to) const {
  if (rule_ == GameRule::normal) {
    for (Letter x = 0; x < action_.letters(); ++x) {
      if (action_.image(from, x) == to) return Word{x};
    }
    return std::nullopt;
  }
  std::vector<StateMask> order{from};
  std::vector<std::size_t> parent{0};
  std::vector<Letter> via{0};
  std::unordered_set<StateMask> mark{from};
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == to) {
      Word w;
      for (std::size_t j = i; j != 0; j = parent[j]) w.push_back(via[j]);
      return Word(w.rbegin(), w.rend());
    }
    for (Letter x = 0; x < action_.letters(); ++x) {
      const StateMask t = action_.image(order[i], x);
      if (!mark.insert(t).second) continue;
      order.push_back(t);
      parent.push_back(i);
      via.push_back(x);
    }
  }
  return std::nullopt;
}

Configuration ConfigurationStepper::step(const Configuration& c, Letter a) {
  std::vector<StateMask> next;
  for (StateMask p : c.branches) {
    const StateMask moved = action_.image(p, a);
    if (is_singleton(moved)) continue;
    const auto& r = replies(moved);
    next.insert(next.end(), r.begin(), r.end());
  }
  return canonicalize(std::move(next));
}

// ---------------------------------------------------------------------------
// Verification

VerificationResult verify_uniform_strategy_detailed(const Dfa& dfa, const Word& w, GameRule rule,
                                                    std::optional<StateMask> initial) {
  ConfigurationStepper stepper(dfa, rule);
  const StateMask start = initial.value_or(full_mask(dfa.size()));
  std::vector<Configuration> levels{canonicalize({start})};
  VerificationResult result;
  if (levels.back().accepting()) result.won_after = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= dfa.alphabet_size()) throw PreconditionError("letter index out of range");
    levels.push_back(stepper.step(levels.back(), w[i]));
    result.branch_counts.push_back(levels.back().branches.size());
    if (levels.back().accepting() && !result.won_after) result.won_after = i + 1;
  }
  result.wins = levels.back().accepting();
  if (result.wins || w.empty()) return result;

  StateMask target = levels.back().branches.front();
  std::vector<Word> replies(w.size());
  for (std::size_t i = w.size(); i-- > 0;) {
    bool found = false;
    for (StateMask p : levels[i].branches) {
      auto u = stepper.reply_word(stepper.action().image(p, w[i]), target);
      if (u) {
        replies[i] = std::move(*u);
        target = p;
        found = true;
        break;
      }
    }
    if (!found) throw InternalError("no Bob reply reproduces a surviving branch");
  }
  result.counterexample = std::move(replies);
  return result;
}

bool verify_uniform_strategy(const Dfa& dfa, const Word& w, GameRule rule) {
  return verify_uniform_strategy_detailed(dfa, w, rule).wins;
}

// ---------------------------------------------------------------------------
// Search

std::string configuration_bound(std::size_t n) {
  if (n > 16) {
    const std::string e = std::to_string(n);
    return "2^(2^" + e + "-1) - 2^" + e;
  }
  using boost::multiprecision::cpp_int;
  const std::size_t exponent = (std::size_t{1} << n) - 1;
  cpp_int k = (cpp_int(1) << exponent) - (cpp_int(1) << n);
  return k.str();
}

namespace {

std::string config_key(const Configuration& c) {
  return std::string(reinterpret_cast<const char*>(c.branches.data()),
                     c.branches.size() * sizeof(StateMask));
}

struct SearchResult {
  std::optional<Word> word;
  std::size_t explored = 0;
};

SearchResult search(const Dfa& dfa, GameRule rule, StateMask start, std::size_t cap) {
  ConfigurationStepper stepper(dfa, rule);
  const std::size_t k = dfa.alphabet_size();
  struct Node {
    Configuration config;
    std::size_t parent;
    Letter letter;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;

  auto reconstruct = [&](std::size_t node, std::optional<Letter> last) {
    Word w;
    if (last) w.push_back(*last);
    for (std::size_t i = node; i != 0; i = nodes[i].parent) w.push_back(nodes[i].letter);
    return Word(w.rbegin(), w.rend());
  };

  Configuration initial = canonicalize({start});
  if (initial.accepting()) return {Word{}, 1};
  index.emplace(config_key(initial), 0);
  nodes.push_back({std::move(initial), 0, 0});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      Configuration next = stepper.step(nodes[i].config, a);
      if (next.accepting()) return {reconstruct(i, a), nodes.size()};
      auto [it, inserted] = index.emplace(config_key(next), nodes.size());
      if (!inserted) continue;
      if (nodes.size() >= cap) {
        throw CapExceeded("configuration search exceeds " + std::to_string(cap) + " states");
      }
      nodes.push_back({std::move(next), i, a});
    }
  }
  const std::size_t n = dfa.size();
  if (n <= 5) {
    const std::uint64_t bound = (std::uint64_t{1} << ((std::uint64_t{1} << n) - 1)) - (std::uint64_t{1} << n);
    if (nodes.size() > bound) throw InternalError("configuration search exceeded its theoretical bound");
  }
  return {std::nullopt, nodes.size()};
}

}  // namespace

UniformStrategyReport decide_uws(const Dfa& dfa, GameRule rule, std::size_t cap) {
  SearchResult r = search(dfa, rule, full_mask(dfa.size()), cap);
  UniformStrategyReport report;
  report.exists = r.word.has_value();
  report.word = std::move(r.word);
  report.explored = r.explored;
  report.bound = configuration_bound(dfa.size());
  return report;
}

std::optional<Word> pair_uniform_strategy(const Dfa& dfa, const StateSet& pair, GameRule rule,
                                          std::size_t cap) {
  if (pair.universe() != dfa.size() || pair.size() != 2) {
    throw PreconditionError("pair must consist of two distinct states of the automaton");
  }
  return search(dfa, rule, pair.mask(), cap).word;
}

// ---------------------------------------------------------------------------
// Construction for DS automata

namespace {

Word power_of(const Word& w, std::size_t m) {
  Word out;
  out.reserve(w.size() * m);
  for (std::size_t i = 0; i < m; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

bool verifies_both(const Dfa& dfa, const Word& w) {
  return verify_uniform_strategy(dfa, w, GameRule::normal) &&
         verify_uniform_strategy(dfa, w, GameRule::modified);
}

}  // namespace

DsStrategy ds_uniform_strategy(const Dfa& dfa, const DsStrategyOptions& options) {
  if (!is_synchronizing(dfa)) throw NotSynchronizing("automaton is not synchronizing");

  std::optional<TransitionMonoid> monoid;
  try {
    monoid = enumerate_monoid(dfa, options.monoid_cap);
  } catch (const CapExceeded&) {
  }

  DsStrategy out;
  if (monoid) {
    if (!is_ds(*monoid)) throw NotInDs("transition monoid is not in DS");
    const auto decomposition = archimedean_decomposition(*monoid);
    const auto ker = kernel(*monoid);
    std::size_t zeta = ker.front();
    for (std::size_t e : ker) {
      const Word& cand = monoid->element(e).witness;
      const Word& best = monoid->element(zeta).witness;
      if (cand.size() < best.size() || (cand.size() == best.size() && cand < best)) zeta = e;
    }
    out.zeta = zeta;
    out.base = monoid->element(zeta).witness;
    out.power = nilpotency_index(*monoid, decomposition, decomposition.minimal_component);
    out.word = power_of(out.base, out.power);
    if (!verifies_both(dfa, out.word)) {
      throw InternalError("w^m failed verification on a synchronizing DS automaton");
    }
    return out;
  }

  const ResetMode mode = dfa.size() <= kDefaultExactBound ? ResetMode::exact : ResetMode::greedy;
  out.base = *shortest_reset_word(dfa, mode);
  out.fallback = true;
  for (std::size_t m = 1; m <= options.fallback_max_power; ++m) {
    Word candidate = power_of(out.base, m);
    if (verifies_both(dfa, candidate)) {
      out.power = m;
      out.word = std::move(candidate);
      return out;
    }
  }
  throw CapExceeded("no power of the reset word up to " + std::to_string(options.fallback_max_power) +
                    " verified");
}

}  // namespace syncgame
