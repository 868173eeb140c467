#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "syncgame/constructions.hpp"
#include "syncgame/dfa.hpp"

namespace testutil {

inline syncgame::Dfa make(std::size_t n, std::size_t k, std::vector<syncgame::State> table) {
  return syncgame::Dfa(n, syncgame::default_alphabet(k), std::move(table));
}

inline syncgame::Dfa one_state(std::size_t k = 1) { return make(1, k, std::vector<syncgame::State>(k, 0)); }

/// q ↦ max(q−1, 0) on {0,1,2}.
inline syncgame::Dfa chain3() { return make(3, 1, {0, 0, 1}); }

inline syncgame::StateMask mask(std::initializer_list<syncgame::State> states) {
  syncgame::StateMask m = 0;
  for (auto q : states) m |= syncgame::StateMask{1} << q;
  return m;
}

/// Deterministic stream of mixed-kind samples for property tests.
inline syncgame::Dfa sample(std::uint64_t seed, std::size_t max_n, std::size_t max_k) {
  std::mt19937_64 rng(seed);
  const std::size_t n = 1 + rng() % max_n;
  const std::size_t k = 1 + rng() % max_k;
  static const syncgame::RandomKind kinds[] = {syncgame::RandomKind::arbitrary, syncgame::RandomKind::weakly_acyclic,
                                               syncgame::RandomKind::commutative};
  return syncgame::random_family(kinds[rng() % 3], n, k, rng());
}

}  // namespace testutil
