#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/util.hpp"
#include "syncgame/constructions.hpp"
#include "syncgame/errors.hpp"
#include "syncgame/game.hpp"

using namespace syncgame;
using testutil::mask;

namespace {

GameValue from_oracle(std::size_t v) { return v == oracle::kInf ? GameValue{} : GameValue{v}; }

StateMask apply_mask(const Dfa& d, StateMask m, const Word& w) {
  for (Letter a : w) m = oracle::image(d, m, a);
  return m;
}

}  // namespace

TEST_CASE("pair game examples") {
  const auto intro = solve_pair_game(builtin(BuiltinName::intro_example), GameRule::normal);
  CHECK_FALSE(intro.alice_wins(1, 2));
  CHECK(intro.alice_wins(0, 1));

  const Dfa f = builtin(BuiltinName::f_automaton);
  const auto fn = solve_pair_game(f, GameRule::normal);
  for (State p = 0; p < 3; ++p) {
    for (State q = p + 1; q < 3; ++q) CHECK(fn.alice_wins(p, q));
  }
  const auto fm = solve_pair_game(f, GameRule::modified);
  bool bob_somewhere = false;
  for (State p = 0; p < 3; ++p) {
    for (State q = p + 1; q < 3; ++q) bob_somewhere = bob_somewhere || !fm.alice_wins(p, q);
  }
  CHECK(bob_somewhere);
}

TEST_CASE("is_a_automaton examples") {
  CHECK(is_a_automaton(builtin(BuiltinName::b2_prime), GameRule::normal));
  CHECK_FALSE(is_a_automaton(builtin(BuiltinName::intro_example), GameRule::normal));
  CHECK(is_a_automaton(builtin(BuiltinName::e_automaton), GameRule::normal));
  CHECK(is_a_automaton(builtin(BuiltinName::f_automaton), GameRule::normal));
  CHECK_FALSE(is_a_automaton(builtin(BuiltinName::f_automaton), GameRule::modified));
}

TEST_CASE("token game examples") {
  const Dfa e = builtin(BuiltinName::e_automaton);
  const auto sol = solve_token_game(e, full_mask(6), GameRule::normal);
  CHECK(sol.value() == GameValue{2});
  CHECK(sol.best_move(full_mask(6)) == std::optional<Letter>{0});

  const auto single = solve_token_game(e, mask({4}), GameRule::normal);
  CHECK(single.value() == GameValue{0});

  const Dfa f = builtin(BuiltinName::f_automaton);
  CHECK_FALSE(solve_token_game(f, full_mask(3), GameRule::modified).value());
  CHECK(solve_token_game(f, full_mask(3), GameRule::normal).value());

  CHECK_THROWS_AS(solve_token_game(e, 0, GameRule::normal), PreconditionError);
  CHECK_THROWS_AS(solve_token_game(cerny(12), full_mask(12), GameRule::normal, 10), CapExceeded);
}

TEST_CASE("Bob's replies on F under the modified rule") {
  const Dfa f = builtin(BuiltinName::f_automaton);
  const auto sol = solve_token_game(f, full_mask(3), GameRule::modified);
  const StateMask after_a = oracle::image(f, full_mask(3), 0);
  CHECK(f.format_word(sol.bob_delay_move(after_a)) == "b");
  const StateMask after_c = oracle::image(f, full_mask(3), 2);
  CHECK(f.format_word(sol.bob_delay_move(after_c)) == "bb");
}

TEST_CASE("cubic_bound") {
  CHECK(cubic_bound(3) == 4);
  CHECK(cubic_bound(2) == 1);
  CHECK(cubic_bound(6) == 61);
  CHECK(cubic_bound(1) == 1);
}

TEST_CASE("property: pair and token solvers agree with value iteration") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Dfa d = testutil::sample(seed, 6, 3);
    for (GameRule rule : {GameRule::normal, GameRule::modified}) {
      const auto o = oracle::token_values(d, rule == GameRule::modified);
      const auto pairs = solve_pair_game(d, rule);
      for (State p = 0; p < d.size(); ++p) {
        for (State q = p + 1; q < d.size(); ++q) {
          const StateMask m = mask({p, q});
          CHECK(pairs.alice_value(p, q) == from_oracle(o.alice[m]));
          CHECK(pairs.bob_value(p, q) == from_oracle(o.bob[m]));
        }
      }
      const auto sol = solve_token_game(d, full_mask(d.size()), rule);
      for (StateMask m = 1; m <= full_mask(d.size()); ++m) {
        if (!sol.contains(m)) continue;
        CHECK(sol.alice_value(m) == from_oracle(o.alice[m]));
      }
    }
  }
}

TEST_CASE("property: A-automaton iff Alice wins the full token game") {
  std::size_t a_automata = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Dfa d = testutil::sample(seed, 8, 3);
    const bool a = is_a_automaton(d, GameRule::normal);
    CHECK(a == solve_token_game(d, full_mask(d.size()), GameRule::normal).value().has_value());
    a_automata += a;
  }
  CHECK(a_automata > 100);
}

TEST_CASE("property: best_move wins within the value against random Bob") {
  std::mt19937_64 rng(4);
  std::size_t plays = 0;
  for (std::uint64_t seed = 0; plays < 10'000; ++seed) {
    const Dfa d = testutil::sample(seed, 7, 3);
    for (GameRule rule : {GameRule::normal, GameRule::modified}) {
      const auto sol = solve_token_game(d, full_mask(d.size()), rule);
      if (!sol.value()) continue;
      for (int game = 0; game < 100; ++game, ++plays) {
        StateMask m = full_mask(d.size());
        std::size_t moves = 0;
        while (!oracle::singleton(m)) {
          const auto a = sol.best_move(m);
          REQUIRE(a);
          m = oracle::image(d, m, *a);
          ++moves;
          if (oracle::singleton(m)) break;
          const std::size_t len = rule == GameRule::normal ? 1 : rng() % 9;
          m = apply_mask(d, m, oracle::random_word(rng, d.alphabet_size(), len));
        }
        CHECK(moves <= *sol.value());
      }
    }
  }
}

TEST_CASE("property: bob_delay_move holds out from Bob-winning positions") {
  std::mt19937_64 rng(5);
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; checked < 200; ++seed) {
    const Dfa d = testutil::sample(seed, 7, 3);
    for (GameRule rule : {GameRule::normal, GameRule::modified}) {
      const auto sol = solve_token_game(d, full_mask(d.size()), rule);
      if (sol.value()) continue;
      ++checked;
      const std::size_t limit = std::size_t{4} << d.size();
      // Alice policies: always the same letter, or uniformly random letters.
      for (Letter fixed = 0; fixed <= d.alphabet_size(); ++fixed) {
        StateMask m = full_mask(d.size());
        for (std::size_t i = 0; i < limit; ++i) {
          const Letter a = fixed < d.alphabet_size() ? fixed : static_cast<Letter>(rng() % d.alphabet_size());
          m = oracle::image(d, m, a);
          REQUIRE_FALSE(oracle::singleton(m));
          m = apply_mask(d, m, sol.bob_delay_move(m));
          REQUIRE_FALSE(oracle::singleton(m));
        }
      }
    }
  }
}

TEST_CASE("property: modified rule only helps Bob") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Dfa d = testutil::sample(seed, 7, 3);
    const auto normal = solve_token_game(d, full_mask(d.size()), GameRule::normal);
    const auto modified = solve_token_game(d, full_mask(d.size()), GameRule::modified);
    if (!normal.value()) CHECK_FALSE(modified.value());
    const auto pn = solve_pair_game(d, GameRule::normal);
    const auto pm = solve_pair_game(d, GameRule::modified);
    for (State p = 0; p < d.size(); ++p) {
      for (State q = p + 1; q < d.size(); ++q) {
        if (!pn.alice_wins(p, q)) CHECK_FALSE(pm.alice_wins(p, q));
      }
    }
  }
}

TEST_CASE("property: values are monotone under subsets") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Dfa d = testutil::sample(seed, 5, 3);
    const StateMask full = full_mask(d.size());
    for (GameRule rule : {GameRule::normal, GameRule::modified}) {
      std::vector<GameValue> value(full + 1);
      for (StateMask s = 1; s <= full; ++s) value[s] = solve_token_game(d, s, rule).value();
      for (StateMask s = 1; s <= full; ++s) {
        if (!value[s]) continue;
        for (StateMask sub = (s - 1) & s; sub != 0; sub = (sub - 1) & s) {
          REQUIRE(value[sub]);
          CHECK(*value[sub] <= *value[s]);
        }
      }
    }
  }
}

TEST_CASE("property: A-automaton values stay within the cubic bound") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Dfa d = testutil::sample(seed, 9, 3);
    if (!is_a_automaton(d, GameRule::normal)) continue;
    ++checked;
    const auto v = solve_token_game(d, full_mask(d.size()), GameRule::normal).value();
    REQUIRE(v);
    CHECK(*v <= cubic_bound(d.size()));
  }
  CHECK(checked > 100);
}
