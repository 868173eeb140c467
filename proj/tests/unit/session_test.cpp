#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support/oracles.hpp"
#include "support/util.hpp"
#include "syncgame/constructions.hpp"
#include "syncgame/session.hpp"

using namespace syncgame;
using testutil::mask;

namespace {

std::shared_ptr<const Dfa> shared(Dfa d) { return std::make_shared<const Dfa>(std::move(d)); }

Word w(const Dfa& d, const char* text) { return d.parse_word(text); }

}  // namespace

TEST_CASE("opening example: Alice plays a, Bob copies") {
  auto d = shared(builtin(BuiltinName::intro_example));
  GameSession g(d, GameRule::normal);
  CHECK(g.tokens() == full_mask(3));
  g.play(Player::alice, w(*d, "a"));
  CHECK(g.tokens() == mask({0, 2}));
  CHECK(g.turn() == Player::bob);
  Engine engine(d, GameRule::normal, full_mask(3));
  const Word reply = engine.move(g, Player::bob);
  g.play(Player::bob, reply);
  CHECK(popcount(g.tokens()) == 2);
  // Copying is one of Bob's optimal replies here.
  GameSession copy(d, GameRule::normal);
  copy.play(Player::alice, w(*d, "a"));
  copy.play(Player::bob, w(*d, "a"));
  CHECK(copy.tokens() == mask({0, 2}));
  CHECK(copy.status() == GameStatus::ongoing);
}

TEST_CASE("move validation") {
  auto d = shared(builtin(BuiltinName::b2));
  GameSession g(d, GameRule::normal);
  CHECK_THROWS_AS(g.play(Player::bob, w(*d, "a")), MoveError);
  try {
    g.play(Player::alice, w(*d, "ab"));
    FAIL("expected an illegal word");
  } catch (const MoveError& e) {
    CHECK(e.kind() == MoveError::Kind::illegal_word);
  }
  CHECK_THROWS_AS(g.play(Player::alice, Word{}), MoveError);
  g.play(Player::alice, w(*d, "a"));
  CHECK_THROWS_AS(g.play(Player::bob, w(*d, "aa")), MoveError);
  CHECK_THROWS_AS(g.play(Player::bob, Word{}), MoveError);
  CHECK_THROWS_AS(g.play(Player::bob, Word{7}), MoveError);
}

TEST_CASE("modified rule: Bob may pass with the empty word") {
  auto d = shared(builtin(BuiltinName::f_automaton));
  GameSession g(d, GameRule::modified);
  g.play(Player::alice, w(*d, "a"));
  const StateMask before = g.tokens();
  g.play(Player::bob, Word{});
  CHECK(g.tokens() == before);
  CHECK(g.turn() == Player::alice);
  CHECK_THROWS_AS(g.play(Player::alice, Word{}), MoveError);
  CHECK_THROWS_AS(g.play(Player::bob, Word(65, 0)), MoveError);
}

TEST_CASE("game end states") {
  auto d = shared(builtin(BuiltinName::b2));
  GameSession single(d, GameRule::normal, mask({1}));
  CHECK(single.status() == GameStatus::alice_won);
  CHECK_THROWS_AS(single.play(Player::alice, w(*d, "a")), MoveError);
  CHECK_THROWS_AS(GameSession(d, GameRule::normal, StateMask{0}), PreconditionError);

  auto intro = shared(builtin(BuiltinName::intro_example));
  GameSession capped(intro, GameRule::normal, {}, 2);
  for (int i = 0; i < 2; ++i) {
    capped.play(Player::alice, w(*intro, "a"));
    capped.play(Player::bob, w(*intro, "a"));
  }
  CHECK(capped.status() == GameStatus::bob_resigned_or_capped);
  CHECK(capped.move_cap() == 2);
  CHECK(GameSession(intro, GameRule::normal).move_cap() == 32);
}

TEST_CASE("engine follows the known lines") {
  SUBCASE("E: Alice opens with a") {
    auto e = shared(builtin(BuiltinName::e_automaton));
    GameSession g(e, GameRule::normal);
    Engine engine(e, GameRule::normal, full_mask(6));
    const auto advice = engine.advise(g, Player::alice);
    CHECK(e->format_word(advice.move) == "a");
    CHECK(advice.source == "token-game");
    CHECK(advice.value == GameValue{2});
  }
  SUBCASE("F under the modified rule: Bob answers a with b and c with bb") {
    auto f = shared(builtin(BuiltinName::f_automaton));
    for (const auto& [alice, bob] : {std::pair{"a", "b"}, std::pair{"c", "bb"}}) {
      GameSession g(f, GameRule::modified);
      Engine engine(f, GameRule::modified, full_mask(3));
      g.play(Player::alice, w(*f, alice));
      CHECK(f->format_word(engine.move(g, Player::bob)) == bob);
    }
  }
  SUBCASE("hints on E") {
    auto e = shared(builtin(BuiltinName::e_automaton));
    GameSession g03(e, GameRule::normal, mask({0, 3}));
    Engine e03(e, GameRule::normal, mask({0, 3}));
    CHECK(e->format_word(e03.move(g03, Player::alice)) == "c");

    GameSession g05(e, GameRule::normal, mask({0, 5}));
    Engine e05(e, GameRule::normal, mask({0, 5}));
    const auto advice = e05.advise(g05, Player::alice);
    // b and c both merge {0,5}; the least letter is recommended.
    CHECK(e->format_word(advice.move) == "b");
    REQUIRE(advice.alternatives.size() == 1);
    CHECK(e->format_word(advice.alternatives[0]) == "c");
    CHECK(oracle::image(*e, mask({0, 5}), 2) == mask({0}));
  }
  SUBCASE("advice out of turn") {
    auto e = shared(builtin(BuiltinName::e_automaton));
    GameSession g(e, GameRule::normal);
    Engine engine(e, GameRule::normal, full_mask(6));
    CHECK_THROWS_AS(engine.advise(g, Player::bob), MoveError);
  }
}

TEST_CASE("engine fallbacks when the token game is over its cap") {
  auto e = shared(builtin(BuiltinName::e_automaton));
  EngineOptions opts;
  opts.token_cap = 2;
  Engine engine(e, GameRule::normal, full_mask(6), opts);
  CHECK(engine.token_solution() == nullptr);
  GameSession g(e, GameRule::normal);
  const auto first = engine.advise(g, Player::alice);
  CHECK(first.source == "uniform-strategy");
  CHECK(e->format_word(first.move) == "a");
  // Once Alice leaves the strategy, pair merging takes over.
  g.play(Player::alice, w(*e, "c"));
  g.play(Player::bob, engine.move(g, Player::bob));
  if (g.status() == GameStatus::ongoing) CHECK(engine.advise(g, Player::alice).source == "pair-merging");
}

TEST_CASE("transcripts are JSON lines") {
  auto d = shared(builtin(BuiltinName::b2));
  GameSession g(d, GameRule::normal);
  g.play(Player::alice, w(*d, "a"));
  g.play(Player::bob, w(*d, "b"));
  std::istringstream in(transcript_jsonl(g));
  std::string line;
  std::getline(in, line);
  const auto j = nlohmann::json::parse(line);
  CHECK(j["player"] == "alice");
  CHECK(j["word"] == "a");
  CHECK(j["tokens_after"] == nlohmann::json::array({0, 2}));
}

TEST_CASE("property: token counts never grow and transcripts replay") {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto d = shared(testutil::sample(seed, 7, 3));
    const GameRule rule = seed % 2 ? GameRule::modified : GameRule::normal;
    GameSession g(d, rule, {}, 20);
    while (g.status() == GameStatus::ongoing) {
      const std::size_t len = g.turn() == Player::alice || rule == GameRule::normal ? 1 : rng() % 5;
      g.play(g.turn(), oracle::random_word(rng, d->alphabet_size(), len));
    }
    std::istringstream in(transcript_jsonl(g));
    StateSet tokens = StateSet::full(d->size());
    std::size_t last = d->size();
    for (std::string line; std::getline(in, line);) {
      const auto j = nlohmann::json::parse(line);
      tokens = apply_word(*d, tokens, d->parse_word(j["word"].get<std::string>()));
      CHECK(tokens.members() == j["tokens_after"].get<std::vector<State>>());
      CHECK(tokens.size() <= last);
      last = tokens.size();
    }
  }
}

TEST_CASE("property: engine Alice beats random Bob within the cubic bound") {
  std::mt19937_64 rng(10);
  std::size_t games = 0;
  for (std::uint64_t seed = 0; games < 300; ++seed) {
    auto d = shared(testutil::sample(seed, 8, 3));
    if (!is_a_automaton(*d, GameRule::normal)) continue;
    ++games;
    GameSession g(d, GameRule::normal);
    Engine engine(d, GameRule::normal, full_mask(d->size()));
    while (g.status() == GameStatus::ongoing) {
      if (g.turn() == Player::alice) {
        g.play(Player::alice, engine.move(g, Player::alice));
      } else {
        g.play(Player::bob, oracle::random_word(rng, d->alphabet_size(), 1));
      }
    }
    CHECK(g.status() == GameStatus::alice_won);
    CHECK(g.alice_moves() <= cubic_bound(d->size()));
  }
}
