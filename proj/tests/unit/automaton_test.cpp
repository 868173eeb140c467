#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/util.hpp"
#include "syncgame/constructions.hpp"
#include "syncgame/dfa_format.hpp"
#include "syncgame/errors.hpp"
#include "syncgame/synchronization.hpp"

using namespace syncgame;
using testutil::make;
using testutil::one_state;

namespace {

const char* kB2Text = R"(# Brandt automaton
states: 3
alphabet: a b
transitions:
0 a 0
0 b 0
1 a 2
1 b 0
2 a 0
2 b 1
)";

StateSet all(const Dfa& d) { return StateSet::full(d.size()); }

}  // namespace

TEST_CASE("parse_dfa reads the Brandt automaton") {
  const Dfa d = parse_dfa(kB2Text);
  CHECK(d.size() == 3);
  CHECK(d.alphabet_size() == 2);
  CHECK(d == builtin(BuiltinName::b2));
}

TEST_CASE("parse_dfa accepts a one-state automaton") {
  const Dfa d = parse_dfa("states: 1\nalphabet: a\ntransitions:\n0 a 0\n");
  CHECK(d.size() == 1);
}

TEST_CASE("parse_dfa rejects an incomplete table") {
  const char* text = "states: 2\nalphabet: a b\ntransitions:\n0 a 0\n0 b 1\n1 a 0\n";
  CHECK_THROWS_AS(parse_dfa(text), ParseError);
}

TEST_CASE("parse_dfa reports line and column") {
  const char* text = "states: 2\nalphabet: a\ntransitions:\n0 a 0\n1 z 0\n";
  try {
    parse_dfa(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("parse_dfa numbers symbolic states by first appearance") {
  const Dfa d = parse_dfa("states: 2\nalphabet: x\ntransitions:\np x q\nq x q\n");
  CHECK(d.next(0, 0) == 1);
  CHECK(d.next(1, 0) == 1);
}

TEST_CASE("apply_word examples") {
  const Dfa b2 = builtin(BuiltinName::b2);
  // ab alone leaves {0,1}; it wins only together with Bob's replies.
  CHECK(apply_word(b2, all(b2), b2.parse_word("ab")) == StateSet::of(3, {0, 1}));
  const Dfa e = builtin(BuiltinName::e_automaton);
  CHECK(apply_word(e, all(e), e.parse_word("abaa")) == StateSet::of(6, {0, 5}));
  CHECK(apply_word(e, StateSet::of(6, {2, 4}), Word{}) == StateSet::of(6, {2, 4}));
}

TEST_CASE("is_synchronizing examples") {
  CHECK(is_synchronizing(cerny(3)));
  CHECK(is_synchronizing(builtin(BuiltinName::intro_example)));
  const Dfa intro = builtin(BuiltinName::intro_example);
  CHECK(apply_word(intro, all(intro), intro.parse_word("aba")).size() == 1);
  CHECK(apply_word(intro, all(intro), intro.parse_word("aa")).size() == 2);
  CHECK(shortest_reset_word(intro, ResetMode::exact)->size() == 3);
  CHECK_FALSE(is_synchronizing(make(2, 1, {1, 0})));
}

TEST_CASE("shortest_reset_word examples") {
  const auto c3 = shortest_reset_word(cerny(3), ResetMode::exact);
  REQUIRE(c3);
  CHECK(c3->size() == 4);
  CHECK(apply_word(cerny(3), all(cerny(3)), *c3).size() == 1);
  CHECK(shortest_reset_word(cerny(5), ResetMode::exact)->size() == 16);
  CHECK(shortest_reset_word(one_state(), ResetMode::exact)->empty());
  CHECK_THROWS_AS(shortest_reset_word(cerny(6), ResetMode::exact, 5), CapExceeded);
}

TEST_CASE("is_weakly_acyclic examples") {
  CHECK(is_weakly_acyclic(builtin(BuiltinName::e_automaton)));
  CHECK_FALSE(is_weakly_acyclic(cerny(3)));
  CHECK(is_weakly_acyclic(one_state()));
}

TEST_CASE("is_definite examples") {
  CHECK(is_definite(one_state()) == std::optional<std::size_t>(0));
  CHECK_FALSE(is_definite(builtin(BuiltinName::b2)));
  CHECK(is_definite(make(2, 2, {0, 0, 0, 0})) == std::optional<std::size_t>(1));
}

TEST_CASE("pair merging distances agree with word search") {
  const Dfa c4 = cerny(4);
  const auto dist = pair_merge_distances(c4);
  PairIndex idx(4);
  for (State p = 0; p < 4; ++p) {
    for (State q = p + 1; q < 4; ++q) {
      const auto w = shortest_merging_word(c4, p, q);
      REQUIRE(w);
      CHECK(dist[idx.index(p, q)] == w->size());
      CHECK(c4.apply(p, *w) == c4.apply(q, *w));
    }
  }
}

TEST_CASE("property: apply_word shrinks and composes") {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Dfa d = testutil::sample(seed, 8, 3);
    const StateSet s = StateSet::from_mask(d.size(), rng() & full_mask(d.size()));
    const Word u = oracle::random_word(rng, d.alphabet_size(), rng() % 6);
    const Word v = oracle::random_word(rng, d.alphabet_size(), rng() % 6);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    const StateSet whole = apply_word(d, s, uv);
    CHECK(whole.size() <= s.size());
    CHECK(whole == apply_word(d, apply_word(d, s, u), v));
  }
}

TEST_CASE("property: synchronizing iff an exact reset word exists") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Dfa d = testutil::sample(seed, 9, 3);
    const bool sync = is_synchronizing(d);
    CHECK(sync == oracle::synchronizes(d));
    const auto w = shortest_reset_word(d, ResetMode::exact);
    CHECK(w.has_value() == sync);
    if (w) CHECK(apply_word(d, StateSet::full(d.size()), *w).size() == 1);
  }
}

TEST_CASE("property: definite index is tight") {
  std::mt19937_64 rng(2);
  std::size_t definite = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Dfa d = testutil::sample(seed, 6, 2);
    const auto k = is_definite(d);
    if (!k) continue;
    ++definite;
    const StateMask q = full_mask(d.size());
    for (int i = 0; i < 1000; ++i) {
      CHECK(oracle::singleton(apply_word(d, StateSet::full(d.size()), oracle::random_word(rng, d.alphabet_size(), *k)).mask()));
    }
    if (*k >= 1) {
      // Some word of length k−1 is not a reset word: enumerate all of them.
      bool found = false;
      std::vector<StateMask> layer{q};
      for (std::size_t step = 0; step + 1 < *k; ++step) {
        std::vector<StateMask> next;
        for (StateMask m : layer) {
          for (Letter a = 0; a < d.alphabet_size(); ++a) next.push_back(oracle::image(d, m, a));
        }
        layer = std::move(next);
      }
      for (StateMask m : layer) found = found || !oracle::singleton(m);
      CHECK(found);
    }
  }
  CHECK(definite > 10);
}

TEST_CASE("property: greedy reset word resets within n·C(n,2)") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Dfa d = testutil::sample(seed, 12, 3);
    const auto w = shortest_reset_word(d, ResetMode::greedy);
    REQUIRE(w.has_value() == oracle::synchronizes(d));
    if (!w) continue;
    const std::size_t n = d.size();
    CHECK(apply_word(d, StateSet::full(n), *w).size() == 1);
    CHECK(w->size() <= n * (n * (n - 1) / 2));
  }
}

TEST_CASE("property: serialize and parse round-trip") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Dfa d = testutil::sample(seed, 10, 4);
    const Dfa back = parse_dfa(serialize_dfa(d));
    CHECK(back == d);
    CHECK(serialize_dfa(back) == serialize_dfa(d));
  }
}

TEST_CASE("StateSet handles universes beyond one word") {
  StateSet s(130);
  s.insert(0);
  s.insert(129);
  CHECK(s.size() == 2);
  CHECK(s.to_string() == "{0,129}");
  CHECK(s.is_subset_of(StateSet::full(130)));
}
