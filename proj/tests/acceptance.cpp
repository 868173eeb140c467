// Acceptance run: one PASS/FAIL line per primary criterion.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "support/oracles.hpp"
#include "support/util.hpp"
#include "syncgame/board.hpp"
#include "syncgame/constructions.hpp"
#include "syncgame/errors.hpp"
#include "syncgame/game.hpp"
#include "syncgame/monoid.hpp"
#include "syncgame/synchronization.hpp"
#include "syncgame/uniform.hpp"

using namespace syncgame;

namespace {

constexpr double kCernyBudgetSeconds = 10.0;
constexpr double kDuplicationBudgetSeconds = 300.0;
constexpr std::size_t kSampleMonoidCap = 50'000;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (condition || !ok) {
      ok = ok && condition;
      return;
    }
    ok = false;
    detail = what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(SYNCGAME_FIXTURES) + "/" + name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

StateMask after(const Dfa& d, const std::string& word) {
  StateMask m = full_mask(d.size());
  for (Letter a : d.parse_word(word)) m = oracle::image(d, m, a);
  return m;
}

StateMask mask_of(const std::vector<State>& states) {
  StateMask m = 0;
  for (State q : states) m |= StateMask{1} << q;
  return m;
}

bool same_transformations(const TransitionMonoid& x, const TransitionMonoid& y) {
  std::set<std::vector<State>> a, b;
  for (const auto& t : x.elements()) a.insert(t.image);
  for (const auto& t : y.elements()) b.insert(t.image);
  return a == b;
}

Outcome cerny_lengths() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t n = 3; n <= 7; ++n) {
    const auto w = shortest_reset_word(cerny(n), ResetMode::exact);
    o.require(w && w->size() == (n - 1) * (n - 1), "length mismatch at n=" + std::to_string(n));
  }
  const double t = seconds_since(start);
  o.require(t < kCernyBudgetSeconds, "took " + std::to_string(t) + " s");
  if (o.ok) o.detail = "n=3..7 in " + std::to_string(t) + " s";
  return o;
}

Outcome b2_facts() {
  Outcome o;
  const Dfa b2 = builtin(BuiltinName::b2);
  o.require(verify_uniform_strategy(b2, b2.parse_word("ab"), GameRule::normal), "ab fails");
  o.require(verify_uniform_strategy(b2, b2.parse_word("ba"), GameRule::normal), "ba fails");
  const auto r = decide_uws(b2, GameRule::normal);
  o.require(r.word && r.word->size() == 2, "uws length is not 2");
  const auto m = enumerate_monoid(b2);
  o.require(!is_ds(m), "T(B2) reported in DS");
  o.require(m.size() == 6, "|T(B2)| = " + std::to_string(m.size()));
  return o;
}

Outcome b2_prime_facts() {
  Outcome o;
  const Dfa b2p = builtin(BuiltinName::b2_prime);
  o.require(is_a_automaton(b2p, GameRule::normal), "not an A-automaton");
  const auto r = decide_uws(b2p, GameRule::normal);
  o.require(!r.exists, "a uniform strategy was found");
  o.require(same_transformations(enumerate_monoid(b2p), enumerate_monoid(builtin(BuiltinName::b2))),
            "T(B2') differs from T(B2)");
  if (o.ok) o.detail = "search exhausted after " + std::to_string(r.explored) + " configurations";
  return o;
}

Outcome e_facts() {
  Outcome o;
  const Dfa e = builtin(BuiltinName::e_automaton);
  o.require(solve_token_game(e, full_mask(6), GameRule::normal).value() == GameValue{2}, "token value is not 2");

  struct Row {
    const char* alice;
    const char* bob;
    std::vector<State> tokens;
  };
  const Row rows[] = {{"aa", "ba", {0, 5}}, {"ab", "ba", {0, 5}}, {"ac", "ca", {0, 5}},
                      {"ba", "bb", {0, 3}}, {"bb", "bb", {0, 1, 3}}, {"bc", "bc", {0, 1}},
                      {"ca", "cc", {0, 4}}, {"cb", "cb", {0, 1}}, {"cc", "cc", {0, 1, 4}}};
  for (const Row& r : rows) {
    o.require(!verify_uniform_strategy(e, e.parse_word(r.alice), GameRule::normal),
              std::string(r.alice) + " verifies");
    const std::string played{r.alice[0], r.bob[0], r.alice[1], r.bob[1]};
    o.require(after(e, played) == mask_of(r.tokens), "tokens after " + played);
  }
  const char* replies[] = {"aa", "ab", "ac", "ba", "bb", "bc", "ca", "cb", "cc"};
  const std::vector<std::vector<State>> second = {{0}, {0}, {0}, {0, 5}, {0, 3}, {0}, {0}, {0}, {0}};
  for (std::size_t i = 0; i < 9; ++i) {
    const std::string played{'a', replies[i][0], 'b', replies[i][1]};
    o.require(after(e, played) == mask_of(second[i]), "tokens after " + played);
  }
  o.require(verify_uniform_strategy(e, e.parse_word("abc"), GameRule::normal), "abc fails");
  const auto r = decide_uws(e, GameRule::normal);
  o.require(r.word && r.word->size() == 3, "uws length is not 3");
  o.require(is_weakly_acyclic(e), "not weakly acyclic");
  o.require(is_ds(enumerate_monoid(e)), "T(E) not in DS");
  return o;
}

Outcome f_facts() {
  Outcome o;
  const Dfa f = builtin(BuiltinName::f_automaton);
  o.require(is_a_automaton(f, GameRule::normal), "normal: not an A-automaton");
  o.require(!is_a_automaton(f, GameRule::modified), "modified: A-automaton");
  const Letter a = *f.letter_index("a");
  const Letter b = *f.letter_index("b");
  std::size_t lines = 0;
  std::size_t fewest = f.size();
  std::function<void(StateMask, std::size_t)> walk = [&](StateMask m, std::size_t depth) {
    if (depth == 12) {
      ++lines;
      return;
    }
    for (Letter x = 0; x < f.alphabet_size(); ++x) {
      StateMask t = oracle::image(f, m, x);
      fewest = std::min<std::size_t>(fewest, popcount(t));
      t = oracle::image(f, t, b);
      if (x != a) t = oracle::image(f, t, b);
      fewest = std::min<std::size_t>(fewest, popcount(t));
      walk(t, depth + 1);
    }
  };
  walk(full_mask(f.size()), 0);
  o.require(lines == 531441, "enumerated " + std::to_string(lines) + " lines");
  o.require(fewest >= 2, "policy let the tokens merge");
  if (o.ok) o.detail = std::to_string(lines) + " lines, at least " + std::to_string(fewest) + " tokens";
  return o;
}

Outcome ds_both_rules() {
  Outcome o;
  std::size_t fallbacks = 0;
  for (RandomKind kind : {RandomKind::weakly_acyclic, RandomKind::commutative}) {
    std::size_t done = 0;
    for (std::uint64_t seed = 0; done < 500; ++seed) {
      const auto d = random_synchronizing(kind, 1 + seed % 7, 1 + seed % 3, seed);
      if (!d) continue;
      ++done;
      const std::string where = std::string(to_string(kind)) + " seed " + std::to_string(seed);
      try {
        const auto s = ds_uniform_strategy(*d);
        fallbacks += s.fallback;
        o.require(verify_uniform_strategy(*d, s.word, GameRule::normal), where + " normal");
        o.require(verify_uniform_strategy(*d, s.word, GameRule::modified), where + " modified");
      } catch (const Error& e) {
        o.require(false, where + ": " + e.what());
      }
    }
  }
  if (o.ok) o.detail = "1000 samples, " + std::to_string(fallbacks) + " fallbacks";
  return o;
}

Outcome identity_letter() {
  Outcome o;
  std::size_t done = 0;
  std::size_t existing = 0;
  for (std::uint64_t seed = 0; done < 200; ++seed) {
    const Dfa d = testutil::sample(seed, 6, 2);
    std::optional<TransitionMonoid> m;
    try {
      m = enumerate_monoid(d, kSampleMonoidCap);
    } catch (const CapExceeded&) {
      continue;
    }
    if (!is_ds(*m)) continue;
    ++done;
    const Dfa widened = with_identity_letter(d, "z");
    const std::string where = "seed " + std::to_string(seed);
    o.require(is_ds(enumerate_monoid(widened, kSampleMonoidCap)), where + " left DS");
    const bool before = decide_uws(d, GameRule::normal).exists;
    existing += before;
    o.require(before == decide_uws(widened, GameRule::normal).exists, where + " changed existence");
  }
  o.require(decide_uws(builtin(BuiltinName::b2), GameRule::normal).exists, "B2 has no strategy");
  o.require(!decide_uws(builtin(BuiltinName::b2_prime), GameRule::normal).exists, "B2' has a strategy");
  if (o.ok) o.detail = "200 DS samples, " + std::to_string(existing) + " with a strategy";
  return o;
}

Outcome duplication_bounds() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  for (std::size_t n : {3, 4}) {
    const Dfa c = cerny(n);
    const Dfa d = duplication(c, 0, *c.letter_index("b"));
    const std::size_t l = (n - 1) * (n - 1);
    const std::string at = "n=" + std::to_string(n);
    o.require(is_a_automaton(d, GameRule::normal), at + " not an A-automaton");
    const auto v = solve_token_game(d, full_mask(d.size()), GameRule::normal).value();
    o.require(v && *v > l, at + " token value too small");
    try {
      const auto r = decide_uws(d, GameRule::normal);
      o.require(!r.word || r.word->size() >= l, at + " uws too short");
      detail << at << ": value " << (v ? std::to_string(*v) : "inf") << ", uws "
             << (r.word ? std::to_string(r.word->size()) : "none") << "; ";
    } catch (const CapExceeded& e) {
      o.require(false, at + ": " + e.what());
    }
  }
  const double t = seconds_since(start);
  o.require(t < kDuplicationBudgetSeconds, "took " + std::to_string(t) + " s");
  if (o.ok) o.detail = detail.str() + std::to_string(t) + " s";
  return o;
}

Outcome kernel_constants() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Dfa d = testutil::sample(seed, 6, 3);
    const auto m = enumerate_monoid(d);
    const auto k = kernel(m);
    const bool constant = std::all_of(k.begin(), k.end(), [&](std::size_t e) { return m.element(e).is_constant(); });
    o.require(constant == oracle::synchronizes(d), "seed " + std::to_string(seed));
  }
  return o;
}

Outcome pair_vs_full() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Dfa d = testutil::sample(seed, 8, 3);
    const bool pair = is_a_automaton(d, GameRule::normal);
    const bool full = solve_token_game(d, full_mask(d.size()), GameRule::normal).value().has_value();
    o.require(pair == full, "seed " + std::to_string(seed));
  }
  return o;
}

Outcome canonicalization() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Dfa d = testutil::sample(seed, 5, 3);
    for (GameRule rule : {GameRule::normal, GameRule::modified}) {
      const std::string where = "seed " + std::to_string(seed) + " " + std::string(to_string(rule));
      const auto brute = oracle::unreduced_uws(d, rule == GameRule::modified);
      o.require(brute.decided, where + " brute force undecided");
      const auto r = decide_uws(d, rule);
      o.require(r.exists == brute.length.has_value(), where + " existence");
      if (r.word && brute.length) o.require(r.word->size() == *brute.length, where + " length");
    }
  }
  if (o.ok) o.detail = "500 samples, both rules";
  return o;
}

Outcome board_fixture() {
  Outcome o;
  const auto board = std::get<GridBoard>(parse_board(fixture_text("fig1-left.board")));
  const Dfa d = compile_grid(board);
  const State p = board.state_of(board.labels.at("p"));
  const State q = board.state_of(board.labels.at("q"));
  const State r = board.state_of(board.labels.at("r"));
  const State sigma = board.sink();
  auto at = [&](State s, const char* w) { return d.apply(s, d.parse_word(w)); };
  o.require(at(r, "wsss") == p && at(r, "esss") == p && at(r, "nsss") == p, "r·wsss, r·esss, r·nsss");
  o.require(at(p, "w") == q, "p·w");
  o.require(at(p, "sn") == r, "p·sn");
  o.require(at(p, "ns") == p, "p·ns");
  o.require(at(p, "se") == at(q, "n") && at(p, "es") == at(q, "n"), "p·se, p·es");
  o.require(at(q, "eeeeee") == sigma, "q·e^6");
  o.require(at(p, "sn") == at(p, "nn") && at(p, "sn") != at(p, "ns"), "p·sn, p·nn, p·ns");

  std::set<std::pair<State, State>> layer{{p, q}};
  std::set<std::pair<State, State>> seen = layer;
  for (int depth = 0; depth < 12; ++depth) {
    std::set<std::pair<State, State>> next;
    for (const auto& [x, y] : layer) {
      for (Letter a = 0; a < d.alphabet_size(); ++a) {
        const std::pair<State, State> t{d.next(x, a), d.next(y, a)};
        if (seen.insert(t).second) next.insert(t);
      }
    }
    layer = std::move(next);
  }
  for (const auto& [x, y] : seen) {
    if (x == sigma || y == sigma) continue;
    const Cell c = board.cell_of(x);
    const Cell e = board.cell_of(y);
    const long dist = std::labs(static_cast<long>(c.x) - static_cast<long>(e.x)) +
                      std::labs(static_cast<long>(c.y) - static_cast<long>(e.y));
    o.require(dist % 2 == 1, "even distance reached");
  }
  if (o.ok) o.detail = std::to_string(seen.size()) + " pairs to depth 12";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"cerny-lengths", cerny_lengths},
      {"b2", b2_facts},
      {"b2-prime", b2_prime_facts},
      {"e-automaton", e_facts},
      {"f-automaton", f_facts},
      {"ds-strategy-both-rules", ds_both_rules},
      {"identity-letter-boundary", identity_letter},
      {"duplication", duplication_bounds},
      {"kernel-constants", kernel_constants},
      {"pair-vs-full-game", pair_vs_full},
      {"canonicalization", canonicalization},
      {"board-fixture", board_fixture},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ')';
    std::cout << std::endl;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
