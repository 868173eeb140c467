#include "syncgame/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "syncgame/errors.hpp"
#include "syncgame/synchronization.hpp"

namespace syncgame {

namespace {

Dfa from_rows(std::string name, std::vector<std::string> alphabet,
              const std::vector<std::vector<State>>& rows) {
  std::vector<State> table;
  for (const auto& row : rows) table.insert(table.end(), row.begin(), row.end());
  return Dfa(rows.size(), std::move(alphabet), std::move(table), std::move(name));
}

}  // namespace

const std::vector<BuiltinName>& builtin_names() {
  static const std::vector<BuiltinName> names{BuiltinName::intro_example, BuiltinName::b2,
                                              BuiltinName::b2_prime, BuiltinName::e_automaton,
                                              BuiltinName::f_automaton};
  return names;
}

std::string_view to_string(BuiltinName name) {
  switch (name) {
    case BuiltinName::intro_example: return "intro_example";
    case BuiltinName::b2: return "b2";
    case BuiltinName::b2_prime: return "b2_prime";
    case BuiltinName::e_automaton: return "e_automaton";
    case BuiltinName::f_automaton: return "f_automaton";
  }
  return "";
}

std::optional<BuiltinName> parse_builtin_name(std::string_view text) {
  for (auto name : builtin_names()) {
    if (to_string(name) == text) return name;
  }
  if (text == "intro") return BuiltinName::intro_example;
  if (text == "e" || text == "E") return BuiltinName::e_automaton;
  if (text == "f" || text == "F") return BuiltinName::f_automaton;
  if (text == "B2") return BuiltinName::b2;
  if (text == "b2'" || text == "B2'") return BuiltinName::b2_prime;
  return std::nullopt;
}

Dfa builtin(BuiltinName name) {
  // Rows list q·a, q·b(, q·c) for q = 0, 1, ...
  switch (name) {
    case BuiltinName::intro_example:
      return from_rows("intro_example", {"a", "b"}, {{0, 0}, {0, 2}, {2, 1}});
    case BuiltinName::b2:
      return from_rows("b2", {"a", "b"}, {{0, 0}, {2, 0}, {0, 1}});
    case BuiltinName::b2_prime:
      return from_rows("b2_prime", {"a", "b", "c"}, {{0, 0, 0}, {2, 0, 1}, {0, 1, 2}});
    case BuiltinName::e_automaton:
      return from_rows("e_automaton", {"a", "b", "c"},
                       {{0, 0, 0}, {2, 1, 1}, {0, 3, 4}, {5, 3, 0}, {5, 0, 4}, {5, 0, 0}});
    case BuiltinName::f_automaton:
      return from_rows("f_automaton", {"a", "b", "c"}, {{1, 1, 0}, {1, 2, 1}, {2, 0, 1}});
  }
  throw PreconditionError("unknown builtin");
}

Dfa cerny(std::size_t n) {
  if (n < 2) throw PreconditionError("Cerny automaton needs n >= 2");
  std::vector<State> table;
  for (State m = 0; m < n; ++m) {
    table.push_back(m == 0 ? 1 : m);
    table.push_back(static_cast<State>((m + 1) % n));
  }
  return Dfa(n, {"a", "b"}, std::move(table), "cerny(" + std::to_string(n) + ")");
}

Dfa duplication(const Dfa& dfa, State q0, Letter b) {
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.alphabet_size();
  if (k < 2) throw PreconditionError("duplication needs at least two letters");
  if (q0 >= n) throw PreconditionError("duplication: q0 out of range");
  if (b >= k) throw PreconditionError("duplication: letter out of range");
  std::vector<State> table(2 * n * k);
  for (State q = 0; q < n; ++q) {
    for (Letter a = 0; a < k; ++a) {
      table[q * k + a] = static_cast<State>(dfa.next(q, a) + n);
      table[(q + n) * k + a] = a == b ? q : static_cast<State>(q0 + n);
    }
  }
  std::string name = "duplication(" + dfa.name().value_or("dfa") + ")";
  return Dfa(2 * n, dfa.alphabet(), std::move(table), std::move(name));
}

std::string_view to_string(RandomKind kind) {
  switch (kind) {
    case RandomKind::weakly_acyclic: return "weakly_acyclic";
    case RandomKind::commutative: return "commutative";
    case RandomKind::arbitrary: return "arbitrary";
  }
  return "";
}

std::optional<RandomKind> parse_random_kind(std::string_view text) {
  for (auto kind : {RandomKind::weakly_acyclic, RandomKind::commutative, RandomKind::arbitrary}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::vector<std::string> default_alphabet(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "l" + std::to_string(i));
  }
  return out;
}

Dfa random_family(RandomKind kind, std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0 || k == 0) throw PreconditionError("random_family needs n, k >= 1");
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
  };
  std::vector<State> table(n * k);
  switch (kind) {
    case RandomKind::arbitrary:
      for (auto& t : table) t = static_cast<State>(uniform(n));
      break;
    case RandomKind::weakly_acyclic: {
      std::vector<State> order(n);  // order[i] = state at position i
      std::iota(order.begin(), order.end(), State{0});
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t pos = 0; pos < n; ++pos) {
        for (Letter a = 0; a < k; ++a) {
          table[order[pos] * k + a] = order[pos + uniform(n - pos)];
        }
      }
      break;
    }
    case RandomKind::commutative: {
      std::vector<State> t(n);
      for (auto& x : t) x = static_cast<State>(uniform(n));
      for (Letter a = 0; a < k; ++a) {
        const std::size_t exponent = 1 + uniform(2 * n);
        for (State q = 0; q < n; ++q) {
          State r = q;
          for (std::size_t i = 0; i < exponent; ++i) r = t[r];
          table[q * k + a] = r;
        }
      }
      break;
    }
  }
  std::string name = std::string(to_string(kind)) + "(n=" + std::to_string(n) +
                     ",k=" + std::to_string(k) + ",seed=" + std::to_string(seed) + ")";
  return Dfa(n, default_alphabet(k), std::move(table), std::move(name));
}

std::optional<Dfa> random_synchronizing(RandomKind kind, std::size_t n, std::size_t k,
                                        std::uint64_t seed, std::size_t attempts) {
  std::mt19937_64 seeds(seed * 0x9E3779B97F4A7C15ULL + 1);
  for (std::size_t i = 0; i < attempts; ++i) {
    Dfa d = random_family(kind, n, k, seeds());
    if (is_synchronizing(d)) return d;
  }
  return std::nullopt;
}

Dfa with_identity_letter(const Dfa& dfa, std::string letter) {
  auto alphabet = dfa.alphabet();
  alphabet.push_back(std::move(letter));
  const std::size_t k = dfa.alphabet_size();
  std::vector<State> table;
  for (State q = 0; q < dfa.size(); ++q) {
    for (Letter a = 0; a < k; ++a) table.push_back(dfa.next(q, a));
    table.push_back(q);
  }
  return Dfa(dfa.size(), std::move(alphabet), std::move(table), dfa.name());
}

}  // namespace syncgame
