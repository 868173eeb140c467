#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "syncgame/dfa.hpp"

namespace syncgame {

enum class BuiltinName { intro_example, b2, b2_prime, e_automaton, f_automaton };

/// All builtins in declaration order.
const std::vector<BuiltinName>& builtin_names();
std::string_view to_string(BuiltinName name);
/// Accepts the canonical names plus the short aliases "intro", "e", "f".
std::optional<BuiltinName> parse_builtin_name(std::string_view text);

/// The fixed automata of the game literature: the three-state opening
/// example, the Brandt automaton B2, B2 with an identity letter, the
/// automaton E separating adaptive from uniform play, and F, won by Alice
/// only under the normal rule.
Dfa builtin(BuiltinName name);

/// Černý automaton: 0·a = 1, m·a = m otherwise; m·b = m+1 mod n.
Dfa cerny(std::size_t n);

/// Two layers over the states of `dfa`: (q,0)·x = (q·x,1);
/// (q,1)·b = (q,0); (q,1)·x = (q0,1) for x ≠ b. State (q,layer) has index
/// q + layer·n.
Dfa duplication(const Dfa& dfa, State q0, Letter b);

enum class RandomKind { weakly_acyclic, commutative, arbitrary };

std::string_view to_string(RandomKind kind);
std::optional<RandomKind> parse_random_kind(std::string_view text);

/// Deterministic in `seed`. Letters are named a, b, c, ...
///  - weakly_acyclic: every transition goes forward in a random total order
///    or loops;
///  - commutative: letters are powers t^e of one random transformation t;
///  - arbitrary: uniform random table.
Dfa random_family(RandomKind kind, std::size_t n, std::size_t k, std::uint64_t seed);

/// Draws from random_family with successive sub-seeds until the sample is
/// synchronizing. Gives up after `attempts` draws.
std::optional<Dfa> random_synchronizing(RandomKind kind, std::size_t n, std::size_t k,
                                        std::uint64_t seed, std::size_t attempts = 10'000);

/// Adds a letter acting as the identity.
Dfa with_identity_letter(const Dfa& dfa, std::string letter);

/// Letter symbols a, b, c, ... then l26, l27, ...
std::vector<std::string> default_alphabet(std::size_t k);

}  // namespace syncgame
