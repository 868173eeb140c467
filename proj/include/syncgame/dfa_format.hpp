#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "syncgame/dfa.hpp"

namespace syncgame {

/// Parses the line-based DFA text format:
///
///     # comment
///     name: optional label
///     states: 3
///     alphabet: a b
///     transitions:
///     0 a 0
///     1 a 2
///     ...
///
/// State names that are all integers below `states` keep their value as
/// index; otherwise states are numbered in order of first appearance.
/// Throws ParseError with line and column on any violation.
Dfa parse_dfa(std::string_view text);
Dfa parse_dfa(std::istream& in);

/// Emits the same format with numeric state names; parse_dfa of the result
/// reproduces the automaton.
std::string serialize_dfa(const Dfa& dfa);

}  // namespace syncgame
