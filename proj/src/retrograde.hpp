#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace syncgame::detail {

/// Explicit two-turn game graph. Every position exists once as an Alice
/// node and once as a Bob node. Won positions are worth 0 on both turns.
struct RetroGraph {
  std::vector<bool> won;
  /// Alice node → Bob node, one entry per letter.
  std::vector<std::vector<std::size_t>> alice_succ;
  /// Bob node → Alice node, distinct targets.
  std::vector<std::vector<std::size_t>> bob_succ;
};

struct RetroValues {
  std::vector<std::optional<std::size_t>> alice;
  std::vector<std::optional<std::size_t>> bob;
};

/// Alice value = 1 + min over her successors' Bob values; Bob value = max
/// over his successors' Alice values; unresolved nodes are Bob wins.
/// Nodes are settled in nondecreasing value order (bucket queue).
RetroValues retrograde(const RetroGraph& g);

/// Same values when Bob may answer with any word: his value at p is the
/// largest Alice value over everything reachable from p. Works on the
/// condensation of the letter graph, so no closure is materialised.
/// `succ` is indexed p * letters + a; won positions must be closed under it.
RetroValues retrograde_closure(const std::vector<bool>& won, std::size_t letters,
                               const std::vector<std::size_t>& succ);

}  // namespace syncgame::detail
