#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace syncgame {

/// Strongly connected components of a digraph on nodes 0..n-1.
struct SccResult {
  /// Component id per node; ids are numbered by smallest member node.
  std::vector<std::size_t> component;
  std::size_t count = 0;
  /// Component ids in an order where every edge between distinct
  /// components goes from a later entry to an earlier one (sinks first).
  std::vector<std::size_t> sinks_first;
};

/// `for_each_successor(v, visit)` must call `visit(w)` for every edge v→w.
SccResult strongly_connected_components(
    std::size_t n,
    const std::function<void(std::size_t, const std::function<void(std::size_t)>&)>& for_each_successor);

/// Plain union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
};

/// Relabels arbitrary group labels so that group ids are numbered by
/// their smallest member index.
std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels,
                                          std::size_t* count = nullptr);

}  // namespace syncgame
