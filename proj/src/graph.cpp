#include "syncgame/graph.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace syncgame {

SccResult strongly_connected_components(
    std::size_t n,
    const std::function<void(std::size_t, const std::function<void(std::size_t)>&)>& for_each_successor) {
  // Iterative Tarjan. Successor lists are materialised per node on entry.
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), raw(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  struct Frame {
    std::size_t node;
    std::vector<std::size_t> succ;
    std::size_t next = 0;
  };
  std::vector<Frame> call;
  std::size_t counter = 0;
  std::size_t raw_count = 0;
  std::vector<std::size_t> raw_order;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    auto enter = [&](std::size_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      Frame f{v, {}, 0};
      for_each_successor(v, [&](std::size_t w) { f.succ.push_back(w); });
      call.push_back(std::move(f));
    };
    enter(root);
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < f.succ.size()) {
        const std::size_t w = f.succ[f.next++];
        if (index[w] == kUnvisited) {
          enter(w);
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::size_t v = f.node;
      call.pop_back();
      if (!call.empty()) {
        low[call.back().node] = std::min(low[call.back().node], low[v]);
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw[w] = raw_count;
        } while (w != v);
        raw_order.push_back(raw_count);
        ++raw_count;
      }
    }
  }

  SccResult out;
  std::vector<std::size_t> relabel(raw_count, kUnvisited);
  out.component.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (relabel[raw[v]] == kUnvisited) relabel[raw[v]] = out.count++;
    out.component[v] = relabel[raw[v]];
  }
  // Tarjan emits components sinks first.
  for (std::size_t c : raw_order) out.sinks_first.push_back(relabel[c]);
  return out;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a != b) parent_[std::max(a, b)] = std::min(a, b);
}

std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels, std::size_t* count) {
  std::unordered_map<std::size_t, std::size_t> relabel;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = relabel.emplace(labels[i], relabel.size());
    out[i] = it->second;
  }
  if (count != nullptr) *count = relabel.size();
  return out;
}

}  // namespace syncgame
