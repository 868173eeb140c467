#include "retrograde.hpp"

#include <algorithm>

namespace syncgame::detail {

RetroValues retrograde(const RetroGraph& g) {
  const std::size_t n = g.won.size();
  RetroValues v;
  v.alice.assign(n, std::nullopt);
  v.bob.assign(n, std::nullopt);

  std::vector<std::vector<std::size_t>> alice_pred(n), bob_pred(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q : g.alice_succ[p]) alice_pred[q].push_back(p);
    for (std::size_t q : g.bob_succ[p]) bob_pred[q].push_back(p);
  }
  for (auto& preds : alice_pred) {
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
  }
  std::vector<std::size_t> remaining(n);
  for (std::size_t p = 0; p < n; ++p) remaining[p] = g.bob_succ[p].size();

  struct Item {
    std::size_t node;
    bool alice;
  };
  std::vector<std::vector<Item>> buckets(1);
  for (std::size_t p = 0; p < n; ++p) {
    if (!g.won[p]) continue;
    v.alice[p] = 0;
    v.bob[p] = 0;
    buckets[0].push_back({p, true});
    buckets[0].push_back({p, false});
  }

  for (std::size_t value = 0; value < buckets.size(); ++value) {
    // The bucket grows while it is processed: settling an Alice node can
    // settle Bob nodes at the same value.
    for (std::size_t i = 0; i < buckets[value].size(); ++i) {
      const Item item = buckets[value][i];
      if (item.alice) {
        for (std::size_t p : bob_pred[item.node]) {
          if (v.bob[p]) continue;
          if (--remaining[p] == 0) {
            v.bob[p] = value;
            buckets[value].push_back({p, false});
          }
        }
      } else {
        for (std::size_t p : alice_pred[item.node]) {
          if (v.alice[p]) continue;
          v.alice[p] = value + 1;
          if (buckets.size() <= value + 1) buckets.resize(value + 2);
          buckets[value + 1].push_back({p, true});
        }
      }
    }
  }
  return v;
}

}  // namespace syncgame::detail

namespace syncgame::detail {

namespace {

/// Iterative Tarjan. Components come out in reverse topological order.
std::vector<std::size_t> components(std::size_t n, std::size_t letters, const std::vector<std::size_t>& succ,
                                    std::size_t& count) {
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unseen), low(n), comp(n, unseen);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // node, next letter
  std::size_t counter = 0;
  count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unseen) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    while (!call.empty()) {
      auto& [v, a] = call.back();
      if (a < letters) {
        const std::size_t w = succ[v * letters + a++];
        if (index[w] == unseen) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          call.push_back({w, 0});
        } else if (comp[w] == unseen) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          comp[w] = count;
        } while (w != done);
        ++count;
      }
    }
  }
  return comp;
}

/// Compressed adjacency lists.
struct Csr {
  std::vector<std::size_t> start, items;
  template <typename Edges>
  Csr(std::size_t n, Edges edges) : start(n + 1, 0) {
    edges([&](std::size_t from, std::size_t) { ++start[from + 1]; });
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    items.resize(start[n]);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    edges([&](std::size_t from, std::size_t to) { items[fill[from]++] = to; });
  }
  const std::size_t* begin(std::size_t i) const { return items.data() + start[i]; }
  const std::size_t* end(std::size_t i) const { return items.data() + start[i + 1]; }
};

}  // namespace

RetroValues retrograde_closure(const std::vector<bool>& won, std::size_t letters,
                               const std::vector<std::size_t>& succ) {
  const std::size_t n = won.size();
  RetroValues v;
  v.alice.assign(n, std::nullopt);
  v.bob.assign(n, std::nullopt);

  std::size_t comps = 0;
  const std::vector<std::size_t> comp = components(n, letters, succ, comps);

  // Unsettled members plus edges into unsettled components.
  std::vector<std::size_t> pending(comps, 0);
  for (std::size_t p = 0; p < n; ++p) {
    ++pending[comp[p]];
    for (std::size_t a = 0; a < letters; ++a) {
      if (comp[succ[p * letters + a]] != comp[p]) ++pending[comp[p]];
    }
  }
  const Csr members(comps, [&](auto add) {
    for (std::size_t p = 0; p < n; ++p) add(comp[p], p);
  });
  const Csr comp_pred(comps, [&](auto add) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t a = 0; a < letters; ++a) {
        const std::size_t q = succ[p * letters + a];
        if (comp[q] != comp[p]) add(comp[q], comp[p]);
      }
    }
  });
  const Csr alice_pred(n, [&](auto add) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t a = 0; a < letters; ++a) add(succ[p * letters + a], p);
    }
  });

  struct Item {
    std::size_t id;
    bool alice;  // position for Alice, component for Bob
  };
  std::vector<std::vector<Item>> buckets(1);
  for (std::size_t p = 0; p < n; ++p) {
    if (!won[p]) continue;
    v.alice[p] = 0;
    buckets[0].push_back({p, true});
  }

  for (std::size_t value = 0; value < buckets.size(); ++value) {
    for (std::size_t i = 0; i < buckets[value].size(); ++i) {
      const Item item = buckets[value][i];
      if (item.alice) {
        if (--pending[comp[item.id]] == 0) buckets[value].push_back({comp[item.id], false});
        continue;
      }
      for (const std::size_t* c = comp_pred.begin(item.id); c != comp_pred.end(item.id); ++c) {
        if (--pending[*c] == 0) buckets[value].push_back({*c, false});
      }
      for (const std::size_t* m = members.begin(item.id); m != members.end(item.id); ++m) {
        v.bob[*m] = value;
        for (const std::size_t* r = alice_pred.begin(*m); r != alice_pred.end(*m); ++r) {
          if (v.alice[*r]) continue;
          v.alice[*r] = value + 1;
          if (buckets.size() <= value + 1) buckets.resize(value + 2);
          buckets[value + 1].push_back({*r, true});
        }
      }
    }
  }
  return v;
}

}  // namespace syncgame::detail
