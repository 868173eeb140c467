#include "syncgame/synchronization.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "syncgame/errors.hpp"

namespace syncgame {

std::pair<State, State> PairIndex::pair(std::size_t idx) const {
  State p = 0;
  while (idx >= n_ - 1 - p) {
    idx -= n_ - 1 - p;
    ++p;
  }
  return {p, static_cast<State>(p + 1 + idx)};
}

namespace {

// preimages[a][r] = { q : q·a = r }
std::vector<std::vector<std::vector<State>>> preimages(const Dfa& dfa) {
  std::vector<std::vector<std::vector<State>>> pre(
      dfa.alphabet_size(), std::vector<std::vector<State>>(dfa.size()));
  for (State q = 0; q < dfa.size(); ++q) {
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) pre[a][dfa.next(q, a)].push_back(q);
  }
  return pre;
}

}  // namespace

std::vector<std::optional<std::size_t>> pair_merge_distances(const Dfa& dfa) {
  const PairIndex pairs(dfa.size());
  std::vector<std::optional<std::size_t>> dist(pairs.count());
  const auto pre = preimages(dfa);
  std::deque<std::size_t> queue;

  auto relax_into = [&](State r, State s, std::size_t d) {
    // All pairs {p,q} with p·a = r and q·a = s.
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      for (State p : pre[a][r]) {
        for (State q : pre[a][s]) {
          if (p == q) continue;
          auto& slot = dist[pairs.index(p, q)];
          if (!slot) {
            slot = d;
            queue.push_back(pairs.index(p, q));
          }
        }
      }
    }
  };

  for (State r = 0; r < dfa.size(); ++r) relax_into(r, r, 1);
  while (!queue.empty()) {
    const auto idx = queue.front();
    queue.pop_front();
    auto [p, q] = pairs.pair(idx);
    relax_into(p, q, *dist[idx] + 1);
  }
  return dist;
}

namespace {

Word lex_least_merge(const Dfa& dfa, const PairIndex& pairs,
                     const std::vector<std::optional<std::size_t>>& dist, State p, State q) {
  Word w;
  while (p != q) {
    const std::size_t d = *dist[pairs.index(p, q)];
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      const State p2 = dfa.next(p, a);
      const State q2 = dfa.next(q, a);
      const std::size_t d2 = p2 == q2 ? 0 : dist[pairs.index(p2, q2)].value_or(d);
      if (d2 + 1 == d) {
        w.push_back(a);
        p = p2;
        q = q2;
        break;
      }
    }
  }
  return w;
}

}  // namespace

std::optional<Word> shortest_merging_word(const Dfa& dfa, State p, State q) {
  if (p >= dfa.size() || q >= dfa.size()) throw PreconditionError("state out of range");
  if (p == q) return Word{};
  const PairIndex pairs(dfa.size());
  const auto dist = pair_merge_distances(dfa);
  if (!dist[pairs.index(p, q)]) return std::nullopt;
  return lex_least_merge(dfa, pairs, dist, p, q);
}

bool is_synchronizing(const Dfa& dfa) {
  const auto dist = pair_merge_distances(dfa);
  for (const auto& d : dist) {
    if (!d) return false;
  }
  return true;
}

namespace {

Word exact_reset(const Dfa& dfa) {
  const SubsetAction action(dfa);
  const StateMask start = full_mask(dfa.size());
  if (is_singleton(start)) return {};
  struct Parent {
    StateMask from;
    Letter letter;
  };
  std::unordered_map<StateMask, Parent> parent;
  parent.emplace(start, Parent{start, 0});
  std::deque<StateMask> queue{start};
  while (!queue.empty()) {
    const StateMask cur = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      const StateMask nxt = action.image(cur, a);
      if (parent.count(nxt) != 0) continue;
      parent.emplace(nxt, Parent{cur, a});
      if (is_singleton(nxt)) {
        Word w;
        for (StateMask m = nxt; m != start; m = parent.at(m).from) w.push_back(parent.at(m).letter);
        return Word(w.rbegin(), w.rend());
      }
      queue.push_back(nxt);
    }
  }
  throw InternalError("exact reset search exhausted a synchronizing automaton");
}

Word greedy_reset(const Dfa& dfa) {
  const PairIndex pairs(dfa.size());
  const auto dist = pair_merge_distances(dfa);
  std::vector<State> current;
  for (State q = 0; q < dfa.size(); ++q) current.push_back(q);
  Word out;
  while (current.size() > 1) {
    std::size_t best = 0;
    std::pair<State, State> best_pair{0, 0};
    bool found = false;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        const std::size_t d = *dist[pairs.index(current[i], current[j])];
        if (!found || d < best) {
          best = d;
          best_pair = {current[i], current[j]};
          found = true;
        }
      }
    }
    const Word piece = lex_least_merge(dfa, pairs, dist, best_pair.first, best_pair.second);
    out.insert(out.end(), piece.begin(), piece.end());
    std::vector<State> next;
    for (State q : current) {
      const State r = dfa.apply(q, piece);
      if (std::find(next.begin(), next.end(), r) == next.end()) next.push_back(r);
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return out;
}

}  // namespace

std::optional<Word> shortest_reset_word(const Dfa& dfa, ResetMode mode, std::size_t exact_bound) {
  if (mode == ResetMode::exact && dfa.size() > exact_bound) {
    throw CapExceeded("exact reset search is limited to " + std::to_string(exact_bound) +
                      " states; use greedy mode");
  }
  if (!is_synchronizing(dfa)) return std::nullopt;
  return mode == ResetMode::exact ? exact_reset(dfa) : greedy_reset(dfa);
}

bool is_weakly_acyclic(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  std::vector<std::vector<State>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (State q = 0; q < n; ++q) {
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      const State r = dfa.next(q, a);
      if (r == q) continue;
      if (std::find(succ[q].begin(), succ[q].end(), r) != succ[q].end()) continue;
      succ[q].push_back(r);
      ++indegree[r];
    }
  }
  std::vector<State> ready;
  for (State q = 0; q < n; ++q) {
    if (indegree[q] == 0) ready.push_back(q);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const State q = ready.back();
    ready.pop_back();
    ++removed;
    for (State r : succ[q]) {
      if (--indegree[r] == 0) ready.push_back(r);
    }
  }
  return removed == n;
}

std::optional<std::size_t> is_definite(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  if (n == 1) return 0;
  const PairIndex pairs(n);
  const std::size_t m = pairs.count();
  std::vector<std::vector<std::size_t>> succ(m);
  std::vector<std::size_t> indegree(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    auto [p, q] = pairs.pair(i);
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      const State p2 = dfa.next(p, a);
      const State q2 = dfa.next(q, a);
      if (p2 == q2) continue;
      const std::size_t j = pairs.index(p2, q2);
      succ[i].push_back(j);
      ++indegree[j];
    }
  }
  // Longest path (in edges) through the non-diagonal pair graph, if acyclic.
  std::vector<std::size_t> longest(m, 0);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < m; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  std::size_t best = 0;
  while (!ready.empty()) {
    const std::size_t i = ready.back();
    ready.pop_back();
    ++removed;
    best = std::max(best, longest[i]);
    for (std::size_t j : succ[i]) {
      longest[j] = std::max(longest[j], longest[i] + 1);
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  if (removed != m) return std::nullopt;
  return best + 1;
}

}  // namespace syncgame
