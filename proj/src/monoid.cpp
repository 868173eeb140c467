#include "syncgame/monoid.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <set>

#include "syncgame/errors.hpp"
#include "syncgame/graph.hpp"

namespace syncgame {

bool Transformation::is_constant() const {
  return std::all_of(image.begin(), image.end(), [&](State q) { return q == image.front(); });
}

std::size_t Transformation::rank() const {
  std::set<State> distinct(image.begin(), image.end());
  return distinct.size();
}

std::string TransitionMonoid::key(const std::vector<State>& image) {
  std::string k(image.size() * sizeof(State), '\0');
  std::memcpy(k.data(), image.data(), k.size());
  return k;
}

std::optional<std::size_t> TransitionMonoid::find(const std::vector<State>& image) const {
  auto it = index_.find(key(image));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t TransitionMonoid::multiply(std::size_t x, std::size_t y) const {
  const auto& fx = elements_[x].image;
  const auto& fy = elements_[y].image;
  std::vector<State> img(degree_);
  for (std::size_t q = 0; q < degree_; ++q) img[q] = fy[fx[q]];
  return index_.at(key(img));
}

TransitionMonoid enumerate_monoid(const Dfa& dfa, std::size_t cap) {
  TransitionMonoid m;
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.alphabet_size();
  m.degree_ = n;

  std::vector<State> id(n);
  std::iota(id.begin(), id.end(), State{0});
  m.index_.emplace(TransitionMonoid::key(id), 0);
  m.elements_.push_back({std::move(id), {}});

  std::vector<State> img(n);
  for (std::size_t i = 0; i < m.elements_.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      const auto& src = m.elements_[i].image;
      for (std::size_t q = 0; q < n; ++q) img[q] = dfa.next(src[q], a);
      auto [it, inserted] = m.index_.emplace(TransitionMonoid::key(img), m.elements_.size());
      if (inserted) {
        if (m.elements_.size() >= cap) {
          throw CapExceeded("transition monoid exceeds " + std::to_string(cap) + " elements");
        }
        Word w = m.elements_[i].witness;
        w.push_back(a);
        m.elements_.push_back({img, std::move(w)});
      }
      m.right_.push_back(it->second);
    }
  }

  m.generator_of_.resize(k);
  for (Letter a = 0; a < k; ++a) m.generator_of_[a] = m.right(0, a);

  m.left_.resize(m.elements_.size() * k);
  for (std::size_t e = 0; e < m.elements_.size(); ++e) {
    const auto& fe = m.elements_[e].image;
    for (Letter a = 0; a < k; ++a) {
      for (std::size_t q = 0; q < n; ++q) img[q] = fe[dfa.next(static_cast<State>(q), a)];
      m.left_[e * k + a] = m.index_.at(TransitionMonoid::key(img));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Green's relations

std::vector<std::vector<std::size_t>> GreenClasses::d_members() const {
  std::vector<std::vector<std::size_t>> out(d_count);
  for (std::size_t e = 0; e < d_class.size(); ++e) out[d_class[e]].push_back(e);
  return out;
}

GreenClasses green_classes(const TransitionMonoid& m) {
  const std::size_t size = m.size();
  const std::size_t k = m.generator_count();
  GreenClasses g;

  auto r = strongly_connected_components(size, [&](std::size_t e, const auto& visit) {
    for (Letter a = 0; a < k; ++a) visit(m.right(e, a));
  });
  auto l = strongly_connected_components(size, [&](std::size_t e, const auto& visit) {
    for (Letter a = 0; a < k; ++a) visit(m.left(a, e));
  });
  g.r_class = std::move(r.component);
  g.r_count = r.count;
  g.l_class = std::move(l.component);
  g.l_count = l.count;

  DisjointSets sets(size);
  std::vector<std::size_t> first_r(g.r_count, size), first_l(g.l_count, size);
  for (std::size_t e = 0; e < size; ++e) {
    auto& fr = first_r[g.r_class[e]];
    if (fr == size) fr = e; else sets.unite(fr, e);
    auto& fl = first_l[g.l_class[e]];
    if (fl == size) fl = e; else sets.unite(fl, e);
  }
  std::vector<std::size_t> roots(size);
  for (std::size_t e = 0; e < size; ++e) roots[e] = sets.find(e);
  g.d_class = canonical_labels(roots, &g.d_count);

  for (std::size_t e = 0; e < size; ++e) {
    if (m.multiply(e, e) == e) g.idempotents.push_back(e);
  }

  g.regular.assign(g.d_count, false);
  const auto members = g.d_members();
  for (std::size_t d = 0; d < g.d_count; ++d) {
    for (std::size_t a : members[d]) {
      bool found = m.multiply(m.multiply(a, a), a) == a;
      for (std::size_t s = 0; s < size && !found; ++s) {
        found = m.multiply(m.multiply(a, s), a) == a;
      }
      if (found) {
        g.regular[d] = true;
        break;
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Ideals

IdealOrder::IdealOrder(const TransitionMonoid& m) {
  const std::size_t k = m.generator_count();
  auto scc = strongly_connected_components(m.size(), [&](std::size_t e, const auto& visit) {
    for (Letter a = 0; a < k; ++a) {
      visit(m.right(e, a));
      visit(m.left(a, e));
    }
  });
  j_class_ = std::move(scc.component);
  class_count_ = scc.count;

  std::vector<std::vector<std::size_t>> members(class_count_);
  for (std::size_t e = 0; e < m.size(); ++e) members[j_class_[e]].push_back(e);

  const std::size_t words = (class_count_ + 63) / 64;
  reach_.assign(class_count_, std::vector<std::uint64_t>(words, 0));
  for (std::size_t c : scc.sinks_first) {
    auto& row = reach_[c];
    row[c / 64] |= std::uint64_t{1} << (c % 64);
    for (std::size_t e : members[c]) {
      for (Letter a = 0; a < k; ++a) {
        for (std::size_t t : {m.right(e, a), m.left(a, e)}) {
          const std::size_t d = j_class_[t];
          if (d == c) continue;
          for (std::size_t w = 0; w < words; ++w) row[w] |= reach_[d][w];
        }
      }
    }
  }
}

std::vector<std::size_t> IdealOrder::minimal_classes() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < class_count_; ++c) {
    bool minimal = true;
    for (std::size_t d = 0; d < class_count_ && minimal; ++d) {
      if (d != c && class_below(d, c)) minimal = false;
    }
    if (minimal) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> kernel(const TransitionMonoid& m) {
  const IdealOrder order(m);
  const auto minimal = order.minimal_classes();
  if (minimal.size() != 1) throw InternalError("monoid has no unique minimal ideal");
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < m.size(); ++e) {
    if (order.j_class(e) == minimal.front()) out.push_back(e);
  }
  return out;
}

bool is_ds(const TransitionMonoid& m, const GreenClasses& green) {
  const auto members = green.d_members();
  for (std::size_t d = 0; d < green.d_count; ++d) {
    if (!green.regular[d]) continue;
    for (std::size_t a : members[d]) {
      for (std::size_t b : members[d]) {
        if (green.d_class[m.multiply(a, b)] != d) return false;
      }
    }
  }
  return true;
}

bool is_ds(const TransitionMonoid& m) { return is_ds(m, green_classes(m)); }

bool is_commutative(const TransitionMonoid& m) {
  const std::size_t k = m.generator_count();
  for (Letter a = 0; a < k; ++a) {
    for (Letter b = a + 1; b < k; ++b) {
      if (m.right(m.generator(a), b) != m.right(m.generator(b), a)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Semilattice of Archimedean components

namespace {

std::size_t idempotent_power(const TransitionMonoid& m, std::size_t a) {
  std::size_t p = a;
  for (std::size_t i = 0; i <= m.size(); ++i) {
    if (m.multiply(p, p) == p) return p;
    p = m.multiply(p, a);
  }
  throw InternalError("no idempotent power found");
}

void verify_decomposition(const TransitionMonoid& m, const SemilatticeDecomposition& d) {
  const std::size_t count = d.components.size();
  auto fail = [](const std::string& what) {
    throw InternalError("semilattice decomposition verification failed: " + what);
  };
  // Partition.
  std::vector<bool> seen(m.size(), false);
  for (std::size_t y = 0; y < count; ++y) {
    for (std::size_t e : d.components[y]) {
      if (seen[e] || d.component_of[e] != y) fail("components do not partition the monoid");
      seen[e] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail("element without component");
  // Partial order with meets.
  for (std::size_t x = 0; x < count; ++x) {
    if (!d.leq[x][x]) fail("order not reflexive");
    for (std::size_t y = 0; y < count; ++y) {
      if (x != y && d.leq[x][y] && d.leq[y][x]) fail("order not antisymmetric");
      for (std::size_t z = 0; z < count; ++z) {
        if (d.leq[x][y] && d.leq[y][z] && !d.leq[x][z]) fail("order not transitive");
      }
    }
  }
  // Meet rule along both Cayley graphs; with a semilattice order this
  // yields the rule for arbitrary products and closure of each component.
  const std::size_t k = m.generator_count();
  for (std::size_t e = 0; e < m.size(); ++e) {
    for (Letter a = 0; a < k; ++a) {
      const std::size_t ya = d.component_of[m.generator(a)];
      const std::size_t ye = d.component_of[e];
      if (d.component_of[m.right(e, a)] != d.meet[ye][ya]) fail("right product leaves meet component");
      if (d.component_of[m.left(a, e)] != d.meet[ya][ye]) fail("left product leaves meet component");
    }
  }
  for (std::size_t y = 0; y < count; ++y) {
    if (!d.leq[d.minimal_component][y]) fail("minimal component is not least");
  }
  for (std::size_t e : d.kernel) {
    if (d.component_of[e] != d.minimal_component) fail("kernel outside minimal component");
  }
}

}  // namespace

SemilatticeDecomposition archimedean_decomposition(const TransitionMonoid& m) {
  if (!is_ds(m)) throw NotInDs("transition monoid is not in DS");
  const IdealOrder order(m);
  const std::size_t size = m.size();

  // a ~ b depends only on (J(a), J(a^ω)); relation evaluated on signatures.
  std::vector<std::size_t> omega_class(size);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> signature_id;
  std::vector<std::pair<std::size_t, std::size_t>> signatures;
  std::vector<std::size_t> signature_of(size);
  for (std::size_t e = 0; e < size; ++e) {
    omega_class[e] = order.j_class(idempotent_power(m, e));
    const std::pair<std::size_t, std::size_t> sig{order.j_class(e), omega_class[e]};
    auto [it, inserted] = signature_id.emplace(sig, signatures.size());
    if (inserted) signatures.push_back(sig);
    signature_of[e] = it->second;
  }
  // b divides a power of a, and a divides a power of b.
  auto related = [&](std::size_t s, std::size_t t) {
    return order.class_below(signatures[s].second, signatures[t].first) &&
           order.class_below(signatures[t].second, signatures[s].first);
  };
  const std::size_t sig_count = signatures.size();
  DisjointSets sets(sig_count);
  for (std::size_t s = 0; s < sig_count; ++s) {
    for (std::size_t t = s + 1; t < sig_count; ++t) {
      if (related(s, t)) sets.unite(s, t);
    }
  }
  for (std::size_t s = 0; s < sig_count; ++s) {
    for (std::size_t t = s + 1; t < sig_count; ++t) {
      if (sets.find(s) == sets.find(t) && !related(s, t)) {
        throw InternalError("mutual division is not transitive on this monoid");
      }
    }
  }

  SemilatticeDecomposition d;
  std::vector<std::size_t> roots(size);
  for (std::size_t e = 0; e < size; ++e) roots[e] = sets.find(signature_of[e]);
  std::size_t count = 0;
  d.component_of = canonical_labels(roots, &count);
  d.components.assign(count, {});
  for (std::size_t e = 0; e < size; ++e) d.components[d.component_of[e]].push_back(e);

  d.leq.assign(count, std::vector<bool>(count, false));
  for (std::size_t y = 0; y < count; ++y) {
    const std::size_t a = d.components[y].front();
    for (std::size_t z = 0; z < count; ++z) {
      const std::size_t b = d.components[z].front();
      d.leq[y][z] = order.class_below(omega_class[a], order.j_class(b));
    }
  }
  d.meet.assign(count, std::vector<std::size_t>(count, count));
  for (std::size_t x = 0; x < count; ++x) {
    for (std::size_t y = 0; y < count; ++y) {
      // Greatest common lower bound.
      std::size_t best = count;
      for (std::size_t z = 0; z < count; ++z) {
        if (!d.leq[z][x] || !d.leq[z][y]) continue;
        if (best == count || d.leq[best][z]) best = z;
      }
      for (std::size_t z = 0; z < count && best != count; ++z) {
        if (d.leq[z][x] && d.leq[z][y] && !d.leq[z][best]) best = count;
      }
      if (best == count) {
        throw InternalError("semilattice decomposition verification failed: missing meet");
      }
      d.meet[x][y] = best;
    }
  }
  std::size_t least = 0;
  for (std::size_t y = 1; y < count; ++y) least = d.meet[least][y];
  d.minimal_component = least;
  d.kernel = kernel(m);
  verify_decomposition(m, d);
  return d;
}

std::vector<std::size_t> subsemigroup_kernel(const TransitionMonoid& m,
                                             const std::vector<std::size_t>& members) {
  if (members.empty()) throw PreconditionError("empty subsemigroup");
  // The product of all members lies in the minimal ideal; its two-sided
  // closure inside the subsemigroup is that ideal.
  std::size_t p = members.front();
  for (std::size_t i = 1; i < members.size(); ++i) p = m.multiply(p, members[i]);
  std::vector<bool> in(m.size(), false);
  std::vector<std::size_t> queue{p};
  in[p] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::size_t x = queue[i];
    for (std::size_t c : members) {
      for (std::size_t y : {m.multiply(c, x), m.multiply(x, c)}) {
        if (!in[y]) {
          in[y] = true;
          queue.push_back(y);
        }
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::size_t nilpotency_index(const TransitionMonoid& m, const std::vector<std::size_t>& members) {
  const auto ker = subsemigroup_kernel(m, members);
  std::vector<bool> in_kernel(m.size(), false);
  for (std::size_t e : ker) in_kernel[e] = true;

  std::vector<std::size_t> level = members;  // products of i members
  for (std::size_t i = 1;; ++i) {
    if (std::all_of(level.begin(), level.end(), [&](std::size_t e) { return in_kernel[e]; })) {
      return i;
    }
    if (i >= members.size()) break;
    std::vector<bool> next_in(m.size(), false);
    std::vector<std::size_t> next;
    for (std::size_t x : level) {
      for (std::size_t c : members) {
        const std::size_t y = m.multiply(x, c);
        if (!next_in[y]) {
          next_in[y] = true;
          next.push_back(y);
        }
      }
    }
    level = std::move(next);
  }
  throw PreconditionError("subsemigroup is not nilpotent over its kernel");
}

std::size_t nilpotency_index(const TransitionMonoid& m, const SemilatticeDecomposition& d,
                             std::size_t component) {
  return nilpotency_index(m, d.components.at(component));
}

}  // namespace syncgame
