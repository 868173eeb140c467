#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "syncgame/dfa.hpp"

namespace syncgame {

inline constexpr std::size_t kDefaultMonoidCap = 200'000;

/// A transformation of the state set together with a shortest,
/// lexicographically least word inducing it.
struct Transformation {
  std::vector<State> image;
  Word witness;

  bool is_constant() const;
  std::size_t rank() const;
};

/// The transition monoid of a DFA with its right and left Cayley graphs.
/// Transformations act on the right: q·(xy) = (q·x)·y.
class TransitionMonoid {
 public:
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t generator_count() const noexcept { return generator_of_.size(); }

  const Transformation& element(std::size_t e) const { return elements_.at(e); }
  const std::vector<Transformation>& elements() const noexcept { return elements_; }

  /// Element 0 is the identity.
  static constexpr std::size_t identity() { return 0; }

  /// e·τ_a
  std::size_t right(std::size_t e, Letter a) const { return right_[e * generator_count() + a]; }
  /// τ_a·e
  std::size_t left(Letter a, std::size_t e) const { return left_[e * generator_count() + a]; }
  /// Element index of τ_a.
  std::size_t generator(Letter a) const { return generator_of_.at(a); }

  /// Index of x·y (apply x, then y).
  std::size_t multiply(std::size_t x, std::size_t y) const;

  std::optional<std::size_t> find(const std::vector<State>& image) const;

  friend TransitionMonoid enumerate_monoid(const Dfa& dfa, std::size_t cap);

 private:
  static std::string key(const std::vector<State>& image);

  std::size_t degree_ = 0;
  std::vector<Transformation> elements_;
  std::vector<std::size_t> right_;
  std::vector<std::size_t> left_;
  std::vector<std::size_t> generator_of_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Breadth-first closure from the identity under right multiplication by
/// the generators in letter order. Throws CapExceeded when the monoid has
/// more than `cap` elements.
TransitionMonoid enumerate_monoid(const Dfa& dfa, std::size_t cap = kDefaultMonoidCap);

struct GreenClasses {
  std::vector<std::size_t> r_class;
  std::vector<std::size_t> l_class;
  std::vector<std::size_t> d_class;
  std::size_t r_count = 0;
  std::size_t l_count = 0;
  std::size_t d_count = 0;
  /// Per d-class.
  std::vector<bool> regular;
  std::vector<std::size_t> idempotents;

  /// Members of each d-class, ascending.
  std::vector<std::vector<std::size_t>> d_members() const;
};

/// R-classes are the strongly connected components of the right Cayley
/// graph, L-classes those of the left one, D is their join. A d-class is
/// regular when one of its elements a satisfies a·s·a = a for some s,
/// decided by exhaustive scan.
GreenClasses green_classes(const TransitionMonoid& m);

/// Two-sided divisibility: the quasi-order a ≤_J b ⟺ a ∈ S¹bS¹,
/// precomputed over the condensation of the two-sided Cayley graph.
class IdealOrder {
 public:
  explicit IdealOrder(const TransitionMonoid& m);

  std::size_t j_class(std::size_t e) const { return j_class_[e]; }
  std::size_t class_count() const noexcept { return class_count_; }

  /// a ∈ S¹bS¹
  bool divides(std::size_t b, std::size_t a) const { return class_below(j_class_[a], j_class_[b]); }
  /// Ideal of class `lower` is contained in the ideal of class `upper`.
  bool class_below(std::size_t lower, std::size_t upper) const {
    return ((reach_[upper][lower / 64] >> (lower % 64)) & 1U) != 0;
  }
  /// The j-classes with no strictly smaller class; exactly one for a monoid.
  std::vector<std::size_t> minimal_classes() const;

 private:
  std::vector<std::size_t> j_class_;
  std::size_t class_count_ = 0;
  std::vector<std::vector<std::uint64_t>> reach_;
};

/// The minimal two-sided ideal, ascending element indices.
std::vector<std::size_t> kernel(const TransitionMonoid& m);

/// Every regular d-class is closed under multiplication.
bool is_ds(const TransitionMonoid& m, const GreenClasses& green);
bool is_ds(const TransitionMonoid& m);

/// Generators pairwise commute.
bool is_commutative(const TransitionMonoid& m);

/// Decomposition of a DS monoid into a semilattice of semigroups that are
/// nilpotent over their kernels.
struct SemilatticeDecomposition {
  std::vector<std::size_t> component_of;
  /// Members per component, ascending. Component ids follow the smallest
  /// contained element.
  std::vector<std::vector<std::size_t>> components;
  /// leq[y][y2]: y ≤ y2 in the semilattice order.
  std::vector<std::vector<bool>> leq;
  /// Greatest lower bound table.
  std::vector<std::vector<std::size_t>> meet;
  std::size_t minimal_component = 0;
  std::vector<std::size_t> kernel;
};

/// Components are the classes of a ~ b ⟺ a^k ∈ S¹bS¹ and b^k ∈ S¹aS¹ for
/// some k; the order is y ≤ y2 iff a power of an element of y lies in the
/// ideal of an element of y2. The result is verified (partition, closure,
/// meet rule, kernel inside the minimal component) before returning.
/// Throws NotInDs, or InternalError if verification fails.
SemilatticeDecomposition archimedean_decomposition(const TransitionMonoid& m);

/// Kernel of a subsemigroup given by its members.
std::vector<std::size_t> subsemigroup_kernel(const TransitionMonoid& m,
                                             const std::vector<std::size_t>& members);

/// Least i such that every product of i members lies in the component's
/// kernel. Throws PreconditionError if the members are not nilpotent over
/// their kernel.
std::size_t nilpotency_index(const TransitionMonoid& m, const std::vector<std::size_t>& members);
std::size_t nilpotency_index(const TransitionMonoid& m, const SemilatticeDecomposition& d,
                             std::size_t component);

}  // namespace syncgame
