#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mucont/modulus.hpp"
#include "mucont/multifunction.hpp"

namespace mucont {

/// A subset of (domain carrier) x (codomain carrier), as a dense bit table.
class RelationSet {
 public:
  RelationSet() = default;
  RelationSet(std::size_t domain_size, std::size_t codomain_size);

  /// dom(F) x Y.
  static RelationSet full_product(const Multifunction& f);
  static RelationSet graph(const Multifunction& f);

  std::size_t domain_size() const { return nx_; }
  std::size_t codomain_size() const { return ny_; }

  bool contains(PointIndex x, PointIndex y) const { return bits_[x * ny_ + y] != 0; }
  void insert(PointIndex x, PointIndex y) { bits_[x * ny_ + y] = 1; }
  void erase(PointIndex x, PointIndex y) { bits_[x * ny_ + y] = 0; }

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::pair<PointIndex, PointIndex>> pairs() const;
  /// Values y with (x, y) in the set.
  std::vector<PointIndex> section(PointIndex x) const;

  bool subset_of(const RelationSet& other) const;
  RelationSet intersect(const RelationSet& other) const;

  friend bool operator==(const RelationSet&, const RelationSet&) = default;

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Integer-rank form of the predicate e(y, y2) <= mu(d(x, x2)) for one
/// multifunction and modulus. Thresholds are computed once per distinct
/// domain distance.
class ClosenessIndex {
 public:
  ClosenessIndex(const Multifunction& f, const Modulus& mu);

  /// Largest codomain rank within mu(d(x, x2)).
  std::uint32_t bound(PointIndex x, PointIndex x2) const;
  /// Largest codomain rank within mu of the domain distance of rank r.
  std::uint32_t bound_of_rank(std::uint32_t r) const;
  bool close(PointIndex x, PointIndex y, PointIndex x2, PointIndex y2) const {
    return codomain_->rank(y, y2) <= bound(x, x2);
  }

 private:
  const FiniteMetricSpace* domain_;
  const FiniteMetricSpace* codomain_;
  const Modulus* mu_;
  mutable std::vector<std::int64_t> by_rank_;
};

/// One application of the pruning operator: the pairs (x, y), x in dom(F),
/// such that every x2 in dom(F) has some y2 in F(x2) with
/// e(y, y2) <= mu(d(x, x2)) and (x2, y2) in R.
RelationSet delta_step(const Multifunction& f, const Modulus& mu, const RelationSet& r);

struct FixpointResult {
  RelationSet relation;
  /// Number of strictly shrinking steps before the iteration stabilized.
  std::size_t iterations = 0;
};

/// Iterates delta_step from dom(F) x Y until it stabilizes.
FixpointResult greatest_fixpoint(const Multifunction& f, const Modulus& mu);

/// Iterates delta_step from an arbitrary start set until it stabilizes.
FixpointResult iterate_to_fixpoint(const Multifunction& f, const Modulus& mu, RelationSet start);

struct ContinuityDecision {
  bool continuous = false;
  /// An x in dom(F) whose values all fall outside the greatest fixpoint.
  std::optional<PointIndex> witness;
  FixpointResult fixpoint;
};

/// F is mu-continuous iff every x in dom(F) keeps a value in the greatest
/// fixpoint.
ContinuityDecision decide_continuity(const Multifunction& f, const Modulus& mu);

}  // namespace mucont
