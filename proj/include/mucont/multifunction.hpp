#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mucont/dyadic.hpp"
#include "mucont/metric_space.hpp"

namespace mucont {

using PointIndex = std::uint32_t;

/// A relation between two finite metric spaces, stored as one sorted value
/// set per domain point. Points with an empty value set lie outside dom(F).
class Multifunction {
 public:
  Multifunction(SpacePtr domain, SpacePtr codomain, std::vector<std::vector<PointIndex>> values);

  static Multifunction from_pairs(SpacePtr domain, SpacePtr codomain,
                                  std::span<const std::pair<PointIndex, PointIndex>> pairs);
  static Multifunction identity(const SpacePtr& space);

  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }

  std::span<const PointIndex> values(PointIndex x) const { return values_[x]; }
  bool contains(PointIndex x, PointIndex y) const;

  /// Points with a nonempty value set, ascending.
  std::vector<PointIndex> dom() const;
  std::vector<PointIndex> range() const;
  bool is_total() const;
  bool is_single_valued() const;
  std::size_t pair_count() const;
  std::vector<std::pair<PointIndex, PointIndex>> pairs() const;

  /// Graph equality over the same carriers.
  friend bool operator==(const Multifunction& a, const Multifunction& b);

 private:
  SpacePtr domain_;
  SpacePtr codomain_;
  std::vector<std::vector<PointIndex>> values_;
};

/// max(sup_{k in K} inf_{l in L} d(k, l), sup_{l in L} inf_{k in K} d(k, l)).
Dyadic hausdorff_distance(std::span<const PointIndex> k_set, std::span<const PointIndex> l_set,
                          const FiniteMetricSpace& space);

/// Transposed graph on swapped carriers; dom of the result is range(F).
Multifunction mf_inverse(const Multifunction& f);

/// Weihrauch composition: (x, z) is kept iff F(x) is inside dom(G) and some
/// y in F(x) has z in G(y).
Multifunction mf_compose(const Multifunction& g, const Multifunction& f);

/// f2 is a restriction of f: dom(f2) in dom(f) and f2(x) contains f(x) for
/// every x in dom(f2).
bool is_restriction(const Multifunction& f2, const Multifunction& f);

}  // namespace mucont
