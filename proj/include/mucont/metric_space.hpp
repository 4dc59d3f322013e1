#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mucont/cantor.hpp"
#include "mucont/dyadic.hpp"

namespace mucont {

/// A finite metric space with all distances in [0, 1].
///
/// Three storage kinds share one interface: an explicit distance table, a set
/// of Cantor words under d_C, and a set of dyadic points on the line under the
/// truncated metric min(1, |a - b|). The latter two never materialize the
/// distance matrix, so they scale to tens of thousands of points.
///
/// Every distance has an integer rank; ranks are strictly monotone in the
/// distance, which lets hot loops compare distances as integers.
class FiniteMetricSpace {
 public:
  enum class Kind { table, cantor, line };

  /// Validates symmetry, zero diagonal, positivity off the diagonal, the bound
  /// 1, the triangle inequality and, if flagged, the strong triangle
  /// inequality.
  static FiniteMetricSpace from_table(std::vector<std::vector<Dyadic>> dist, bool ultrametric,
                                      std::vector<std::string> labels = {});
  static FiniteMetricSpace cantor(CantorDomain domain);
  /// Distinct dyadic points with metric min(1, |a - b|). Point denominators
  /// are limited to 2^24.
  static FiniteMetricSpace line(std::vector<Dyadic> points);

  Kind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  bool ultrametric() const { return ultrametric_; }

  Dyadic dist(std::size_t i, std::size_t j) const;
  std::string label(std::size_t i) const;
  /// Index of the point with the given label (word, dyadic value, or table
  /// label).
  std::optional<std::size_t> find(std::string_view label) const;

  /// Non-null only for Kind::cantor.
  const CantorDomain* cantor_domain() const { return cantor_ ? &*cantor_ : nullptr; }
  /// Nonempty only for Kind::line.
  std::span<const Dyadic> points() const { return points_; }
  std::optional<std::size_t> find_point(const Dyadic& value) const;

  std::uint32_t rank(std::size_t i, std::size_t j) const;
  std::uint32_t max_rank() const;
  /// Largest rank whose distance is <= r, for r >= 0.
  std::uint32_t rank_floor(const Dyadic& r) const;
  Dyadic distance_of_rank(std::uint32_t rank) const;

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

 private:
  FiniteMetricSpace() = default;

  Kind kind_ = Kind::table;
  std::size_t size_ = 0;
  bool ultrametric_ = false;

  // table
  std::vector<Dyadic> distinct_;  // sorted distinct distances, distinct_[0] == 0
  std::vector<std::uint32_t> ranks_;
  std::vector<std::string> labels_;
  // cantor
  std::optional<CantorDomain> cantor_;
  // line
  std::vector<Dyadic> points_;
  std::vector<std::int64_t> scaled_;
  std::uint32_t line_exponent_ = 0;
  std::unordered_map<std::int64_t, std::size_t> point_index_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr make_space(FiniteMetricSpace space) {
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

/// Pointer identity or structural equality.
bool same_space(const SpacePtr& a, const SpacePtr& b);

}  // namespace mucont
