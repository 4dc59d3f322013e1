#include "mucont/metric_space.hpp"

#include <algorithm>
#include <cstdlib>

#include "mucont/error.hpp"

namespace mucont {

namespace {

constexpr std::uint32_t kMaxLineExponent = 24;

std::string point_name(std::size_t i) { return "point " + std::to_string(i); }

}  // namespace

FiniteMetricSpace FiniteMetricSpace::from_table(std::vector<std::vector<Dyadic>> dist,
                                                bool ultrametric,
                                                std::vector<std::string> labels) {
  const std::size_t m = dist.size();
  if (m == 0) throw PreconditionError("a metric space needs at least one point");
  if (!labels.empty() && labels.size() != m) {
    throw PreconditionError("label count does not match the distance table");
  }
  const Dyadic one(1);
  for (std::size_t i = 0; i < m; ++i) {
    if (dist[i].size() != m) throw PreconditionError("distance table is not square");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!dist[i][i].is_zero()) throw PreconditionError("nonzero diagonal at " + point_name(i));
    for (std::size_t j = 0; j < m; ++j) {
      if (dist[i][j] != dist[j][i]) {
        throw PreconditionError("distance table not symmetric at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
      if (i != j && dist[i][j].sign() <= 0) {
        throw PreconditionError("distinct points at distance <= 0: (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
      if (dist[i][j] > one) {
        throw PreconditionError("distance exceeds 1 at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k]) {
          throw PreconditionError("triangle inequality fails on (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ", " + std::to_string(k) + ")");
        }
        if (ultrametric && dist[i][k] > max(dist[i][j], dist[j][k])) {
          throw PreconditionError("strong triangle inequality fails on (" + std::to_string(i) +
                                  ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
        }
      }
    }
  }

  FiniteMetricSpace s;
  s.kind_ = Kind::table;
  s.size_ = m;
  s.ultrametric_ = ultrametric;
  s.labels_ = std::move(labels);
  if (s.labels_.empty()) {
    for (std::size_t i = 0; i < m; ++i) s.labels_.push_back(std::to_string(i));
  }
  for (const auto& row : dist) s.distinct_.insert(s.distinct_.end(), row.begin(), row.end());
  std::sort(s.distinct_.begin(), s.distinct_.end());
  s.distinct_.erase(std::unique(s.distinct_.begin(), s.distinct_.end()), s.distinct_.end());
  s.ranks_.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto it = std::lower_bound(s.distinct_.begin(), s.distinct_.end(), dist[i][j]);
      s.ranks_[i * m + j] = static_cast<std::uint32_t>(it - s.distinct_.begin());
    }
  }
  return s;
}

FiniteMetricSpace FiniteMetricSpace::cantor(CantorDomain domain) {
  FiniteMetricSpace s;
  s.kind_ = Kind::cantor;
  s.size_ = domain.size();
  s.ultrametric_ = true;
  s.cantor_ = std::move(domain);
  return s;
}

FiniteMetricSpace FiniteMetricSpace::line(std::vector<Dyadic> points) {
  if (points.empty()) throw PreconditionError("a metric space needs at least one point");
  std::uint64_t exponent = 0;
  for (const auto& p : points) exponent = std::max(exponent, p.exponent());
  if (exponent > kMaxLineExponent) {
    throw GuardError("line points need denominators up to 2^" + std::to_string(kMaxLineExponent));
  }
  FiniteMetricSpace s;
  s.kind_ = Kind::line;
  s.size_ = points.size();
  s.line_exponent_ = static_cast<std::uint32_t>(exponent);
  s.scaled_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto scaled = points[i].floor_scaled(exponent);
    if (boost::multiprecision::abs(scaled) > (Dyadic::Integer(1) << 40)) {
      throw GuardError("line point " + points[i].to_string() + " is too large");
    }
    const auto v = scaled.convert_to<std::int64_t>();
    if (!s.point_index_.emplace(v, i).second) {
      throw PreconditionError("duplicate line point " + points[i].to_string());
    }
    s.scaled_.push_back(v);
  }
  s.points_ = std::move(points);
  return s;
}

Dyadic FiniteMetricSpace::dist(std::size_t i, std::size_t j) const {
  switch (kind_) {
    case Kind::table:
      return distinct_[ranks_[i * size_ + j]];
    case Kind::cantor:
      return word_distance((*cantor_)[i], (*cantor_)[j]);
    case Kind::line:
      return distance_of_rank(rank(i, j));
  }
  return Dyadic();
}

std::string FiniteMetricSpace::label(std::size_t i) const {
  switch (kind_) {
    case Kind::table:
      return labels_[i];
    case Kind::cantor:
      return (*cantor_)[i].to_string();
    case Kind::line:
      return points_[i].to_string();
  }
  return {};
}

std::optional<std::size_t> FiniteMetricSpace::find(std::string_view text) const {
  switch (kind_) {
    case Kind::table: {
      for (std::size_t i = 0; i < size_; ++i) {
        if (label(i) == text) return i;
      }
      return std::nullopt;
    }
    case Kind::cantor: {
      const auto idx = cantor_->index_of(Word::parse(text));
      if (idx == size_) return std::nullopt;
      return idx;
    }
    case Kind::line:
      return find_point(Dyadic::parse(text));
  }
  return std::nullopt;
}

std::optional<std::size_t> FiniteMetricSpace::find_point(const Dyadic& value) const {
  if (kind_ != Kind::line || value.exponent() > line_exponent_) return std::nullopt;
  const auto scaled = value.floor_scaled(line_exponent_);
  if (boost::multiprecision::abs(scaled) > (Dyadic::Integer(1) << 40)) return std::nullopt;
  const auto it = point_index_.find(scaled.convert_to<std::int64_t>());
  if (it == point_index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t FiniteMetricSpace::rank(std::size_t i, std::size_t j) const {
  switch (kind_) {
    case Kind::table:
      return ranks_[i * size_ + j];
    case Kind::cantor: {
      const auto p = cantor_->precision();
      return p - (*cantor_)[i].common_prefix_length((*cantor_)[j]);
    }
    case Kind::line: {
      const auto diff = static_cast<std::uint64_t>(std::llabs(scaled_[i] - scaled_[j]));
      return static_cast<std::uint32_t>(std::min<std::uint64_t>(diff, 1ULL << line_exponent_));
    }
  }
  return 0;
}

std::uint32_t FiniteMetricSpace::max_rank() const {
  switch (kind_) {
    case Kind::table:
      return static_cast<std::uint32_t>(distinct_.size() - 1);
    case Kind::cantor:
      return cantor_->precision();
    case Kind::line:
      return 1U << line_exponent_;
  }
  return 0;
}

std::uint32_t FiniteMetricSpace::rank_floor(const Dyadic& r) const {
  if (r.sign() < 0) throw PreconditionError("negative distance bound");
  switch (kind_) {
    case Kind::table: {
      const auto it = std::upper_bound(distinct_.begin(), distinct_.end(), r);
      return static_cast<std::uint32_t>(it - distinct_.begin()) - 1;
    }
    case Kind::cantor: {
      const auto p = cantor_->precision();
      if (r.is_zero()) return 0;
      if (r >= Dyadic(1)) return p;
      const auto k = scale_index(r);
      // Smallest i with 2^{-i} <= r.
      const auto i_min = r.numerator() == 1 ? k : k + 1;
      return i_min >= p ? 0 : static_cast<std::uint32_t>(p - i_min);
    }
    case Kind::line: {
      const auto cap = Dyadic::Integer(1) << line_exponent_;
      const auto scaled = r.floor_scaled(line_exponent_);
      return scaled >= cap ? (1U << line_exponent_) : scaled.convert_to<std::uint32_t>();
    }
  }
  return 0;
}

Dyadic FiniteMetricSpace::distance_of_rank(std::uint32_t rank) const {
  switch (kind_) {
    case Kind::table:
      return distinct_.at(rank);
    case Kind::cantor: {
      if (rank == 0) return Dyadic();
      const auto p = cantor_->precision();
      return Dyadic::pow2(-static_cast<std::int64_t>(p - rank));
    }
    case Kind::line:
      return Dyadic(Dyadic::Integer(rank), line_exponent_);
  }
  return Dyadic();
}

bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
  if (a.kind_ != b.kind_ || a.size_ != b.size_ || a.ultrametric_ != b.ultrametric_) return false;
  switch (a.kind_) {
    case FiniteMetricSpace::Kind::table:
      return a.distinct_ == b.distinct_ && a.ranks_ == b.ranks_ && a.labels_ == b.labels_;
    case FiniteMetricSpace::Kind::cantor:
      return a.cantor_ == b.cantor_;
    case FiniteMetricSpace::Kind::line:
      return a.points_ == b.points_;
  }
  return false;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace mucont
