#include "mucont/multifunction.hpp"

#include <algorithm>

#include "mucont/error.hpp"

namespace mucont {

namespace {

void require_carriers(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (!same_space(a, b)) throw PreconditionError(std::string("carrier mismatch: ") + what);
}

}  // namespace

Multifunction::Multifunction(SpacePtr domain, SpacePtr codomain,
                             std::vector<std::vector<PointIndex>> values)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), values_(std::move(values)) {
  if (!domain_ || !codomain_) throw PreconditionError("multifunction carriers must be set");
  if (values_.size() != domain_->size()) {
    throw PreconditionError("value table size does not match the domain carrier");
  }
  for (auto& set : values_) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (!set.empty() && set.back() >= codomain_->size()) {
      throw PreconditionError("value index " + std::to_string(set.back()) +
                              " outside the codomain carrier");
    }
  }
}

Multifunction Multifunction::from_pairs(SpacePtr domain, SpacePtr codomain,
                                        std::span<const std::pair<PointIndex, PointIndex>> pairs) {
  std::vector<std::vector<PointIndex>> values(domain->size());
  for (const auto& [x, y] : pairs) {
    if (x >= domain->size()) {
      throw PreconditionError("argument index " + std::to_string(x) + " outside the domain carrier");
    }
    values[x].push_back(y);
  }
  return Multifunction(std::move(domain), std::move(codomain), std::move(values));
}

Multifunction Multifunction::identity(const SpacePtr& space) {
  std::vector<std::vector<PointIndex>> values(space->size());
  for (PointIndex i = 0; i < space->size(); ++i) values[i] = {i};
  return Multifunction(space, space, std::move(values));
}

bool Multifunction::contains(PointIndex x, PointIndex y) const {
  const auto& set = values_[x];
  return std::binary_search(set.begin(), set.end(), y);
}

std::vector<PointIndex> Multifunction::dom() const {
  std::vector<PointIndex> out;
  for (PointIndex x = 0; x < values_.size(); ++x) {
    if (!values_[x].empty()) out.push_back(x);
  }
  return out;
}

std::vector<PointIndex> Multifunction::range() const {
  std::vector<bool> hit(codomain_->size(), false);
  for (const auto& set : values_) {
    for (auto y : set) hit[y] = true;
  }
  std::vector<PointIndex> out;
  for (PointIndex y = 0; y < hit.size(); ++y) {
    if (hit[y]) out.push_back(y);
  }
  return out;
}

bool Multifunction::is_total() const {
  return std::none_of(values_.begin(), values_.end(), [](const auto& s) { return s.empty(); });
}

bool Multifunction::is_single_valued() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& s) { return s.size() <= 1; });
}

std::size_t Multifunction::pair_count() const {
  std::size_t n = 0;
  for (const auto& set : values_) n += set.size();
  return n;
}

std::vector<std::pair<PointIndex, PointIndex>> Multifunction::pairs() const {
  std::vector<std::pair<PointIndex, PointIndex>> out;
  out.reserve(pair_count());
  for (PointIndex x = 0; x < values_.size(); ++x) {
    for (auto y : values_[x]) out.emplace_back(x, y);
  }
  return out;
}

bool operator==(const Multifunction& a, const Multifunction& b) {
  return same_space(a.domain_, b.domain_) && same_space(a.codomain_, b.codomain_) &&
         a.values_ == b.values_;
}

Dyadic hausdorff_distance(std::span<const PointIndex> k_set, std::span<const PointIndex> l_set,
                          const FiniteMetricSpace& space) {
  if (k_set.empty() || l_set.empty()) {
    throw PreconditionError("Hausdorff distance needs two nonempty sets");
  }
  // Ranks order distances, so the sup-inf is evaluated on ranks and
  // converted once.
  auto directed = [&](std::span<const PointIndex> from, std::span<const PointIndex> to) {
    std::uint32_t worst = 0;
    for (auto a : from) {
      std::uint32_t best = space.max_rank();
      for (auto b : to) best = std::min(best, space.rank(a, b));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return space.distance_of_rank(std::max(directed(k_set, l_set), directed(l_set, k_set)));
}

Multifunction mf_inverse(const Multifunction& f) {
  std::vector<std::vector<PointIndex>> values(f.codomain()->size());
  for (const auto& [x, y] : f.pairs()) values[y].push_back(x);
  return Multifunction(f.codomain(), f.domain(), std::move(values));
}

Multifunction mf_compose(const Multifunction& g, const Multifunction& f) {
  require_carriers(f.codomain(), g.domain(), "codomain of F is not the domain of G");
  std::vector<std::vector<PointIndex>> values(f.domain()->size());
  for (PointIndex x = 0; x < f.domain()->size(); ++x) {
    const auto fx = f.values(x);
    if (fx.empty()) continue;
    const bool inside = std::all_of(fx.begin(), fx.end(), [&](auto y) { return !g.values(y).empty(); });
    if (!inside) continue;
    auto& out = values[x];
    for (auto y : fx) {
      const auto gy = g.values(y);
      out.insert(out.end(), gy.begin(), gy.end());
    }
  }
  return Multifunction(f.domain(), g.codomain(), std::move(values));
}

bool is_restriction(const Multifunction& f2, const Multifunction& f) {
  require_carriers(f2.domain(), f.domain(), "domains differ");
  require_carriers(f2.codomain(), f.codomain(), "codomains differ");
  for (PointIndex x = 0; x < f2.domain()->size(); ++x) {
    const auto small = f2.values(x);
    if (small.empty()) continue;
    const auto big = f.values(x);
    if (big.empty()) return false;
    if (!std::includes(small.begin(), small.end(), big.begin(), big.end())) return false;
  }
  return true;
}

}  // namespace mucont
