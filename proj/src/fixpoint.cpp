#include "mucont/fixpoint.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "mucont/error.hpp"

namespace mucont {

RelationSet::RelationSet(std::size_t domain_size, std::size_t codomain_size)
    : nx_(domain_size), ny_(codomain_size), bits_(domain_size * codomain_size, 0) {}

RelationSet RelationSet::full_product(const Multifunction& f) {
  RelationSet r(f.domain()->size(), f.codomain()->size());
  for (auto x : f.dom()) {
    std::fill_n(r.bits_.begin() + static_cast<std::ptrdiff_t>(x * r.ny_), r.ny_, 1);
  }
  return r;
}

RelationSet RelationSet::graph(const Multifunction& f) {
  RelationSet r(f.domain()->size(), f.codomain()->size());
  for (const auto& [x, y] : f.pairs()) r.insert(x, y);
  return r;
}

std::size_t RelationSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::pair<PointIndex, PointIndex>> RelationSet::pairs() const {
  std::vector<std::pair<PointIndex, PointIndex>> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.emplace_back(static_cast<PointIndex>(i / ny_), static_cast<PointIndex>(i % ny_));
  }
  return out;
}

std::vector<PointIndex> RelationSet::section(PointIndex x) const {
  std::vector<PointIndex> out;
  for (PointIndex y = 0; y < ny_; ++y) {
    if (contains(x, y)) out.push_back(y);
  }
  return out;
}

bool RelationSet::subset_of(const RelationSet& other) const {
  if (nx_ != other.nx_ || ny_ != other.ny_) throw PreconditionError("relation carriers differ");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

RelationSet RelationSet::intersect(const RelationSet& other) const {
  if (nx_ != other.nx_ || ny_ != other.ny_) throw PreconditionError("relation carriers differ");
  RelationSet out(nx_, ny_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] & other.bits_[i];
  return out;
}

ClosenessIndex::ClosenessIndex(const Multifunction& f, const Modulus& mu)
    : domain_(f.domain().get()),
      codomain_(f.codomain().get()),
      mu_(&mu),
      by_rank_(static_cast<std::size_t>(f.domain()->max_rank()) + 1, -1) {}

std::uint32_t ClosenessIndex::bound(PointIndex x, PointIndex x2) const {
  return bound_of_rank(domain_->rank(x, x2));
}

std::uint32_t ClosenessIndex::bound_of_rank(std::uint32_t r) const {
  auto& slot = by_rank_[r];
  if (slot < 0) slot = codomain_->rank_floor(mu_->eval(domain_->distance_of_rank(r)));
  return static_cast<std::uint32_t>(slot);
}

namespace {

std::vector<std::vector<PointIndex>> arguments_by_value(const Multifunction& f) {
  std::vector<std::vector<PointIndex>> out(f.codomain()->size());
  for (const auto& [x, y] : f.pairs()) out[y].push_back(x);
  return out;
}

// Rank evaluation with the Cantor case inlined: for right-aligned words of a
// common length the rank P - lcp is the bit width of their xor.
class RankView {
 public:
  explicit RankView(const FiniteMetricSpace& space) : space_(&space) {
    if (const auto* d = space.cantor_domain()) {
      codes_.reserve(d->size());
      for (const auto& w : d->members()) codes_.push_back(w.to_integer());
    }
  }
  bool cantor() const { return !codes_.empty(); }
  std::uint64_t code(PointIndex i) const { return codes_[i]; }
  std::uint32_t operator()(PointIndex a, PointIndex b) const {
    if (cantor()) return static_cast<std::uint32_t>(std::bit_width(codes_[a] ^ codes_[b]));
    return space_->rank(a, b);
  }

 private:
  const FiniteMetricSpace* space_;
  std::vector<std::uint64_t> codes_;
};

struct StepContext {
  StepContext(const Multifunction& f, const ClosenessIndex& index)
      : f(f),
        index(index),
        domain_ranks(*f.domain()),
        codomain_ranks(*f.codomain()),
        dom(f.dom()),
        by_value(arguments_by_value(f)) {
    if (f.domain()->max_rank() <= kDenseBounds) {
      for (std::uint32_t r = 0; r <= f.domain()->max_rank(); ++r) bounds.push_back(index.bound_of_rank(r));
    }
  }

  std::uint32_t bound(PointIndex x, PointIndex x2) const {
    const auto r = domain_ranks(x, x2);
    return bounds.empty() ? index.bound_of_rank(r) : bounds[r];
  }

  static constexpr std::uint32_t kDenseBounds = 1U << 16;
  const Multifunction& f;
  const ClosenessIndex& index;
  RankView domain_ranks;
  RankView codomain_ranks;
  std::vector<PointIndex> dom;
  std::vector<std::vector<PointIndex>> by_value;
  std::vector<std::uint32_t> bounds;
};

// Pairs are grouped by value: for a fixed y the distance from y to the
// nearest surviving value over each x2 does not depend on x, so it is
// computed once and compared against every candidate x. Only pairs of the
// graph are candidates, since the instance x2 = x forces y in F(x).
RelationSet step(const StepContext& ctx, const RelationSet& r) {
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  const auto& f = ctx.f;
  const auto& dom = ctx.dom;
  RelationSet out(f.domain()->size(), f.codomain()->size());

  // Surviving values per argument, flattened.
  std::vector<std::size_t> start(dom.size() + 1, 0);
  std::vector<PointIndex> kept;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    for (auto y2 : f.values(dom[i])) {
      if (r.contains(dom[i], y2)) kept.push_back(y2);
    }
    start[i + 1] = kept.size();
    if (start[i + 1] == start[i]) return out;
  }
  std::vector<std::uint64_t> kept_codes;
  if (ctx.codomain_ranks.cantor()) {
    for (auto y2 : kept) kept_codes.push_back(ctx.codomain_ranks.code(y2));
  }

  std::vector<std::uint32_t> nearest(dom.size());
  std::vector<PointIndex> candidates;
  for (PointIndex y = 0; y < ctx.by_value.size(); ++y) {
    candidates.clear();
    for (auto x : ctx.by_value[y]) {
      if (r.contains(x, y)) candidates.push_back(x);
    }
    if (candidates.empty()) continue;
    if (ctx.codomain_ranks.cantor()) {
      const auto code = ctx.codomain_ranks.code(y);
      for (std::size_t i = 0; i < dom.size(); ++i) {
        auto best = std::numeric_limits<std::uint64_t>::max();
        for (auto k = start[i]; k < start[i + 1]; ++k) best = std::min(best, code ^ kept_codes[k]);
        nearest[i] = static_cast<std::uint32_t>(std::bit_width(best));
      }
    } else {
      for (std::size_t i = 0; i < dom.size(); ++i) {
        auto best = kNone;
        for (auto k = start[i]; k < start[i + 1]; ++k) best = std::min(best, ctx.codomain_ranks(y, kept[k]));
        nearest[i] = best;
      }
    }
    for (auto x : candidates) {
      bool ok = true;
      for (std::size_t i = 0; ok && i < dom.size(); ++i) {
        ok = nearest[i] <= ctx.bound(x, dom[i]);
      }
      if (ok) out.insert(x, y);
    }
  }
  return out;
}

void require_carriers(const Multifunction& f, const RelationSet& r) {
  if (r.domain_size() != f.domain()->size() || r.codomain_size() != f.codomain()->size()) {
    throw PreconditionError("relation set does not live on the multifunction's carriers");
  }
}

}  // namespace

RelationSet delta_step(const Multifunction& f, const Modulus& mu, const RelationSet& r) {
  require_carriers(f, r);
  const ClosenessIndex index(f, mu);
  const StepContext ctx(f, index);
  return step(ctx, r);
}

FixpointResult iterate_to_fixpoint(const Multifunction& f, const Modulus& mu, RelationSet start) {
  require_carriers(f, start);
  const ClosenessIndex index(f, mu);
  const StepContext ctx(f, index);
  FixpointResult result{std::move(start), 0};
  for (;;) {
    auto next = step(ctx, result.relation);
    if (next == result.relation) return result;
    result.relation = std::move(next);
    ++result.iterations;
  }
}

FixpointResult greatest_fixpoint(const Multifunction& f, const Modulus& mu) {
  return iterate_to_fixpoint(f, mu, RelationSet::full_product(f));
}

ContinuityDecision decide_continuity(const Multifunction& f, const Modulus& mu) {
  ContinuityDecision decision;
  decision.fixpoint = greatest_fixpoint(f, mu);
  for (auto x : f.dom()) {
    const auto values = f.values(x);
    const bool kept = std::any_of(values.begin(), values.end(),
                                  [&](auto y) { return decision.fixpoint.relation.contains(x, y); });
    if (!kept) {
      decision.witness = x;
      decision.continuous = false;
      return decision;
    }
  }
  decision.continuous = true;
  return decision;
}

}  // namespace mucont
