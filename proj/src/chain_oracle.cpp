#include "mucont/chain_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "mucont/error.hpp"

namespace mucont {

namespace {

// Exhaustive game search over the graph of F. Positions are graph pairs; the
// admissibility predicate is tabulated once with exact dyadic comparisons.
class ChainGame {
 public:
  ChainGame(const Multifunction& f, const Modulus& mu, std::uint32_t rounds)
      : f_(f), rounds_(rounds), dom_(f.dom()) {
    pair_base_.assign(f.domain()->size() + 1, 0);
    for (PointIndex x = 0; x < f.domain()->size(); ++x) {
      pair_base_[x + 1] = pair_base_[x] + f.values(x).size();
    }
    const std::size_t n = pair_base_.back();
    admissible_.assign(n * n, 0);
    const auto& dom_space = *f.domain();
    const auto& cod_space = *f.codomain();
    for (auto x : dom_) {
      for (auto x2 : dom_) {
        const Dyadic bound = mu.eval(dom_space.dist(x, x2));
        const auto fx = f.values(x);
        const auto fx2 = f.values(x2);
        for (std::size_t i = 0; i < fx.size(); ++i) {
          for (std::size_t j = 0; j < fx2.size(); ++j) {
            admissible_[(pair_base_[x] + i) * n + pair_base_[x2] + j] =
                cod_space.dist(fx[i], fx2[j]) <= bound ? 1 : 0;
          }
        }
      }
    }
  }

  std::uint64_t nodes() const { return nodes_; }

  bool player_wins() {
    for (auto x0 : dom_) {
      bool some = false;
      for (std::size_t i = 0; i < f_.values(x0).size() && !some; ++i) {
        some = holds(0, pair_base_[x0] + i);
      }
      if (!some) return false;
    }
    return true;
  }

  AdversaryMove refutation() {
    for (auto x0 : dom_) {
      AdversaryMove move{x0, {}, {}};
      bool refuted = true;
      const auto fx = f_.values(x0);
      for (std::size_t i = 0; i < fx.size() && refuted; ++i) {
        auto reply = refute(0, pair_base_[x0] + i);
        if (!reply) {
          refuted = false;
        } else {
          move.answers.push_back(fx[i]);
          move.next.push_back(std::move(*reply));
        }
      }
      if (refuted) return move;
    }
    throw InternalError("chain game reported a refutation but none was reconstructed");
  }

 private:
  // Player holds graph pair `held` after round `round`.
  bool holds(std::uint32_t round, std::size_t held) {
    ++nodes_;
    if (round == rounds_) return true;
    const std::size_t n = pair_base_.back();
    for (auto x2 : dom_) {
      bool answered = false;
      const auto count = f_.values(x2).size();
      for (std::size_t j = 0; j < count && !answered; ++j) {
        const auto cand = pair_base_[x2] + j;
        answered = admissible_[held * n + cand] && holds(round + 1, cand);
      }
      if (!answered) return false;
    }
    return true;
  }

  std::optional<AdversaryMove> refute(std::uint32_t round, std::size_t held) {
    if (round == rounds_) return std::nullopt;
    const std::size_t n = pair_base_.back();
    for (auto x2 : dom_) {
      AdversaryMove move{x2, {}, {}};
      bool refuted = true;
      const auto fx2 = f_.values(x2);
      for (std::size_t j = 0; j < fx2.size() && refuted; ++j) {
        const auto cand = pair_base_[x2] + j;
        if (!admissible_[held * n + cand]) continue;
        auto reply = refute(round + 1, cand);
        if (!reply) {
          refuted = false;
        } else {
          move.answers.push_back(fx2[j]);
          move.next.push_back(std::move(*reply));
        }
      }
      if (refuted) return move;
    }
    return std::nullopt;
  }

  const Multifunction& f_;
  std::uint32_t rounds_;
  std::vector<PointIndex> dom_;
  std::vector<std::size_t> pair_base_;
  std::vector<std::uint8_t> admissible_;
  std::uint64_t nodes_ = 0;
};

bool confirm_node(const Multifunction& f, const Modulus& mu, std::uint32_t remaining,
                  const AdversaryMove& move, std::optional<std::pair<PointIndex, PointIndex>> prev) {
  if (move.x >= f.domain()->size() || f.values(move.x).empty()) return false;
  if (move.answers.size() != move.next.size()) return false;
  std::vector<PointIndex> legal;
  for (auto y : f.values(move.x)) {
    if (!prev || f.codomain()->dist(prev->second, y) <= mu.eval(f.domain()->dist(prev->first, move.x))) {
      legal.push_back(y);
    }
  }
  if (legal != move.answers) return false;
  if (legal.empty()) return true;
  if (remaining == 0) return false;
  for (std::size_t i = 0; i < legal.size(); ++i) {
    if (!confirm_node(f, mu, remaining - 1, move.next[i], std::pair{move.x, legal[i]})) return false;
  }
  return true;
}

}  // namespace

std::vector<PointIndex> AdversaryMove::principal_chain() const {
  std::vector<PointIndex> chain{x};
  const AdversaryMove* node = this;
  while (!node->answers.empty()) {
    chain.push_back(node->answers.front());
    node = &node->next.front();
    chain.push_back(node->x);
  }
  return chain;
}

OracleResult chain_continuity_oracle(const Multifunction& f, const Modulus& mu, std::uint32_t rounds,
                                     const OracleLimits& limits) {
  const auto dom = f.dom();
  std::size_t widest = 0;
  for (auto x : dom) widest = std::max(widest, f.values(x).size());
  const double branching = static_cast<double>(dom.size()) * static_cast<double>(widest);
  const double estimate = std::pow(std::max(branching, 1.0), static_cast<double>(rounds) + 1.0);
  const double pairs = static_cast<double>(f.pair_count());
  if (estimate > static_cast<double>(limits.max_nodes) || pairs * pairs > 1e8) {
    throw GuardError("chain oracle instance too large: estimated " + std::to_string(estimate) +
                     " game positions exceeds the limit " + std::to_string(limits.max_nodes));
  }

  ChainGame game(f, mu, rounds);
  OracleResult result;
  result.continuous = game.player_wins();
  result.nodes_visited = game.nodes();
  if (result.continuous) return result;
  // Report a refutation of the least depth; the player's position only gets
  // worse with more rounds, so the first losing depth is well defined.
  for (std::uint32_t r = 0; r < rounds; ++r) {
    ChainGame shorter(f, mu, r);
    const bool wins = shorter.player_wins();
    result.nodes_visited += shorter.nodes();
    if (!wins) {
      result.refutation = shorter.refutation();
      return result;
    }
  }
  result.refutation = game.refutation();
  return result;
}

bool confirm_refutation(const Multifunction& f, const Modulus& mu, std::uint32_t rounds,
                        const AdversaryMove& refutation) {
  // The root has no predecessor; it is stuck only when F(x_0) is empty.
  return confirm_node(f, mu, rounds, refutation, std::nullopt);
}

}  // namespace mucont
