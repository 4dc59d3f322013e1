#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mucont/modulus.hpp"
#include "mucont/multifunction.hpp"

namespace mucont {

/// A winning adversary strategy in the chain game, rooted at one argument.
///
/// `answers` lists every value the player may legally answer with at this
/// argument; `next[i]` is the adversary's winning reply to `answers[i]`. A
/// node without answers is a position where the player is stuck.
struct AdversaryMove {
  PointIndex x = 0;
  std::vector<PointIndex> answers;
  std::vector<AdversaryMove> next;

  /// x_0, y_0, x_1, y_1, ..., x_k following the first answer at every node.
  std::vector<PointIndex> principal_chain() const;
};

struct OracleLimits {
  /// Upper bound on the estimated game-tree size; larger instances are
  /// rejected with GuardError rather than truncated.
  std::uint64_t max_nodes = 100'000'000;
};

struct OracleResult {
  bool continuous = false;
  std::optional<AdversaryMove> refutation;
  std::uint64_t nodes_visited = 0;
};

/// Decides the depth-n chain game by exhaustive search:
///   for all x_0 exists y_0 in F(x_0) for all x_1 exists y_1 in F(x_1) ... x_n, y_n
/// with e(y_{k-1}, y_k) <= mu(d(x_{k-1}, x_k)) at every round. Arguments range
/// over dom(F). Each y_k is chosen knowing only x_0..x_k and y_0..y_{k-1}.
OracleResult chain_continuity_oracle(const Multifunction& f, const Modulus& mu, std::uint32_t rounds,
                                     const OracleLimits& limits = {});

/// Replays a refutation against F and mu and confirms that every leaf is a
/// stuck position and every listed answer set is complete.
bool confirm_refutation(const Multifunction& f, const Modulus& mu, std::uint32_t rounds,
                        const AdversaryMove& refutation);

}  // namespace mucont
