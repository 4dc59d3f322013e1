#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mucont/cantor.hpp"
#include "mucont/fixpoint.hpp"
#include "mucont/modulus.hpp"
#include "mucont/multifunction.hpp"

namespace mucont {

/// Nested nets X_0 ⊆ X_1 ⊆ ... ⊆ X_P over a Cantor domain.
///
/// Node i is the i-th member of the domain. X_n holds the lexicographically
/// least member of every length-n prefix class; a node entering at level
/// n + 1 has as predecessor the level-n representative of its class.
struct CantorNet {
  std::vector<Word> members;
  std::vector<std::optional<std::uint32_t>> predecessor;
  /// Least n with the node in X_n.
  std::vector<std::uint32_t> entry_level;
  /// Number of predecessor steps to the root.
  std::vector<std::uint32_t> ancestry_depth;
  /// Node indices of X_0, ..., X_P in ascending order.
  std::vector<std::vector<std::uint32_t>> levels;

  std::uint32_t root() const { return 0; }
  std::uint32_t precision() const { return static_cast<std::uint32_t>(levels.size() - 1); }
  /// Least common ancestor, found by walking both predecessor chains.
  std::uint32_t meet(std::uint32_t a, std::uint32_t b) const;
};

CantorNet build_net(const CantorDomain& d);

/// One chosen value per net node.
struct SkolemTable {
  std::vector<PointIndex> choice;
};

/// Chooses values level by level: the root takes the least value kept in the
/// fixpoint, every other node the least value kept in the fixpoint that is
/// mu-close to its predecessor's choice. `node_points[i]` is the carrier
/// index of net node i. Throws InternalError if a choice does not exist.
SkolemTable extract_skolem(const Multifunction& f, const Modulus& mu, const RelationSet& fix,
                           const CantorNet& net, std::span<const PointIndex> node_points);

enum class BoundKind { mu, two_C_mu };

struct SelectionCheck {
  bool ok = false;
  /// Argument where the selection leaves F, if any.
  std::optional<PointIndex> outside;
  /// Pair minimizing bound(d(x, x2)) - e(f(x), f(x2)); a negative slack is a
  /// violation.
  std::optional<std::pair<PointIndex, PointIndex>> tightest;
  Dyadic slack;
};

struct SelectionTrace {
  CantorNet net;
  std::vector<PointIndex> node_points;
  SkolemTable skolem;
  /// Single-valued, with domain dom(F).
  Multifunction selection;
  Modulus certified_modulus;
  BoundKind bound_kind = BoundKind::mu;
  std::optional<Dyadic> constant;
  std::size_t fixpoint_iterations = 0;
  SelectionCheck check;
};

/// A single-valued selection of a mu-continuous F on a Cantor domain. With an
/// ultrametric codomain it is mu-continuous; otherwise `constant` must be a
/// C for which mu is certified C-geometric up to at least the domain
/// precision, and the selection is 2C mu-continuous.
SelectionTrace select(const Multifunction& f, const Modulus& mu,
                      const std::optional<Dyadic>& constant = std::nullopt);

/// Exhaustive check of f(x) in F(x) and e(f(x), f(x2)) <= bound(d(x, x2))
/// over all pairs of dom(F).
SelectionCheck verify_selection_modulus(const Multifunction& selection, const Modulus& bound,
                                        const Multifunction& f);
SelectionCheck verify_selection_modulus(const SelectionTrace& trace, const Multifunction& f);

}  // namespace mucont
