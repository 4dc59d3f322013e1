#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mucont/dyadic.hpp"

namespace mucont {

/// A modulus of continuity sampled at the dyadic scales 2^{-k}, k = 0..depth.
///
/// values()[k] is the modulus at 2^{-k}; the table is non-increasing in k,
/// lies in [0, 1], and the modulus is 0 at argument 0. Arguments between two
/// scales round up to the coarser scale, so evaluation never underestimates a
/// non-decreasing function that the table dominates on powers of two.
class Modulus {
 public:
  /// Throws PreconditionError unless the table is monotone, in [0, 1] and has
  /// at least two entries.
  explicit Modulus(std::vector<Dyadic> values);

  static Modulus identity(std::uint32_t depth);
  static Modulus constant(std::uint32_t depth, const Dyadic& value);
  static Modulus tabulate(std::uint32_t depth, const std::function<Dyadic(std::uint32_t)>& at_scale);

  std::uint32_t depth() const { return static_cast<std::uint32_t>(values_.size() - 1); }
  std::span<const Dyadic> values() const { return values_; }

  /// Table value at 2^{-k}; scales finer than the depth use the last entry.
  const Dyadic& at_scale(std::uint64_t k) const;

  /// Evaluates at t in [0, 1] with upper rounding of t to a power of two.
  Dyadic eval(const Dyadic& t) const;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::vector<Dyadic> values_;
};

/// Table of outer o inner at each scale of the shallower operand.
Modulus modulus_compose(const Modulus& outer, const Modulus& inner);

/// factor * m, capped at 1.
Modulus modulus_scale(const Modulus& m, const Dyadic& factor);

/// v_k = 1 / ln(e 2^k) = 1 / (1 + k ln 2), rounded up to a multiple of
/// 2^{-40}. Not C-geometric for any C.
Modulus log_modulus(std::uint32_t depth);

struct GeometricCertificate {
  enum class Verdict { geometric_up_to_depth, refuted };

  Dyadic constant;
  std::uint32_t depth = 0;
  Verdict verdict = Verdict::geometric_up_to_depth;
  /// Least scale index whose truncated tail sum exceeds constant * value.
  std::optional<std::uint32_t> witness_scale;
  /// Truncated tail sum at the witness scale (refuted) or at the scale with
  /// the largest ratio sum / value (certified).
  Dyadic tail_sum;

  bool certified() const { return verdict == Verdict::geometric_up_to_depth; }
};

/// Checks sum_{i>=0} v_{k+i} <= C * v_k for every k, with the sum truncated
/// at the table depth. A refutation is final; a certificate holds only up to
/// the depth.
GeometricCertificate check_geometric(const Modulus& m, const Dyadic& constant);

}  // namespace mucont
