#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mucont/cantor.hpp"
#include "mucont/chain_oracle.hpp"
#include "mucont/dyadic.hpp"
#include "mucont/metric_space.hpp"
#include "mucont/modulus.hpp"
#include "mucont/multifunction.hpp"

namespace mucont {

/// sum_m b_m 2^{-m-1} over the bits of `w`.
Dyadic beta_decode(const Word& w);

/// A word over the pair alphabet {00, 01, 10}; pair m encodes the signed
/// digit 2 b_{2m} + b_{2m+1} - 1.
class SignedDigitWord {
 public:
  SignedDigitWord() = default;
  /// Throws PreconditionError on odd length or a pair 11.
  explicit SignedDigitWord(Word bits);
  static SignedDigitWord parse(std::string_view bits);
  /// Digits in {-1, 0, 1}.
  static SignedDigitWord from_digits(std::span<const int> digits);

  const Word& bits() const { return bits_; }
  std::uint32_t digit_count() const { return bits_.size() / 2; }
  int digit(std::uint32_t m) const { return 2 * bits_[2 * m] + bits_[2 * m + 1] - 1; }
  std::vector<int> digits() const;
  std::string to_string() const { return bits_.to_string(); }

  friend bool operator==(const SignedDigitWord&, const SignedDigitWord&) = default;

 private:
  Word bits_;
};

/// sum_m d_m 2^{-m-1}.
Dyadic sigma_decode(const SignedDigitWord& s);

/// Greedy expansion with `p` digits, most significant first, choosing the
/// digit nearest to the remainder and 0 on ties. The result is within 2^{-p}
/// of x. Throws PreconditionError if |x| > 1 or p > 32.
SignedDigitWord sigma_encode(const Dyadic& x, std::uint32_t p);

/// A code of x2 that keeps the first n digits of s, or nullopt if none
/// exists at the precision of s. Such a code exists iff x2 minus the value
/// of the kept digits lies within 2^{-n} - 2^{-p} in absolute value.
/// Throws PreconditionError unless |x2 - sigma(s)| <= 2^{-n}, n <= p and x2
/// is a multiple of 2^{-p}.
std::optional<SignedDigitWord> sigma_inverse_witness(const SignedDigitWord& s, std::uint32_t n,
                                                     const Dyadic& x2);

/// A random argument triple for sigma_inverse_witness: s uniform over all
/// codes with p digits, n uniform in [0, p], and x2 uniform over the
/// representable grid points within 2^{-n} of sigma(s).
struct WitnessQuery {
  SignedDigitWord s;
  std::uint32_t n = 0;
  Dyadic x2;
};
WitnessQuery random_witness_query(std::mt19937_64& rng, std::uint32_t p);

/// v_k = 2^{-floor(k/2)}, which dominates sqrt(t) at t = 2^{-k}.
Modulus sqrt_modulus(std::uint32_t depth);
/// v_k = min(1, 2^{2-2k}), which equals 4t^2 at t = 2^{-k}.
Modulus square_modulus(std::uint32_t depth);

/// Depth of the modulus tables attached to generated instances.
inline constexpr std::uint32_t kInstanceModulusDepth = 64;

/// A representation truncated to finite precision: the code words, the value
/// grid they denote, and the decoding map in both directions.
struct RepresentationInstance {
  std::string name;
  std::uint32_t precision = 0;
  SpacePtr words;
  SpacePtr values;
  Multifunction forward;
  Multifunction inverse;
  Modulus mu;
  std::optional<Modulus> mu_prime;
};

/// "binary": all words of length p onto k / 2^p with mu = identity.
/// "signed_digit": all words in {00, 01, 10}^p onto the multiples of 2^{-p}
/// in (-1, 1) under min(1, |x - x2|), with mu = sqrt_modulus and
/// mu_prime = square_modulus.
/// Throws GuardError if the instance would have more than `max_words` words.
RepresentationInstance make_instance(std::string_view name, std::uint32_t p,
                                     std::size_t max_words = std::size_t{1} << 20);

struct BinaryCounterexample {
  /// Values on the grid within [3/8, 5/8] to the words w with
  /// beta(w) <= x <= beta(w) + 2^{-p}; so 1/2 has the codes 10...0 and 01...1.
  Multifunction inverse;
  Modulus modulus;
  std::uint32_t rounds = 1;
  OracleResult result;
};

/// Runs the chain oracle on the truncated binary inverse around 1/2. The
/// default modulus is 1 at scales below 3 and 1/2 from scale 3 on.
/// Throws PreconditionError if p < 3 or p > 20.
BinaryCounterexample binary_inverse_counterexample(std::uint32_t p,
                                                   const std::optional<Modulus>& modulus = std::nullopt,
                                                   std::uint32_t rounds = 1);

}  // namespace mucont
