#include "mucont/representations.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "mucont/error.hpp"

namespace mucont {

Dyadic beta_decode(const Word& w) { return Dyadic(Dyadic::Integer(w.to_integer()), w.size()); }

SignedDigitWord::SignedDigitWord(Word bits) : bits_(bits) {
  if (bits_.size() % 2 != 0) throw PreconditionError("signed-digit word of odd length " + bits_.to_string());
  for (std::uint32_t m = 0; m < digit_count(); ++m) {
    if (bits_[2 * m] && bits_[2 * m + 1]) {
      throw PreconditionError("pair 11 at digit " + std::to_string(m) + " of " + bits_.to_string());
    }
  }
}

SignedDigitWord SignedDigitWord::parse(std::string_view bits) { return SignedDigitWord(Word::parse(bits)); }

SignedDigitWord SignedDigitWord::from_digits(std::span<const int> digits) {
  if (2 * digits.size() > kMaxPrecision) throw PreconditionError("too many signed digits");
  Word w;
  for (int d : digits) {
    if (d < -1 || d > 1) throw PreconditionError("signed digit out of range: " + std::to_string(d));
    w = w.appended(d == 1).appended(d == 0);
  }
  return SignedDigitWord(w);
}

std::vector<int> SignedDigitWord::digits() const {
  std::vector<int> out(digit_count());
  for (std::uint32_t m = 0; m < out.size(); ++m) out[m] = digit(m);
  return out;
}

Dyadic sigma_decode(const SignedDigitWord& s) {
  // Integer accumulation of sum d_m 2^{p-m-1}, then one division by 2^p.
  Dyadic::Integer acc = 0;
  for (std::uint32_t m = 0; m < s.digit_count(); ++m) acc = 2 * acc + s.digit(m);
  return Dyadic(acc, s.digit_count());
}

SignedDigitWord sigma_encode(const Dyadic& x, std::uint32_t p) {
  if (abs(x) > Dyadic(1)) throw PreconditionError("x = " + x.to_string() + " lies outside [-1, 1]");
  if (2 * p > kMaxPrecision) throw PreconditionError("precision " + std::to_string(p) + " exceeds 32 digits");
  std::vector<int> digits;
  digits.reserve(p);
  Dyadic rest = x;
  for (std::uint32_t m = 0; m < p; ++m) {
    const auto weight = Dyadic::pow2(-static_cast<std::int64_t>(m) - 1);
    const auto half = Dyadic::pow2(-static_cast<std::int64_t>(m) - 2);
    int d = 0;
    if (rest > half) {
      d = 1;
    } else if (rest < -half) {
      d = -1;
    }
    digits.push_back(d);
    rest -= Dyadic(d) * weight;
  }
  return SignedDigitWord::from_digits(digits);
}

std::optional<SignedDigitWord> sigma_inverse_witness(const SignedDigitWord& s, std::uint32_t n,
                                                     const Dyadic& x2) {
  const auto p = s.digit_count();
  if (n > p) throw PreconditionError("n = " + std::to_string(n) + " exceeds the digit count " + std::to_string(p));
  if (x2.exponent() > p) {
    throw PreconditionError("x2 = " + x2.to_string() + " is not a multiple of 2^-" + std::to_string(p));
  }
  const auto x = sigma_decode(s);
  if (abs(x2 - x) > Dyadic::pow2(-static_cast<std::int64_t>(n))) {
    throw PreconditionError("|x2 - sigma(s)| exceeds 2^-" + std::to_string(n));
  }
  if (x2 == x) return s;

  auto digits = s.digits();
  Dyadic::Integer kept = 0;
  for (std::uint32_t m = 0; m < n; ++m) kept = 2 * kept + digits[m];
  const auto tail = x2 - Dyadic(kept, n);
  const auto reach = Dyadic::pow2(-static_cast<std::int64_t>(n)) - Dyadic::pow2(-static_cast<std::int64_t>(p));
  if (abs(tail) > reach) return std::nullopt;

  const auto tail_code = sigma_encode(tail * Dyadic::pow2(n), p - n);
  if (sigma_decode(tail_code) * Dyadic::pow2(-static_cast<std::int64_t>(n)) != tail) {
    throw InternalError("greedy expansion of a grid value was not exact");
  }
  const auto tail_digits = tail_code.digits();
  std::copy(tail_digits.begin(), tail_digits.end(), digits.begin() + n);
  return SignedDigitWord::from_digits(digits);
}

WitnessQuery random_witness_query(std::mt19937_64& rng, std::uint32_t p) {
  if (p < 1 || p > 32) throw PreconditionError("precision must lie in [1, 32]");
  std::uniform_int_distribution<int> digit(-1, 1);
  std::vector<int> digits(p);
  for (auto& d : digits) d = digit(rng);
  auto s = SignedDigitWord::from_digits(digits);
  const auto n = std::uniform_int_distribution<std::uint32_t>(0, p)(rng);
  // Grid points are k / 2^p with |k| < 2^p.
  const auto k = static_cast<std::int64_t>(sigma_decode(s).floor_scaled(p));
  const std::int64_t top = (std::int64_t{1} << p) - 1;
  const std::int64_t reach = std::int64_t{1} << (p - n);
  std::uniform_int_distribution<std::int64_t> target(std::max(-top, k - reach), std::min(top, k + reach));
  return WitnessQuery{s, n, Dyadic(Dyadic::Integer(target(rng)), p)};
}

Modulus sqrt_modulus(std::uint32_t depth) {
  return Modulus::tabulate(depth, [](std::uint32_t k) { return Dyadic::pow2(-static_cast<std::int64_t>(k / 2)); });
}

Modulus square_modulus(std::uint32_t depth) {
  return Modulus::tabulate(depth, [](std::uint32_t k) {
    return k <= 1 ? Dyadic(1) : Dyadic::pow2(2 - 2 * static_cast<std::int64_t>(k));
  });
}

namespace {

RepresentationInstance assemble(std::string name, std::uint32_t p, std::vector<Word> words,
                                const std::function<Dyadic(const Word&)>& decode, std::vector<Dyadic> grid,
                                Modulus mu, std::optional<Modulus> mu_prime) {
  auto word_space = make_space(FiniteMetricSpace::cantor(CantorDomain(std::move(words))));
  auto value_space = make_space(FiniteMetricSpace::line(std::move(grid)));
  const auto& domain = *word_space->cantor_domain();
  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  pairs.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const auto value = decode(domain[i]);
    const auto j = value_space->find_point(value);
    if (!j) throw InternalError("decoded value " + value.to_string() + " missing from the grid");
    pairs.emplace_back(static_cast<PointIndex>(i), static_cast<PointIndex>(*j));
  }
  auto forward = Multifunction::from_pairs(word_space, value_space, pairs);
  auto inverse = mf_inverse(forward);
  return RepresentationInstance{std::move(name), p, std::move(word_space), std::move(value_space),
                                std::move(forward), std::move(inverse), std::move(mu), std::move(mu_prime)};
}

}  // namespace

RepresentationInstance make_instance(std::string_view name, std::uint32_t p, std::size_t max_words) {
  if (p < 1) throw PreconditionError("precision must be at least 1");
  if (name == "binary") {
    if (p > 24 || (std::size_t{1} << p) > max_words) {
      throw GuardError("binary instance of precision " + std::to_string(p) + " exceeds the word limit");
    }
    std::vector<Word> words;
    std::vector<Dyadic> grid;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << p); ++k) {
      words.push_back(Word::from_integer(k, p));
      grid.emplace_back(Dyadic::Integer(k), p);
    }
    return assemble("binary", p, std::move(words), beta_decode, std::move(grid),
                    Modulus::identity(kInstanceModulusDepth), std::nullopt);
  }
  if (name == "signed_digit") {
    std::size_t count = 1;
    for (std::uint32_t m = 0; m < p; ++m) {
      count *= 3;
      if (count > max_words || p > 20) {
        throw GuardError("signed-digit instance of precision " + std::to_string(p) + " exceeds the word limit");
      }
    }
    std::vector<Word> words;
    words.reserve(count);
    std::vector<int> digits(p, -1);
    for (std::size_t i = 0; i < count; ++i) {
      words.push_back(SignedDigitWord::from_digits(digits).bits());
      for (std::uint32_t m = p; m-- > 0;) {
        if (++digits[m] <= 1) break;
        digits[m] = -1;
      }
    }
    const std::int64_t top = (std::int64_t{1} << p) - 1;
    std::vector<Dyadic> grid;
    for (std::int64_t k = -top; k <= top; ++k) grid.emplace_back(Dyadic::Integer(k), p);
    return assemble(
        "signed_digit", p, std::move(words), [](const Word& w) { return sigma_decode(SignedDigitWord(w)); },
        std::move(grid), sqrt_modulus(kInstanceModulusDepth), square_modulus(kInstanceModulusDepth));
  }
  throw PreconditionError("unknown representation '" + std::string(name) + "'");
}

BinaryCounterexample binary_inverse_counterexample(std::uint32_t p, const std::optional<Modulus>& modulus,
                                                   std::uint32_t rounds) {
  if (p < 3 || p > 20) throw PreconditionError("precision must lie in [3, 20]");
  const std::uint64_t lo = std::uint64_t{3} << (p - 3);
  const std::uint64_t hi = std::uint64_t{5} << (p - 3);
  std::vector<Dyadic> grid;
  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  for (auto k = lo; k <= hi; ++k) {
    const auto x = static_cast<PointIndex>(grid.size());
    grid.emplace_back(Dyadic::Integer(k), p);
    pairs.emplace_back(x, static_cast<PointIndex>(k - 1));
    pairs.emplace_back(x, static_cast<PointIndex>(k));
  }
  auto values = make_space(FiniteMetricSpace::line(std::move(grid)));
  auto words = make_space(FiniteMetricSpace::cantor(CantorDomain::full(p)));
  auto inverse = Multifunction::from_pairs(values, words, pairs);
  auto mu = modulus ? *modulus : Modulus::tabulate(kInstanceModulusDepth, [](std::uint32_t k) {
    return k < 3 ? Dyadic(1) : Dyadic::pow2(-1);
  });
  auto result = chain_continuity_oracle(inverse, mu, rounds);
  return BinaryCounterexample{std::move(inverse), std::move(mu), rounds, std::move(result)};
}

}  // namespace mucont
