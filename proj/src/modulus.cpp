#include "mucont/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "mucont/error.hpp"

namespace mucont {

Modulus::Modulus(std::vector<Dyadic> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw PreconditionError("a modulus table needs depth >= 1 (at least two values)");
  }
  const Dyadic one(1);
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k].sign() < 0 || values_[k] > one) {
      throw PreconditionError("modulus value at scale index " + std::to_string(k) +
                              " is outside [0, 1]: " + values_[k].to_string());
    }
    if (k > 0 && values_[k] > values_[k - 1]) {
      throw PreconditionError("modulus table increases between scale indices " +
                              std::to_string(k - 1) + " and " + std::to_string(k));
    }
  }
}

Modulus Modulus::identity(std::uint32_t depth) {
  return tabulate(depth, [](std::uint32_t k) { return Dyadic::pow2(-static_cast<std::int64_t>(k)); });
}

Modulus Modulus::constant(std::uint32_t depth, const Dyadic& value) {
  return Modulus(std::vector<Dyadic>(depth + 1, value));
}

Modulus Modulus::tabulate(std::uint32_t depth,
                          const std::function<Dyadic(std::uint32_t)>& at_scale) {
  std::vector<Dyadic> values;
  values.reserve(depth + 1);
  for (std::uint32_t k = 0; k <= depth; ++k) values.push_back(at_scale(k));
  return Modulus(std::move(values));
}

const Dyadic& Modulus::at_scale(std::uint64_t k) const {
  return values_[std::min<std::uint64_t>(k, values_.size() - 1)];
}

Dyadic Modulus::eval(const Dyadic& t) const {
  if (t.sign() < 0 || t > Dyadic(1)) {
    throw PreconditionError("modulus argument outside [0, 1]: " + t.to_string());
  }
  if (t.is_zero()) return Dyadic();
  return at_scale(scale_index(t));
}

Modulus modulus_compose(const Modulus& outer, const Modulus& inner) {
  const std::uint32_t depth = std::min(outer.depth(), inner.depth());
  return Modulus::tabulate(depth, [&](std::uint32_t k) { return outer.eval(inner.values()[k]); });
}

Modulus modulus_scale(const Modulus& m, const Dyadic& factor) {
  if (factor.sign() <= 0) {
    throw PreconditionError("modulus scale factor must be positive, got " + factor.to_string());
  }
  const Dyadic one(1);
  return Modulus::tabulate(m.depth(), [&](std::uint32_t k) { return min(one, m.values()[k] * factor); });
}

Modulus log_modulus(std::uint32_t depth) {
  constexpr std::uint32_t kBits = 40;
  const long double ln2 = std::log(2.0L);
  return Modulus::tabulate(depth, [&](std::uint32_t k) {
    const long double scaled = std::ldexp(1.0L, kBits) / (1.0L + static_cast<long double>(k) * ln2);
    return Dyadic(Dyadic::Integer(static_cast<std::int64_t>(std::ceil(scaled))), kBits);
  });
}

GeometricCertificate check_geometric(const Modulus& m, const Dyadic& constant) {
  if (constant.sign() <= 0) {
    throw PreconditionError("geometric constant must be positive, got " + constant.to_string());
  }
  const auto values = m.values();
  const std::uint32_t depth = m.depth();

  // Suffix sums: tails[k] = v_k + v_{k+1} + ... + v_depth.
  std::vector<Dyadic> tails(values.size());
  Dyadic running;
  for (std::size_t k = values.size(); k-- > 0;) {
    running += values[k];
    tails[k] = running;
  }

  GeometricCertificate cert{constant, depth, GeometricCertificate::Verdict::geometric_up_to_depth,
                            std::nullopt, Dyadic()};
  std::optional<std::uint32_t> tightest;
  for (std::uint32_t k = 0; k <= depth; ++k) {
    const Dyadic bound = constant * values[k];
    if (tails[k] > bound) {
      cert.verdict = GeometricCertificate::Verdict::refuted;
      cert.witness_scale = k;
      cert.tail_sum = tails[k];
      return cert;
    }
    // Ratio comparison tails[k]/v_k > tails[t]/v_t without division.
    if (values[k].sign() > 0 &&
        (!tightest || tails[k] * values[*tightest] > tails[*tightest] * values[k])) {
      tightest = k;
    }
  }
  if (tightest) cert.tail_sum = tails[*tightest];
  return cert;
}

}  // namespace mucont
