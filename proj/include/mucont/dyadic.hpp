#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mucont {

/// Exact rational number of the form numerator / 2^exponent.
///
/// Values are kept canonical: if the exponent is positive the numerator is
/// odd, and zero is always stored as 0 / 2^0. All arithmetic is exact.
class Dyadic {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Dyadic() = default;
  Dyadic(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Dyadic(Integer numerator, std::uint64_t exponent);

  /// 2^k for any integer k.
  static Dyadic pow2(std::int64_t k);

  /// Parses "m/2^e", a plain integer "m", or "m/d" with d a power of two.
  static Dyadic parse(std::string_view text);

  const Integer& numerator() const { return numerator_; }
  std::uint64_t exponent() const { return exponent_; }

  bool is_zero() const { return numerator_.is_zero(); }
  int sign() const { return numerator_.sign(); }

  /// Canonical text form "m/2^e".
  std::string to_string() const;
  double to_double() const;

  /// Largest integer not exceeding this value times 2^shift.
  Integer floor_scaled(std::uint64_t shift) const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }
  Dyadic& operator-=(const Dyadic& other) { return *this = *this - other; }
  Dyadic& operator*=(const Dyadic& other) { return *this = *this * other; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void canonicalize();

  Integer numerator_{0};
  std::uint64_t exponent_ = 0;
};

Dyadic abs(const Dyadic& value);
Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

/// For 0 < t <= 1, the unique k >= 0 with 2^{-k-1} < t <= 2^{-k}.
std::uint64_t scale_index(const Dyadic& t);

std::ostream& operator<<(std::ostream& os, const Dyadic& value);

}  // namespace mucont
