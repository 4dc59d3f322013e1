#include "mucont/dyadic.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "mucont/error.hpp"

namespace mucont {

namespace {

using Integer = Dyadic::Integer;

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) {
    throw FormatError("malformed dyadic \"" + std::string(whole) + "\"");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw FormatError("malformed dyadic \"" + std::string(whole) + "\"");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits);
}

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

}  // namespace

Dyadic::Dyadic(std::int64_t value) : numerator_(value), exponent_(0) {}

Dyadic::Dyadic(Integer numerator, std::uint64_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (numerator_.is_zero()) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  const auto trailing = boost::multiprecision::lsb(boost::multiprecision::abs(numerator_));
  const auto drop = std::min<std::uint64_t>(trailing, exponent_);
  if (drop > 0) {
    numerator_ >>= static_cast<unsigned>(drop);
    exponent_ -= drop;
  }
}

Dyadic Dyadic::pow2(std::int64_t k) {
  if (k >= 0) return Dyadic(Integer(1) << static_cast<unsigned>(k), 0);
  return Dyadic(Integer(1), static_cast<std::uint64_t>(-k));
}

Dyadic Dyadic::parse(std::string_view raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw FormatError("empty dyadic string");
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Dyadic(parse_integer(text, raw), 0);

  Integer numerator = parse_integer(std::string_view(text).substr(0, slash), raw);
  const std::string denom = trim(std::string_view(text).substr(slash + 1));
  if (denom.rfind("2^", 0) == 0) {
    const Integer e = parse_integer(std::string_view(denom).substr(2), raw);
    if (e.sign() < 0 || e > 1'000'000) {
      throw FormatError("dyadic exponent out of range in \"" + std::string(raw) + "\"");
    }
    return Dyadic(std::move(numerator), e.convert_to<std::uint64_t>());
  }
  const Integer d = parse_integer(denom, raw);
  if (d.sign() <= 0 || (d & (d - 1)) != 0) {
    throw FormatError("denominator of \"" + std::string(raw) + "\" is not a power of two");
  }
  return Dyadic(std::move(numerator), boost::multiprecision::msb(d));
}

std::string Dyadic::to_string() const {
  return numerator_.str() + "/2^" + std::to_string(exponent_);
}

double Dyadic::to_double() const {
  return std::ldexp(numerator_.convert_to<double>(), -static_cast<int>(exponent_));
}

Dyadic::Integer Dyadic::floor_scaled(std::uint64_t shift) const {
  if (shift >= exponent_) return numerator_ << static_cast<unsigned>(shift - exponent_);
  const auto s = static_cast<unsigned>(exponent_ - shift);
  if (numerator_.sign() >= 0) return numerator_ >> s;
  const Integer magnitude = -numerator_;
  return -((magnitude + (Integer(1) << s) - 1) >> s);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.exponent_ == b.exponent_) return Dyadic(a.numerator_ + b.numerator_, a.exponent_);
  if (a.exponent_ > b.exponent_) {
    return Dyadic(a.numerator_ + (b.numerator_ << static_cast<unsigned>(a.exponent_ - b.exponent_)),
                  a.exponent_);
  }
  return Dyadic((a.numerator_ << static_cast<unsigned>(b.exponent_ - a.exponent_)) + b.numerator_,
                b.exponent_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.numerator_ * b.numerator_, a.exponent_ + b.exponent_);
}

Dyadic Dyadic::operator-() const {
  Dyadic out;
  out.numerator_ = -numerator_;
  out.exponent_ = exponent_;
  return out;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.exponent_ == b.exponent_) {
    return a.numerator_ == b.numerator_ ? std::strong_ordering::equal
           : a.numerator_ < b.numerator_ ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
  }
  if (a.sign() != b.sign()) {
    return a.sign() < b.sign() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  Integer lhs = a.numerator_;
  Integer rhs = b.numerator_;
  if (a.exponent_ > b.exponent_) {
    rhs <<= static_cast<unsigned>(a.exponent_ - b.exponent_);
  } else {
    lhs <<= static_cast<unsigned>(b.exponent_ - a.exponent_);
  }
  return lhs == rhs ? std::strong_ordering::equal
         : lhs < rhs ? std::strong_ordering::less
                     : std::strong_ordering::greater;
}

Dyadic abs(const Dyadic& value) { return value.sign() < 0 ? -value : value; }
Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

std::uint64_t scale_index(const Dyadic& t) {
  if (t.sign() <= 0 || t > Dyadic(1)) {
    throw PreconditionError("scale_index needs 0 < t <= 1, got " + t.to_string());
  }
  // Canonical form: a positive exponent implies an odd numerator, so t is a
  // power of two exactly when the numerator is 1.
  if (t.numerator() == 1) return t.exponent();
  const auto top = boost::multiprecision::msb(t.numerator());
  return t.exponent() - top - 1;
}

std::ostream& operator<<(std::ostream& os, const Dyadic& value) {
  return os << value.to_string();
}

}  // namespace mucont
