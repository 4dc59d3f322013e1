#include "mucont/cantor.hpp"

#include <algorithm>
#include <bit>

#include "mucont/error.hpp"

namespace mucont {

namespace {

void require_same_length(const Word& a, const Word& b) {
  if (a.size() != b.size()) {
    throw PreconditionError("words of different lengths: \"" + a.to_string() + "\" and \"" +
                            b.to_string() + "\"");
  }
}

}  // namespace

Word Word::parse(std::string_view bits) {
  if (bits.size() > kMaxPrecision) {
    throw FormatError("word longer than " + std::to_string(kMaxPrecision) + " bits");
  }
  Word w;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw FormatError("word \"" + std::string(bits) + "\" contains a character other than 0/1");
    }
    w = w.appended(c == '1');
  }
  return w;
}

Word Word::from_integer(std::uint64_t value, std::uint32_t length) {
  if (length > kMaxPrecision) throw PreconditionError("word length exceeds precision bound");
  Word w;
  w.size_ = length;
  if (length > 0) {
    const std::uint64_t mask = length == 64 ? ~0ULL : ((1ULL << length) - 1);
    w.bits_ = (value & mask) << (64 - length);
  }
  return w;
}

Word Word::prefix(std::uint32_t length) const {
  if (length > size_) throw PreconditionError("prefix longer than word");
  Word w;
  w.size_ = length;
  w.bits_ = length == 0 ? 0 : bits_ & (~0ULL << (64 - length));
  return w;
}

Word Word::appended(bool bit) const {
  if (size_ >= kMaxPrecision) throw PreconditionError("word exceeds precision bound");
  Word w = *this;
  if (bit) w.bits_ |= 1ULL << (63 - size_);
  ++w.size_;
  return w;
}

std::uint64_t Word::to_integer() const { return size_ == 0 ? 0 : bits_ >> (64 - size_); }

std::string Word::to_string() const {
  std::string out(size_, '0');
  for (std::uint32_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::uint32_t Word::common_prefix_length(const Word& other) const {
  const auto shared = std::min(size_, other.size_);
  const auto diff = static_cast<std::uint32_t>(std::countl_zero(bits_ ^ other.bits_));
  return std::min(shared, diff);
}

Dyadic word_distance(const Word& w, const Word& w2) {
  require_same_length(w, w2);
  const auto i = w.common_prefix_length(w2);
  if (i == w.size()) return Dyadic();
  return Dyadic::pow2(-static_cast<std::int64_t>(i));
}

Word word_meet(const Word& w, const Word& w2) {
  require_same_length(w, w2);
  return w.prefix(w.common_prefix_length(w2));
}

CantorDomain::CantorDomain(std::vector<Word> members) : members_(std::move(members)) {
  if (members_.empty()) throw PreconditionError("a Cantor domain must be nonempty");
  precision_ = members_.front().size();
  for (const auto& w : members_) {
    if (w.size() != precision_) {
      throw PreconditionError("domain words differ in length: \"" + members_.front().to_string() +
                              "\" vs \"" + w.to_string() + "\"");
    }
  }
  std::sort(members_.begin(), members_.end());
  const auto dup = std::adjacent_find(members_.begin(), members_.end());
  if (dup != members_.end()) {
    throw PreconditionError("duplicate domain word \"" + dup->to_string() + "\"");
  }
}

CantorDomain CantorDomain::full(std::uint32_t precision) {
  if (precision > 30) throw GuardError("full Cantor domain above 30 bits is too large");
  std::vector<Word> words;
  words.reserve(std::size_t{1} << precision);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << precision); ++v) {
    words.push_back(Word::from_integer(v, precision));
  }
  return CantorDomain(std::move(words));
}

std::size_t CantorDomain::index_of(const Word& w) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), w);
  if (it == members_.end() || *it != w) return members_.size();
  return static_cast<std::size_t>(it - members_.begin());
}

std::vector<std::vector<Word>> enumerate_prefix_classes(const CantorDomain& d, std::uint32_t n) {
  if (n > d.precision()) {
    throw PreconditionError("prefix length " + std::to_string(n) + " exceeds precision " +
                            std::to_string(d.precision()));
  }
  std::vector<std::vector<Word>> classes;
  for (const auto& w : d.members()) {
    if (classes.empty() || classes.back().front().prefix(n) != w.prefix(n)) classes.emplace_back();
    classes.back().push_back(w);
  }
  return classes;
}

}  // namespace mucont
