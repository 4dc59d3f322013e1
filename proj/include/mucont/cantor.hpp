#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mucont/dyadic.hpp"

namespace mucont {

/// Longest word the library handles; infinite sequences are truncated to this.
inline constexpr std::uint32_t kMaxPrecision = 64;

/// A finite binary word, i.e. a Cantor-space point truncated to its length.
///
/// Bits are stored left-aligned in one machine word so that lexicographic
/// order on equal-length words is integer order.
class Word {
 public:
  Word() = default;

  /// Parses a string of '0'/'1' characters.
  static Word parse(std::string_view bits);
  /// The low `length` bits of `value`, most significant bit first.
  static Word from_integer(std::uint64_t value, std::uint32_t length);

  std::uint32_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool operator[](std::uint32_t i) const { return (bits_ >> (63 - i)) & 1U; }

  Word prefix(std::uint32_t length) const;
  Word appended(bool bit) const;
  /// Integer value of the word read in binary (first bit most significant).
  std::uint64_t to_integer() const;
  std::string to_string() const;

  /// Length of the longest common prefix.
  std::uint32_t common_prefix_length(const Word& other) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.size_ <=> b.size_;
  }

 private:
  std::uint64_t bits_ = 0;
  std::uint32_t size_ = 0;
};

/// d_C(w, w2) = 2^{-i} for the first index i where the words differ, 0 if equal.
/// Throws PreconditionError on a length mismatch.
Dyadic word_distance(const Word& w, const Word& w2);

/// Longest common prefix. Throws PreconditionError on a length mismatch.
Word word_meet(const Word& w, const Word& w2);

/// A nonempty finite set of distinct words of one common length.
class CantorDomain {
 public:
  /// Members are stored sorted. Throws on duplicates, mixed lengths or an
  /// empty set.
  explicit CantorDomain(std::vector<Word> members);

  /// All 2^precision words of the given length.
  static CantorDomain full(std::uint32_t precision);

  std::uint32_t precision() const { return precision_; }
  std::size_t size() const { return members_.size(); }
  std::span<const Word> members() const { return members_; }
  const Word& operator[](std::size_t i) const { return members_[i]; }

  /// Index of `w` among the sorted members, or size() if absent.
  std::size_t index_of(const Word& w) const;

  friend bool operator==(const CantorDomain&, const CantorDomain&) = default;

 private:
  std::uint32_t precision_ = 0;
  std::vector<Word> members_;
};

/// Members grouped by their length-n prefix, in lexicographic order. Two
/// members share a class iff their distance is at most 2^{-n}.
std::vector<std::vector<Word>> enumerate_prefix_classes(const CantorDomain& d, std::uint32_t n);

}  // namespace mucont
