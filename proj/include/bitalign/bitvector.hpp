#pragma once

// Arbitrary-width bitvectors for bit-parallel matching.
//
// Bit index 0 is the most significant bit and corresponds to pattern
// position 0; index width-1 is the least significant bit. Words are stored
// little-endian: word 0 holds the least significant bits. Bits above
// `width` in the top word are padding and are kept at 1, since a 1 means
// "no match" and padding must never look like a live partial match.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bitalign/errors.hpp"

namespace bitalign {

namespace detail {

template <std::unsigned_integral Word>
inline constexpr std::size_t kWordBits = std::numeric_limits<Word>::digits;

template <std::unsigned_integral Word>
constexpr std::size_t words_for(std::size_t width) {
  return (width + kWordBits<Word> - 1) / kWordBits<Word>;
}

// Mask of the padding bits in the top word (all zero when width fills it).
template <std::unsigned_integral Word>
constexpr Word padding_mask(std::size_t width) {
  const std::size_t used = width % kWordBits<Word>;
  if (used == 0) return Word{0};
  return static_cast<Word>(~Word{0} << used);
}

// dst = src shifted one position toward the MSB; `fill` enters at the LSB.
// src and dst may alias.
template <std::unsigned_integral Word>
inline void shift_left_one(std::span<const Word> src, std::span<Word> dst, bool fill,
                           Word pad) {
  Word carry = fill ? Word{1} : Word{0};
  const std::size_t n = src.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Word w = src[i];
    dst[i] = static_cast<Word>((w << 1) | carry);
    carry = static_cast<Word>(w >> (kWordBits<Word> - 1));
  }
  dst[n - 1] |= pad;
}

}  // namespace detail

template <std::unsigned_integral Word>
class BasicBitvector {
 public:
  using word_type = Word;
  static constexpr std::size_t kWordBits = detail::kWordBits<Word>;

  BasicBitvector() = default;

  /// All bits set to `value` (padding is 1 regardless).
  explicit BasicBitvector(std::size_t width, bool value = true)
      : words_(detail::words_for<Word>(width), value ? ~Word{0} : Word{0}), width_(width) {
    if (width == 0) throw UsageError("bitvector width must be >= 1");
    fix_padding();
  }

  /// Parses an MSB-first string of '0'/'1' characters.
  static BasicBitvector from_string(std::string_view bits) {
    BasicBitvector v(bits.size(), true);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw UsageError("bitvector string must be 0/1");
      v.set(i, bits[i] == '1');
    }
    return v;
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> mutable_words() noexcept { return words_; }
  Word padding() const noexcept { return detail::padding_mask<Word>(width_); }

  bool test(std::size_t i) const {
    check_index(i);
    const std::size_t pos = width_ - 1 - i;
    return (words_[pos / kWordBits] >> (pos % kWordBits)) & Word{1};
  }

  void set(std::size_t i, bool value) {
    check_index(i);
    const std::size_t pos = width_ - 1 - i;
    const Word bit = static_cast<Word>(Word{1} << (pos % kWordBits));
    if (value) {
      words_[pos / kWordBits] |= bit;
    } else {
      words_[pos / kWordBits] &= static_cast<Word>(~bit);
    }
  }

  bool msb_is_zero() const { return !test(0); }

  bool all_ones() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == ~Word{0}; });
  }

  BasicBitvector& shift_left_one(bool fill = false) {
    detail::shift_left_one<Word>(words_, words_, fill, padding());
    return *this;
  }

  BasicBitvector& operator&=(const BasicBitvector& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  BasicBitvector& operator|=(const BasicBitvector& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  /// MSB-first rendering, padding omitted.
  std::string to_string() const {
    std::string s(width_, '1');
    for (std::size_t i = 0; i < width_; ++i) s[i] = test(i) ? '1' : '0';
    return s;
  }

  bool operator==(const BasicBitvector&) const = default;

 private:
  void check_index(std::size_t i) const {
    if (i >= width_) throw UsageError("bit index out of range");
  }
  void check_width(const BasicBitvector& other) const {
    if (other.width_ != width_) throw UsageError("bitvector width mismatch");
  }
  void fix_padding() {
    if (!words_.empty()) words_.back() |= padding();
  }

  std::vector<Word> words_;
  std::size_t width_ = 0;
};

using Bitvector = BasicBitvector<std::uint64_t>;

template <std::unsigned_integral Word>
BasicBitvector<Word> shift_left_one(BasicBitvector<Word> v, bool fill = false) {
  v.shift_left_one(fill);
  return v;
}

template <std::unsigned_integral Word>
BasicBitvector<Word> bit_and(BasicBitvector<Word> a, const BasicBitvector<Word>& b) {
  a &= b;
  return a;
}

template <std::unsigned_integral Word>
BasicBitvector<Word> bit_or(BasicBitvector<Word> a, const BasicBitvector<Word>& b) {
  a |= b;
  return a;
}

template <std::unsigned_integral Word>
bool msb_is_zero(const BasicBitvector<Word>& v) {
  return v.msb_is_zero();
}

template <std::unsigned_integral Word>
bool bit_at(const BasicBitvector<Word>& v, std::size_t i) {
  return v.test(i);
}

}  // namespace bitalign
