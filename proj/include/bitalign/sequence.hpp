#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bitalign {

/// Symbol codes. A/C/G/T use the 2-bit encoding A=00, C=01, G=10, T=11;
/// every other input character becomes kN.
enum Code : std::uint8_t { kA = 0, kC = 1, kG = 2, kT = 3, kN = 4 };

inline constexpr std::size_t kAlphabetSize = 5;

/// How an ambiguous symbol (N) behaves in pattern bitmasks.
enum class AmbiguityPolicy {
  kMismatch,  // never matches anything, including another N
  kWildcard,  // matches everything
};

Code encode_symbol(char c) noexcept;
char decode_symbol(Code c) noexcept;

/// Whether two codes match under the given policy.
inline bool symbols_match(Code a, Code b, AmbiguityPolicy policy) noexcept {
  if (a == kN || b == kN) return policy == AmbiguityPolicy::kWildcard;
  return a == b;
}

/// DNA sequence packed at 2 bits per symbol. Positions holding N are kept in
/// a side bitmask, allocated only when an N is present.
class EncodedSequence {
 public:
  EncodedSequence() = default;

  /// Case-insensitive; characters outside ACGT are stored as N.
  static EncodedSequence from_string(std::string_view text);
  static EncodedSequence from_codes(std::span<const Code> codes);

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  bool has_ambiguous() const noexcept { return !n_mask_.empty(); }

  Code at(std::size_t i) const;
  Code operator[](std::size_t i) const { return at(i); }

  /// Symbols [pos, pos+len), clamped to the end of the sequence.
  EncodedSequence subseq(std::size_t pos, std::size_t len) const;

  std::vector<Code> unpack() const;
  void unpack_into(std::size_t pos, std::size_t len, std::vector<Code>& out) const;
  std::string to_string() const;

  void push_back(Code c);

  bool operator==(const EncodedSequence& other) const;

 private:
  std::vector<std::uint64_t> packed_;
  std::vector<std::uint64_t> n_mask_;
  std::size_t length_ = 0;
};

}  // namespace bitalign
