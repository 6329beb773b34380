#include "bitalign/sequence.hpp"

#include <algorithm>

#include "bitalign/errors.hpp"

namespace bitalign {

Code encode_symbol(char c) noexcept {
  switch (c) {
    case 'A': case 'a': return kA;
    case 'C': case 'c': return kC;
    case 'G': case 'g': return kG;
    case 'T': case 't': return kT;
    default: return kN;
  }
}

char decode_symbol(Code c) noexcept {
  static constexpr char kTable[] = {'A', 'C', 'G', 'T', 'N'};
  return c < kAlphabetSize ? kTable[c] : 'N';
}

EncodedSequence EncodedSequence::from_string(std::string_view text) {
  EncodedSequence s;
  s.packed_.reserve((text.size() + 31) / 32);
  for (char c : text) s.push_back(encode_symbol(c));
  return s;
}

EncodedSequence EncodedSequence::from_codes(std::span<const Code> codes) {
  EncodedSequence s;
  s.packed_.reserve((codes.size() + 31) / 32);
  for (Code c : codes) s.push_back(c);
  return s;
}

void EncodedSequence::push_back(Code c) {
  const std::size_t i = length_++;
  if (i % 32 == 0) packed_.push_back(0);
  if (c == kN) {
    if (n_mask_.empty()) n_mask_.assign((length_ + 63) / 64, 0);
  }
  if (!n_mask_.empty()) {
    if (n_mask_.size() * 64 < length_) n_mask_.push_back(0);
    if (c == kN) n_mask_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  const std::uint64_t bits = c == kN ? 0 : c;
  packed_[i / 32] |= bits << (2 * (i % 32));
}

Code EncodedSequence::at(std::size_t i) const {
  if (i >= length_) throw UsageError("sequence index out of range");
  if (!n_mask_.empty() && ((n_mask_[i / 64] >> (i % 64)) & 1)) return kN;
  return static_cast<Code>((packed_[i / 32] >> (2 * (i % 32))) & 3);
}

EncodedSequence EncodedSequence::subseq(std::size_t pos, std::size_t len) const {
  EncodedSequence s;
  if (pos >= length_) return s;
  const std::size_t end = pos + std::min(len, length_ - pos);
  for (std::size_t i = pos; i < end; ++i) s.push_back(at(i));
  return s;
}

std::vector<Code> EncodedSequence::unpack() const {
  std::vector<Code> out;
  unpack_into(0, length_, out);
  return out;
}

void EncodedSequence::unpack_into(std::size_t pos, std::size_t len, std::vector<Code>& out) const {
  out.clear();
  if (pos >= length_) return;
  const std::size_t end = pos + std::min(len, length_ - pos);
  out.reserve(end - pos);
  for (std::size_t i = pos; i < end; ++i) out.push_back(at(i));
}

std::string EncodedSequence::to_string() const {
  std::string s;
  s.reserve(length_);
  for (std::size_t i = 0; i < length_; ++i) s.push_back(decode_symbol(at(i)));
  return s;
}

bool EncodedSequence::operator==(const EncodedSequence& other) const {
  if (length_ != other.length_) return false;
  for (std::size_t i = 0; i < length_; ++i) {
    if (at(i) != other.at(i)) return false;
  }
  return true;
}

}  // namespace bitalign
