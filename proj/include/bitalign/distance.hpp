#pragma once

// Bit-parallel distance calculation: pattern bitmasks, the status-bitvector
// recurrence, whole-text search (optionally over overlapping chunks), and a
// window mode that records the intermediate bitvectors traceback needs.
//
// Text is consumed from its last symbol to its first. After consuming
// text[i], bit j of R[d] is 0 iff pattern[j..m) aligns against some prefix of
// text[i..n) with at most d edits, so an MSB of 0 reports a match starting
// at i.

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bitalign/bitvector.hpp"
#include "bitalign/sequence.hpp"

namespace bitalign {

template <std::unsigned_integral Word>
class BasicPatternBitmasks {
 public:
  BasicPatternBitmasks(std::span<const Code> pattern, AmbiguityPolicy policy);

  std::size_t width() const noexcept { return rows_[0].width(); }
  const BasicBitvector<Word>& operator[](Code c) const { return rows_[c]; }

 private:
  std::array<BasicBitvector<Word>, kAlphabetSize> rows_;
};

using PatternBitmasks = BasicPatternBitmasks<std::uint64_t>;

PatternBitmasks build_pattern_bitmasks(const EncodedSequence& pattern,
                                       AmbiguityPolicy policy = AmbiguityPolicy::kMismatch);

/// Where the text boundary sits relative to the symbol being consumed.
/// With `anchored` unset any text suffix is free; otherwise unconsumed text
/// after the alignment costs one deletion per symbol.
struct TextEnd {
  bool anchored = false;
  std::size_t symbols_after = 0;  // text symbols after the current one

  // Empty pattern suffix may sit right after the current symbol with <= d edits.
  bool free_after(std::size_t d) const noexcept { return !anchored || symbols_after <= d; }
  // Same, but with the current symbol still unconsumed.
  bool free_here(std::size_t d) const noexcept { return !anchored || symbols_after + 1 <= d; }
};

template <std::unsigned_integral Word>
struct BasicDcState {
  std::vector<BasicBitvector<Word>> r;
  std::vector<BasicBitvector<Word>> old_r;

  /// R[0..k] before any text is consumed. Unless `literal_all_ones`, the d
  /// least significant bits of R[d] start at 0: a pattern suffix of length
  /// <= d may be inserted past the end of the text.
  static BasicDcState initial(std::size_t width, std::size_t k, bool literal_all_ones = false);
};

using DcState = BasicDcState<std::uint64_t>;

/// One text iteration: oldR <- R, then R[0] and R[1..k] from the
/// deletion/substitution/insertion/match intermediates.
template <std::unsigned_integral Word>
void dc_step(BasicDcState<Word>& state, const BasicBitvector<Word>& pm_cur, std::size_t k,
             TextEnd end = {});

struct DcOptions {
  AmbiguityPolicy ambiguity = AmbiguityPolicy::kMismatch;
  // Algorithm-as-written initialisation (all ones). Forbids the pattern from
  // running past the end of the text; kept for comparison only.
  bool literal_all_ones_init = false;
  // Charge for unaligned text on both sides (global distance, start fixed
  // at 0). Off by default: flanking reference symbols are skipped for free.
  bool anchor_text_ends = false;
  // Stop at the first text position that yields a match.
  bool early_exit = false;
};

struct MatchResult {
  bool found = false;
  std::size_t start_loc = 0;
  std::size_t edit_dist = 0;

  bool operator==(const MatchResult&) const = default;
};

enum class IntermediateKind : std::uint8_t { kMatch = 0, kInsertion = 1, kDeletion = 2, kSubstitution = 3 };

/// Intermediate bitvectors for one window, indexed by text iteration t
/// (0 = first symbol of the sub-text) and distance d. Substitution is not
/// stored by default; it is the deletion bitvector shifted left by one.
template <std::unsigned_integral Word>
class BasicIntermediateStore {
 public:
  BasicIntermediateStore() = default;

  void reset(std::size_t text_len, std::size_t width, bool anchored_end, bool store_substitution);
  void ensure_rows(std::size_t rows);

  std::size_t text_len() const noexcept { return text_len_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t rows() const noexcept { return rows_; }
  bool anchored_end() const noexcept { return anchored_end_; }
  bool stores_substitution() const noexcept { return kinds_ == 4; }

  std::span<Word> slot(IntermediateKind kind, std::size_t t, std::size_t d);
  std::span<const Word> slot(IntermediateKind kind, std::size_t t, std::size_t d) const;

  /// Bit j (MSB-first) of the given intermediate; substitution is derived
  /// from the deletion bitvector unless it was stored explicitly.
  bool bit(IntermediateKind kind, std::size_t t, std::size_t d, std::size_t j) const;

  BasicBitvector<Word> bitvector(IntermediateKind kind, std::size_t t, std::size_t d) const;

  /// LSB fill that produced the substitution bitvector at (t, d).
  bool substitution_fill(std::size_t t, std::size_t d) const noexcept;

  /// Bits in use for the current window (rows x text x kinds x width).
  std::size_t stored_bits() const noexcept { return text_len_ * rows_ * kinds_ * width_; }
  /// Largest allocation reached so far, in bits.
  std::size_t high_water_bits() const noexcept { return high_water_words_ * detail::kWordBits<Word>; }

 private:
  std::size_t index(IntermediateKind kind, std::size_t t, std::size_t d) const noexcept {
    return ((d * text_len_ + t) * kinds_ + static_cast<std::size_t>(kind)) * words_;
  }

  std::vector<Word> data_;
  std::size_t text_len_ = 0;
  std::size_t width_ = 0;
  std::size_t words_ = 0;
  std::size_t kinds_ = 3;
  std::size_t rows_ = 0;
  std::size_t high_water_words_ = 0;
  bool anchored_end_ = false;
};

using IntermediateStore = BasicIntermediateStore<std::uint64_t>;

struct WindowOptions {
  AmbiguityPolicy ambiguity = AmbiguityPolicy::kMismatch;
  bool anchored_end = false;       // sub-text must be consumed completely
  bool full_rows = false;          // compute every d <= k_w, not just up to the distance
  bool store_substitution = false; // debug: keep all four intermediates
};

/// Owns the working buffers for repeated searches and windows. One engine
/// per worker; not safe for concurrent use.
template <std::unsigned_integral Word>
class BasicDcEngine {
 public:
  MatchResult search(std::span<const Code> text, std::span<const Code> pattern, std::size_t k,
                     const DcOptions& options = {});

  /// Runs the recurrence over a window and fills the intermediate store.
  /// Returns the smallest d whose R[d] has an MSB of 0 after the whole
  /// sub-text; throws WindowUnalignable when no d <= k_w qualifies.
  /// Rows are computed one distance at a time and, unless `full_rows`, stop
  /// at that distance: traceback never reads a row above it.
  std::size_t window(std::span<const Code> sub_text, std::span<const Code> sub_pattern,
                     std::size_t k_w, const WindowOptions& options = {});

  const BasicIntermediateStore<Word>& store() const noexcept { return store_; }

 private:
  BasicIntermediateStore<Word> store_;
  std::vector<Word> prev_row_;
  std::vector<Word> cur_row_;
};

using DcEngine = BasicDcEngine<std::uint64_t>;

MatchResult search(const EncodedSequence& text, const EncodedSequence& pattern, std::size_t k,
                   const DcOptions& options = {});

/// Splits the text into chunks of `chunk_len` overlapping by m+k symbols,
/// searches them on `threads` workers and merges the candidates. Same
/// result as `search`.
MatchResult search_chunked(const EncodedSequence& text, const EncodedSequence& pattern,
                           std::size_t k, std::size_t chunk_len, const DcOptions& options = {},
                           unsigned threads = 1);

struct WindowDc {
  IntermediateStore store;
  std::size_t edit_dist = 0;
};

WindowDc dc_window(const EncodedSequence& sub_text, const EncodedSequence& sub_pattern,
                   std::size_t k_w, const WindowOptions& options = {});

}  // namespace bitalign
