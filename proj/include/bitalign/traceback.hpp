#pragma once

// Windowed traceback. Each window runs the distance recurrence over a
// W x W tile, then walks the stored intermediates from the window's first
// text symbol, emitting one operation per step until W-O symbols of the
// pattern or the text have been committed. The next window starts where
// the walk stopped.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "bitalign/cigar.hpp"
#include "bitalign/distance.hpp"
#include "bitalign/scoring.hpp"
#include "bitalign/sequence.hpp"

namespace bitalign {

struct WindowConfig {
  std::size_t window = 64;
  std::size_t overlap = 24;

  /// Throws UsageError unless 0 < overlap < window.
  void validate() const;
  std::size_t commit() const noexcept { return window - overlap; }
};

/// pattern_i counts down from width-1 (the MSB side is pattern[0]); -1 once
/// the sub-pattern is exhausted.
struct TracebackCursor {
  std::ptrdiff_t pattern_i = 0;
  std::size_t text_i = 0;
  std::size_t cur_error = 0;
  std::size_t pattern_consumed = 0;
  std::size_t text_consumed = 0;
  std::optional<EditOp> prev;

  bool operator==(const TracebackCursor&) const = default;
};

/// Applies one operation's index transition; throws InternalConsistencyError
/// when an edit is needed with no errors left.
TracebackCursor advance(TracebackCursor cursor, EditOp op);

struct TracebackStep {
  TracebackCursor before;
  EditOp op;
  bool insertion_extend_open = false;  // prev was I and the insertion bit was 0
  bool deletion_extend_open = false;   // prev was D and the deletion bit was 0
};

using StepObserver = std::function<void(const TracebackStep&)>;

struct WindowTraceback {
  std::vector<EditOp> ops;
  std::size_t pattern_consumed = 0;
  std::size_t text_consumed = 0;
  std::size_t edits = 0;
  std::size_t tail_insertions = 0;  // emitted after the sub-text ran out
};

/// Walks one window. `limit` caps both consumption counters (0 lifts the
/// cap, used for the last window). `prev` carries the last operation of the
/// previous window so an open gap can be extended across the boundary.
template <std::unsigned_integral Word>
WindowTraceback tb_window(const BasicIntermediateStore<Word>& store, std::size_t window_edit_dist,
                          std::size_t limit, const CaseOrder& order,
                          std::optional<EditOp> prev = std::nullopt,
                          const StepObserver* observer = nullptr);

WindowTraceback tb_window(const IntermediateStore& store, std::size_t window_edit_dist,
                          const WindowConfig& cfg, const ScoringScheme& scoring,
                          bool final_window = false);

struct AlignOptions {
  WindowConfig window;
  ScoringScheme scoring;
  std::size_t k_w = 0;  // 0: use the window size
  // Charge for unaligned text at the end of the region, so the distance is
  // global. Off for read alignment, where the region carries k spare symbols.
  bool global = false;
  // Largest pattern tail that may be closed with insertions once the text
  // runs out; longer tails raise AlignmentFailed.
  std::size_t max_tail_insertions = std::numeric_limits<std::size_t>::max();
  bool materialize = true;  // build the CIGAR; counts and score are always kept
  AmbiguityPolicy ambiguity = AmbiguityPolicy::kMismatch;
};

struct Alignment {
  std::size_t start_loc = 0;
  std::size_t edit_dist = 0;
  long score = 0;
  Cigar cigar;
  std::size_t pattern_len = 0;
  std::size_t text_consumed = 0;
  std::size_t windows = 0;
  std::size_t peak_store_bits = 0;
  std::array<std::size_t, 4> op_counts{};  // M, S, I, D

  std::size_t count(EditOp op) const noexcept;
};

/// Owns a distance engine and reuses its buffers across alignments. One per
/// worker.
template <std::unsigned_integral Word>
class BasicTracebackAligner {
 public:
  Alignment align(std::span<const Code> text_region, std::span<const Code> pattern,
                  const AlignOptions& options = {}, const StepObserver* observer = nullptr);

 private:
  BasicDcEngine<Word> engine_;
};

using TracebackAligner = BasicTracebackAligner<std::uint64_t>;

Alignment align_traceback(const EncodedSequence& text_region, const EncodedSequence& pattern,
                          const AlignOptions& options = {});

}  // namespace bitalign
