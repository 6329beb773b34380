#include "bitalign/traceback.hpp"

#include <algorithm>

#include "bitalign/errors.hpp"

namespace bitalign {

namespace {

std::size_t op_index(EditOp op) {
  switch (op) {
    case EditOp::kMatch: return 0;
    case EditOp::kSubstitution: return 1;
    case EditOp::kInsertion: return 2;
    case EditOp::kDeletion: return 3;
  }
  return 0;
}

IntermediateKind kind_of(EditOp op) {
  switch (op) {
    case EditOp::kMatch: return IntermediateKind::kMatch;
    case EditOp::kSubstitution: return IntermediateKind::kSubstitution;
    case EditOp::kInsertion: return IntermediateKind::kInsertion;
    case EditOp::kDeletion: return IntermediateKind::kDeletion;
  }
  return IntermediateKind::kMatch;
}

// Accumulates counts and score as operations arrive.
class OpSink {
 public:
  OpSink(const ScoringScheme& scoring, bool materialize, Alignment& out)
      : scoring_(scoring), materialize_(materialize), out_(out) {}

  void push(EditOp op, std::size_t count = 1) {
    if (count == 0) return;
    out_.op_counts[op_index(op)] += count;
    const long n = static_cast<long>(count);
    switch (op) {
      case EditOp::kMatch: out_.score += n * scoring_.match; break;
      case EditOp::kSubstitution: out_.score += n * scoring_.substitution; break;
      case EditOp::kInsertion:
      case EditOp::kDeletion:
        out_.score += (has_last_ && last_ == op ? n * scoring_.gap_extend
                                   : scoring_.gap_open + (n - 1) * scoring_.gap_extend);
        break;
    }
    if (op != EditOp::kMatch) out_.edit_dist += count;
    if (op != EditOp::kInsertion) out_.text_consumed += count;
    if (materialize_) out_.cigar.push(op, static_cast<std::uint32_t>(count));
    last_ = op;
    has_last_ = true;
  }

  std::optional<EditOp> last() const noexcept {
    return has_last_ ? std::optional<EditOp>(last_) : std::nullopt;
  }

 private:
  const ScoringScheme& scoring_;
  bool materialize_;
  Alignment& out_;
  EditOp last_ = EditOp::kMatch;
  bool has_last_ = false;
};

}  // namespace

void WindowConfig::validate() const {
  if (overlap == 0 || overlap >= window) {
    throw UsageError("window overlap must satisfy 0 < O < W (got W=" + std::to_string(window) +
                     ", O=" + std::to_string(overlap) + ")");
  }
}

TracebackCursor advance(TracebackCursor c, EditOp op) {
  if (op != EditOp::kMatch) {
    if (c.cur_error == 0) throw InternalConsistencyError("traceback needs an edit with none left");
    --c.cur_error;
  }
  if (op != EditOp::kDeletion) {
    --c.pattern_i;
    ++c.pattern_consumed;
  }
  if (op != EditOp::kInsertion) {
    ++c.text_i;
    ++c.text_consumed;
  }
  c.prev = op;
  return c;
}

std::size_t Alignment::count(EditOp op) const noexcept { return op_counts[op_index(op)]; }

template <std::unsigned_integral Word>
WindowTraceback tb_window(const BasicIntermediateStore<Word>& store, std::size_t window_edit_dist,
                          std::size_t limit, const CaseOrder& order, std::optional<EditOp> prev,
                          const StepObserver* observer) {
  const std::size_t width = store.width();
  const std::size_t n = store.text_len();
  if (window_edit_dist >= store.rows()) {
    throw InternalConsistencyError("window distance exceeds the stored rows");
  }
  TracebackCursor c{static_cast<std::ptrdiff_t>(width) - 1, 0, window_edit_dist, 0, 0, prev};
  WindowTraceback out;
  auto emit = [&](EditOp op) {
    c = advance(c, op);
    out.ops.push_back(op);
    if (op != EditOp::kMatch) ++out.edits;
  };
  // Bit j counts from the MSB; the cursor's pattern_i counts from the LSB.
  auto zero = [&](EditOp op) {
    if (op != EditOp::kMatch && c.cur_error == 0) return false;
    const std::size_t j = width - 1 - static_cast<std::size_t>(c.pattern_i);
    return !store.bit(kind_of(op), c.text_i, c.cur_error, j);
  };

  for (;;) {
    if (limit != 0 && (c.pattern_consumed >= limit || c.text_consumed >= limit)) break;
    if (c.pattern_i < 0) {
      while (store.anchored_end() && c.text_i < n) emit(EditOp::kDeletion);
      break;
    }
    if (c.text_i == n) {
      while (c.pattern_i >= 0) {
        emit(EditOp::kInsertion);
        ++out.tail_insertions;
      }
      break;
    }
    const bool ins_ext = c.prev == EditOp::kInsertion && zero(EditOp::kInsertion);
    const bool del_ext = c.prev == EditOp::kDeletion && zero(EditOp::kDeletion);
    std::optional<EditOp> pick;
    if (ins_ext) {
      pick = EditOp::kInsertion;
    } else if (del_ext) {
      pick = EditOp::kDeletion;
    } else {
      for (EditOp op : order) {
        if (zero(op)) {
          pick = op;
          break;
        }
      }
    }
    if (!pick) {
      throw InternalConsistencyError("no traceback case applies at text " + std::to_string(c.text_i) +
                                     ", pattern bit " + std::to_string(c.pattern_i) + ", error " +
                                     std::to_string(c.cur_error));
    }
    if (observer) (*observer)(TracebackStep{c, *pick, ins_ext, del_ext});
    emit(*pick);
  }
  out.pattern_consumed = c.pattern_consumed;
  out.text_consumed = c.text_consumed;
  return out;
}

WindowTraceback tb_window(const IntermediateStore& store, std::size_t window_edit_dist,
                          const WindowConfig& cfg, const ScoringScheme& scoring, bool final_window) {
  cfg.validate();
  return tb_window(store, window_edit_dist, final_window ? 0 : cfg.commit(), order_cases(scoring));
}

template <std::unsigned_integral Word>
Alignment BasicTracebackAligner<Word>::align(std::span<const Code> text,
                                             std::span<const Code> pattern,
                                             const AlignOptions& options,
                                             const StepObserver* observer) {
  options.window.validate();
  if (pattern.empty()) throw UsageError("pattern must not be empty");
  const std::size_t W = options.window.window;
  const std::size_t k_w = options.k_w == 0 ? W : options.k_w;
  const CaseOrder order = order_cases(options.scoring);
  const std::size_t m = pattern.size();
  const std::size_t n = text.size();

  Alignment result;
  result.pattern_len = m;
  OpSink sink(options.scoring, options.materialize, result);

  std::size_t cur_p = 0;
  std::size_t cur_t = 0;
  std::size_t tail = 0;
  while (cur_p < m && cur_t < n) {
    const std::size_t rem_p = m - cur_p;
    const std::size_t rem_t = n - cur_t;
    const bool final_window = rem_p <= W && (!options.global || rem_t <= W);
    const auto sub_p = pattern.subspan(cur_p, std::min(W, rem_p));
    const auto sub_t = text.subspan(cur_t, std::min(W, rem_t));

    WindowOptions wo;
    wo.ambiguity = options.ambiguity;
    wo.anchored_end = options.global && final_window;
    const std::size_t dist = engine_.window(sub_t, sub_p, k_w, wo);
    result.peak_store_bits = std::max(result.peak_store_bits, engine_.store().stored_bits());
    ++result.windows;

    const auto tb = tb_window(engine_.store(), dist, final_window ? 0 : options.window.commit(),
                              order, sink.last(), observer);
    for (EditOp op : tb.ops) sink.push(op);
    cur_p += tb.pattern_consumed;
    cur_t += tb.text_consumed;
    tail = tb.tail_insertions;
  }

  tail += m - cur_p;
  if (!options.global && tail > options.max_tail_insertions) {
    throw AlignmentFailed("text region exhausted with " + std::to_string(tail) +
                          " pattern symbols left");
  }
  sink.push(EditOp::kInsertion, m - cur_p);
  if (options.global && cur_t < n) sink.push(EditOp::kDeletion, n - cur_t);
  return result;
}

Alignment align_traceback(const EncodedSequence& text_region, const EncodedSequence& pattern,
                          const AlignOptions& options) {
  const auto t = text_region.unpack();
  const auto p = pattern.unpack();
  TracebackAligner aligner;
  return aligner.align(t, p, options);
}

template WindowTraceback tb_window<std::uint64_t>(const BasicIntermediateStore<std::uint64_t>&,
                                                  std::size_t, std::size_t, const CaseOrder&,
                                                  std::optional<EditOp>, const StepObserver*);
template WindowTraceback tb_window<std::uint8_t>(const BasicIntermediateStore<std::uint8_t>&,
                                                 std::size_t, std::size_t, const CaseOrder&,
                                                 std::optional<EditOp>, const StepObserver*);
template class BasicTracebackAligner<std::uint64_t>;
template class BasicTracebackAligner<std::uint8_t>;

}  // namespace bitalign
