#include "bitalign/distance.hpp"

#include <algorithm>
#include <utility>

#include "bitalign/errors.hpp"
#include "bitalign/parallel.hpp"

namespace bitalign {

namespace {

template <std::unsigned_integral Word>
constexpr unsigned kTop = detail::kWordBits<Word> - 1;

// R[0] = (oldR[0] << 1) | PM
template <std::unsigned_integral Word>
inline void exact_row(const Word* old_same, const Word* pm, std::size_t nw, Word pad, bool fill,
                      Word* out) {
  Word carry = fill ? Word{1} : Word{0};
  for (std::size_t w = 0; w < nw; ++w) {
    const Word last = w + 1 == nw ? pad : Word{0};
    out[w] = static_cast<Word>((old_same[w] << 1) | carry | pm[w] | last);
    carry = static_cast<Word>(old_same[w] >> kTop<Word>);
  }
}

template <std::unsigned_integral Word>
struct Intermediates {
  Word* match = nullptr;
  Word* insertion = nullptr;
  Word* deletion = nullptr;
  Word* substitution = nullptr;
};

// R[d] = D & S & I & M with
//   D = oldR[d-1], S = oldR[d-1] << 1, I = R[d-1] << 1, M = (oldR[d] << 1) | PM
// computed word by word, carrying each shift across word boundaries.
template <std::unsigned_integral Word>
inline void error_row(const Word* old_prev, const Word* cur_prev, const Word* old_same,
                      const Word* pm, std::size_t nw, Word pad, bool fill_s, bool fill_i,
                      bool fill_m, Word* out, Intermediates<Word> keep) {
  Word cs = fill_s ? Word{1} : Word{0};
  Word ci = fill_i ? Word{1} : Word{0};
  Word cm = fill_m ? Word{1} : Word{0};
  for (std::size_t w = 0; w < nw; ++w) {
    const Word last = w + 1 == nw ? pad : Word{0};
    const Word del = old_prev[w];
    const Word sub = static_cast<Word>((old_prev[w] << 1) | cs | last);
    const Word ins = static_cast<Word>((cur_prev[w] << 1) | ci | last);
    const Word mat = static_cast<Word>((old_same[w] << 1) | cm | pm[w] | last);
    cs = static_cast<Word>(old_prev[w] >> kTop<Word>);
    ci = static_cast<Word>(cur_prev[w] >> kTop<Word>);
    cm = static_cast<Word>(old_same[w] >> kTop<Word>);
    out[w] = static_cast<Word>(del & sub & ins & mat);
    if (keep.match) {
      keep.match[w] = mat;
      keep.insertion[w] = ins;
      keep.deletion[w] = del;
      if (keep.substitution) keep.substitution[w] = sub;
    }
  }
}

template <std::unsigned_integral Word>
void initial_row(Word* out, std::size_t width, std::size_t d, bool literal_all_ones) {
  const std::size_t nw = detail::words_for<Word>(width);
  std::fill(out, out + nw, ~Word{0});
  if (!literal_all_ones) {
    const std::size_t cleared = std::min(d, width);
    for (std::size_t pos = 0; pos < cleared; ++pos) {
      out[pos / detail::kWordBits<Word>] &=
          static_cast<Word>(~(Word{1} << (pos % detail::kWordBits<Word>)));
    }
  }
  out[nw - 1] |= detail::padding_mask<Word>(width);
}

template <std::unsigned_integral Word>
bool msb_zero(const Word* words, std::size_t width) {
  const std::size_t pos = width - 1;
  return ((words[pos / detail::kWordBits<Word>] >> (pos % detail::kWordBits<Word>)) & Word{1}) == 0;
}

}  // namespace

// ---------------------------------------------------------------------------

template <std::unsigned_integral Word>
BasicPatternBitmasks<Word>::BasicPatternBitmasks(std::span<const Code> pattern,
                                                 AmbiguityPolicy policy) {
  if (pattern.empty()) throw UsageError("pattern must not be empty");
  for (auto& row : rows_) row = BasicBitvector<Word>(pattern.size(), true);
  for (std::size_t j = 0; j < pattern.size(); ++j) {
    for (std::size_t a = 0; a < kAlphabetSize; ++a) {
      if (symbols_match(pattern[j], static_cast<Code>(a), policy)) rows_[a].set(j, false);
    }
  }
}

PatternBitmasks build_pattern_bitmasks(const EncodedSequence& pattern, AmbiguityPolicy policy) {
  const auto codes = pattern.unpack();
  return PatternBitmasks(codes, policy);
}

template <std::unsigned_integral Word>
BasicDcState<Word> BasicDcState<Word>::initial(std::size_t width, std::size_t k,
                                               bool literal_all_ones) {
  BasicDcState state;
  state.r.reserve(k + 1);
  for (std::size_t d = 0; d <= k; ++d) {
    BasicBitvector<Word> v(width, true);
    initial_row<Word>(v.mutable_words().data(), width, d, literal_all_ones);
    state.r.push_back(v);
  }
  state.old_r = state.r;
  return state;
}

template <std::unsigned_integral Word>
void dc_step(BasicDcState<Word>& state, const BasicBitvector<Word>& pm_cur, std::size_t k,
             TextEnd end) {
  if (state.r.size() != k + 1 || state.old_r.size() != k + 1) {
    throw UsageError("state does not hold k+1 status bitvectors");
  }
  if (pm_cur.width() != state.r[0].width()) throw UsageError("bitmask width does not match state");
  std::swap(state.r, state.old_r);

  const std::size_t nw = pm_cur.word_count();
  const Word pad = pm_cur.padding();
  const Word* pm = pm_cur.words().data();
  exact_row<Word>(state.old_r[0].words().data(), pm, nw, pad, !end.free_after(0),
                  state.r[0].mutable_words().data());
  for (std::size_t d = 1; d <= k; ++d) {
    error_row<Word>(state.old_r[d - 1].words().data(), state.r[d - 1].words().data(),
                    state.old_r[d].words().data(), pm, nw, pad, !end.free_after(d - 1),
                    !end.free_here(d - 1), !end.free_after(d), state.r[d].mutable_words().data(),
                    {});
  }
}

// ---------------------------------------------------------------------------

template <std::unsigned_integral Word>
void BasicIntermediateStore<Word>::reset(std::size_t text_len, std::size_t width,
                                         bool anchored_end, bool store_substitution) {
  text_len_ = text_len;
  width_ = width;
  words_ = detail::words_for<Word>(width);
  kinds_ = store_substitution ? 4 : 3;
  anchored_end_ = anchored_end;
  rows_ = 0;
}

template <std::unsigned_integral Word>
void BasicIntermediateStore<Word>::ensure_rows(std::size_t rows) {
  const std::size_t need = rows * text_len_ * kinds_ * words_;
  if (data_.size() < need) data_.resize(need);
  high_water_words_ = std::max(high_water_words_, need);
  rows_ = std::max(rows_, rows);
}

template <std::unsigned_integral Word>
std::span<Word> BasicIntermediateStore<Word>::slot(IntermediateKind kind, std::size_t t,
                                                   std::size_t d) {
  return {data_.data() + index(kind, t, d), words_};
}

template <std::unsigned_integral Word>
std::span<const Word> BasicIntermediateStore<Word>::slot(IntermediateKind kind, std::size_t t,
                                                         std::size_t d) const {
  if (t >= text_len_ || d >= rows_) throw UsageError("intermediate store index out of range");
  if (kind == IntermediateKind::kSubstitution && kinds_ != 4) {
    throw UsageError("substitution bitvectors are not stored");
  }
  return {data_.data() + index(kind, t, d), words_};
}

template <std::unsigned_integral Word>
bool BasicIntermediateStore<Word>::substitution_fill(std::size_t t, std::size_t d) const noexcept {
  if (d == 0) return true;
  const TextEnd end{anchored_end_, text_len_ - 1 - t};
  return !end.free_after(d - 1);
}

template <std::unsigned_integral Word>
bool BasicIntermediateStore<Word>::bit(IntermediateKind kind, std::size_t t, std::size_t d,
                                       std::size_t j) const {
  if (kind == IntermediateKind::kSubstitution && kinds_ != 4) {
    if (d == 0) return true;
    if (j + 1 < width_) return bit(IntermediateKind::kDeletion, t, d, j + 1);
    return substitution_fill(t, d);
  }
  const auto words = slot(kind, t, d);
  const std::size_t pos = width_ - 1 - j;
  return (words[pos / detail::kWordBits<Word>] >> (pos % detail::kWordBits<Word>)) & Word{1};
}

template <std::unsigned_integral Word>
BasicBitvector<Word> BasicIntermediateStore<Word>::bitvector(IntermediateKind kind, std::size_t t,
                                                             std::size_t d) const {
  if (kind == IntermediateKind::kSubstitution && kinds_ != 4) {
    return shift_left_one(bitvector(IntermediateKind::kDeletion, t, d), substitution_fill(t, d));
  }
  BasicBitvector<Word> v(width_, true);
  const auto words = slot(kind, t, d);
  std::copy(words.begin(), words.end(), v.mutable_words().begin());
  return v;
}

// ---------------------------------------------------------------------------

template <std::unsigned_integral Word>
MatchResult BasicDcEngine<Word>::search(std::span<const Code> text, std::span<const Code> pattern,
                                        std::size_t k, const DcOptions& options) {
  if (pattern.empty() || text.empty()) throw UsageError("search needs a non-empty text and pattern");
  if (k > pattern.size()) throw UsageError("edit threshold k exceeds the pattern length");
  MatchResult best;

  const BasicPatternBitmasks<Word> pm(pattern, options.ambiguity);
  auto state = BasicDcState<Word>::initial(pattern.size(), k, options.literal_all_ones_init);
  const std::size_t n = text.size();
  for (std::size_t i = n; i-- > 0;) {
    dc_step(state, pm[text[i]], k, TextEnd{options.anchor_text_ends, n - 1 - i});
    if (options.anchor_text_ends && i != 0) continue;
    for (std::size_t d = 0; d <= k; ++d) {
      if (state.r[d].msb_is_zero()) {
        // i only decreases, so an equal distance here is a smaller startLoc.
        if (!best.found || d <= best.edit_dist) best = {true, i, d};
        break;
      }
    }
    if (options.early_exit && best.found) break;
  }
  return best;
}

template <std::unsigned_integral Word>
std::size_t BasicDcEngine<Word>::window(std::span<const Code> sub_text,
                                        std::span<const Code> sub_pattern, std::size_t k_w,
                                        const WindowOptions& options) {
  if (sub_text.empty() || sub_pattern.empty()) throw UsageError("window needs non-empty inputs");
  const std::size_t n = sub_text.size();
  const std::size_t m = sub_pattern.size();
  const std::size_t nw = detail::words_for<Word>(m);
  const Word pad = detail::padding_mask<Word>(m);
  const BasicPatternBitmasks<Word> pm(sub_pattern, options.ambiguity);

  store_.reset(n, m, options.anchored_end, options.store_substitution);
  prev_row_.assign((n + 1) * nw, ~Word{0});
  cur_row_.assign((n + 1) * nw, ~Word{0});

  using K = IntermediateKind;
  std::optional<std::size_t> dist;
  for (std::size_t d = 0; d <= k_w; ++d) {
    store_.ensure_rows(d + 1);
    Word* cur = cur_row_.data();
    const Word* prev = prev_row_.data();
    initial_row<Word>(cur + n * nw, m, d, false);
    for (std::size_t i = n; i-- > 0;) {
      const TextEnd end{options.anchored_end, n - 1 - i};
      const Word* pmw = pm[sub_text[i]].words().data();
      Word* out = cur + i * nw;
      if (d == 0) {
        exact_row<Word>(cur + (i + 1) * nw, pmw, nw, pad, !end.free_after(0), out);
        std::copy(out, out + nw, store_.slot(K::kMatch, i, 0).begin());
        std::ranges::fill(store_.slot(K::kInsertion, i, 0), ~Word{0});
        std::ranges::fill(store_.slot(K::kDeletion, i, 0), ~Word{0});
        if (options.store_substitution) std::ranges::fill(store_.slot(K::kSubstitution, i, 0), ~Word{0});
      } else {
        Intermediates<Word> keep{store_.slot(K::kMatch, i, d).data(),
                                 store_.slot(K::kInsertion, i, d).data(),
                                 store_.slot(K::kDeletion, i, d).data(),
                                 options.store_substitution
                                     ? store_.slot(K::kSubstitution, i, d).data()
                                     : nullptr};
        error_row<Word>(prev + (i + 1) * nw, prev + i * nw, cur + (i + 1) * nw, pmw, nw, pad,
                        !end.free_after(d - 1), !end.free_here(d - 1), !end.free_after(d), out,
                        keep);
      }
    }
    if (!dist && msb_zero<Word>(cur, m)) {
      dist = d;
      if (!options.full_rows) break;
    }
    std::swap(prev_row_, cur_row_);
  }
  if (!dist) throw WindowUnalignable("window has no alignment within the distance limit");
  return *dist;
}

// ---------------------------------------------------------------------------

MatchResult search(const EncodedSequence& text, const EncodedSequence& pattern, std::size_t k,
                   const DcOptions& options) {
  const auto t = text.unpack();
  const auto p = pattern.unpack();
  DcEngine engine;
  return engine.search(t, p, k, options);
}

MatchResult search_chunked(const EncodedSequence& text, const EncodedSequence& pattern,
                           std::size_t k, std::size_t chunk_len, const DcOptions& options,
                           unsigned threads) {
  const std::size_t m = pattern.size();
  const std::size_t overlap = m + k;
  if (chunk_len <= overlap) throw UsageError("chunk length must exceed m + k");
  if (options.anchor_text_ends) throw UsageError("anchored search cannot be chunked");
  if (pattern.empty() || text.empty()) throw UsageError("search needs a non-empty text and pattern");

  const auto t = text.unpack();
  const auto p = pattern.unpack();
  const std::size_t n = t.size();
  std::vector<std::size_t> starts;
  for (std::size_t s = 0;; s += chunk_len - overlap) {
    starts.push_back(s);
    if (s + chunk_len >= n) break;
  }

  std::vector<MatchResult> results(starts.size());
  parallel_for(starts.size(), threads, [&](std::size_t c, unsigned) {
    const std::size_t s = starts[c];
    const std::size_t len = std::min(chunk_len, n - s);
    DcEngine engine;
    auto r = engine.search(std::span<const Code>(t).subspan(s, len), p, k, options);
    if (r.found) r.start_loc += s;
    results[c] = r;
  });

  MatchResult best;
  for (const auto& r : results) {
    if (!r.found) continue;
    if (!best.found || r.edit_dist < best.edit_dist ||
        (r.edit_dist == best.edit_dist && r.start_loc < best.start_loc)) {
      best = r;
    }
  }
  return best;
}

WindowDc dc_window(const EncodedSequence& sub_text, const EncodedSequence& sub_pattern,
                   std::size_t k_w, const WindowOptions& options) {
  const auto t = sub_text.unpack();
  const auto p = sub_pattern.unpack();
  DcEngine engine;
  WindowDc out;
  out.edit_dist = engine.window(t, p, k_w, options);
  out.store = engine.store();
  return out;
}

template class BasicPatternBitmasks<std::uint64_t>;
template class BasicPatternBitmasks<std::uint8_t>;
template struct BasicDcState<std::uint64_t>;
template struct BasicDcState<std::uint8_t>;
template void dc_step<std::uint64_t>(BasicDcState<std::uint64_t>&, const BasicBitvector<std::uint64_t>&,
                                     std::size_t, TextEnd);
template void dc_step<std::uint8_t>(BasicDcState<std::uint8_t>&, const BasicBitvector<std::uint8_t>&,
                                    std::size_t, TextEnd);
template class BasicIntermediateStore<std::uint64_t>;
template class BasicIntermediateStore<std::uint8_t>;
template class BasicDcEngine<std::uint64_t>;
template class BasicDcEngine<std::uint8_t>;

}  // namespace bitalign
