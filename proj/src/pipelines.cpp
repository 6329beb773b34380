#include "bitalign/pipelines.hpp"

#include <cmath>

#include "bitalign/errors.hpp"
#include "bitalign/parallel.hpp"

namespace bitalign {

const char* to_string(PairStatus status) noexcept {
  switch (status) {
    case PairStatus::kOk: return "ok";
    case PairStatus::kUsage: return "usage_error";
    case PairStatus::kWindowUnalignable: return "window_unalignable";
    case PairStatus::kAlignmentFailed: return "alignment_failed";
    case PairStatus::kInternal: return "internal_error";
  }
  return "unknown";
}

std::size_t EditBudget::resolve(std::size_t read_len) const {
  if (k) return *k;
  if (error_rate) {
    if (*error_rate < 0 || *error_rate > 1) throw UsageError("error rate must be in [0, 1]");
    return static_cast<std::size_t>(std::ceil(*error_rate * static_cast<double>(read_len) - 1e-9));
  }
  throw UsageError("either k or an error rate is required");
}

Alignment align_read(const CandidatePair& pair, std::size_t k, const WindowConfig& cfg,
                     const ScoringScheme& scoring, TracebackAligner* aligner,
                     AmbiguityPolicy ambiguity) {
  if (pair.read.empty()) throw UsageError("read is empty");
  if (pair.ref_region.empty()) throw UsageError("reference region is empty");
  if (k > pair.read.size()) throw UsageError("k exceeds the read length");
  AlignOptions opts;
  opts.window = cfg;
  opts.scoring = scoring;
  opts.max_tail_insertions = k;
  opts.ambiguity = ambiguity;
  const auto text = pair.ref_region.unpack();
  const auto pattern = pair.read.unpack();
  TracebackAligner local;
  Alignment a = (aligner ? *aligner : local).align(text, pattern, opts);
  a.start_loc = pair.ref_offset;
  return a;
}

namespace {

template <class Fn>
PairStatus guarded(std::string& error, Fn&& fn) {
  try {
    fn();
    return PairStatus::kOk;
  } catch (const UsageError& e) {
    error = e.what();
    return PairStatus::kUsage;
  } catch (const WindowUnalignable& e) {
    error = e.what();
    return PairStatus::kWindowUnalignable;
  } catch (const AlignmentFailed& e) {
    error = e.what();
    return PairStatus::kAlignmentFailed;
  } catch (const InternalConsistencyError& e) {
    error = e.what();
    return PairStatus::kInternal;
  }
}

}  // namespace

std::vector<AlignRecord> align_batch(std::span<const CandidatePair> pairs, const ReadAlignConfig& cfg,
                                     unsigned threads) {
  cfg.window.validate();
  std::vector<AlignRecord> out(pairs.size());
  const unsigned workers = std::max(1u, threads);
  std::vector<TracebackAligner> aligners(workers);
  parallel_for(pairs.size(), workers, [&](std::size_t i, unsigned w) {
    auto& rec = out[i];
    rec.pair_id = pairs[i].pair_id;
    rec.status = guarded(rec.error, [&] {
      rec.k = cfg.budget.resolve(pairs[i].read.size());
      rec.alignment = align_read(pairs[i], rec.k, cfg.window, cfg.scoring, &aligners[w], cfg.ambiguity);
    });
  });
  return out;
}

FilterDecision prealign_filter(const CandidatePair& pair, const FilterOptions& options,
                               DcEngine* engine) {
  FilterDecision d;
  d.pair_id = pair.pair_id;
  d.threshold = options.threshold;
  d.status = guarded(d.error, [&] {
    if (pair.read.empty() || pair.ref_region.empty()) throw UsageError("pair has an empty sequence");
    if (options.threshold > pair.read.size()) throw UsageError("threshold exceeds the read length");
    DcOptions dc;
    dc.ambiguity = options.ambiguity;
    dc.anchor_text_ends = options.quirk_correction;
    const auto text = pair.ref_region.unpack();
    const auto pattern = pair.read.unpack();
    DcEngine local;
    const auto r = (engine ? *engine : local).search(text, pattern, options.threshold, dc);
    d.estimated_dist = r.found ? r.edit_dist : options.threshold + 1;
    d.accepted = d.estimated_dist <= options.threshold;
  });
  if (d.status != PairStatus::kOk) {
    d.estimated_dist = options.threshold + 1;
    d.accepted = false;
  }
  return d;
}

std::vector<FilterDecision> prealign_filter(std::span<const CandidatePair> pairs,
                                            const FilterOptions& options, unsigned threads) {
  std::vector<FilterDecision> out(pairs.size());
  const unsigned workers = std::max(1u, threads);
  std::vector<DcEngine> engines(workers);
  parallel_for(pairs.size(), workers, [&](std::size_t i, unsigned w) {
    out[i] = prealign_filter(pairs[i], options, &engines[w]);
  });
  return out;
}

FilterMetrics filter_metrics(std::span<const FilterDecision> decisions,
                             std::span<const std::size_t> truth, std::size_t threshold) {
  if (decisions.size() != truth.size()) {
    throw UsageError("decision and ground-truth streams differ in length (" +
                     std::to_string(decisions.size()) + " vs " + std::to_string(truth.size()) + ")");
  }
  FilterMetrics m;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i].status != PairStatus::kOk) {
      ++m.skipped;
      continue;
    }
    const bool similar = truth[i] <= threshold;
    if (similar) {
      ++m.similar;
      if (!decisions[i].accepted) ++m.false_rejects;
    } else {
      ++m.dissimilar;
      if (decisions[i].accepted) ++m.false_accepts;
    }
  }
  if (m.similar) m.false_reject_rate = static_cast<double>(m.false_rejects) / static_cast<double>(m.similar);
  if (m.dissimilar) {
    m.false_accept_rate = static_cast<double>(m.false_accepts) / static_cast<double>(m.dissimilar);
  }
  return m;
}

EditDistanceResult edit_distance(std::span<const Code> a, std::span<const Code> b,
                                 const WindowConfig& cfg, bool with_cigar) {
  EditDistanceResult out;
  if (a.empty() || b.empty()) {
    out.distance = a.size() + b.size();
    if (with_cigar) {
      Cigar c;
      c.push(EditOp::kInsertion, static_cast<std::uint32_t>(a.size()));
      c.push(EditOp::kDeletion, static_cast<std::uint32_t>(b.size()));
      out.cigar = c;
    }
    return out;
  }
  AlignOptions opts;
  opts.window = cfg;
  opts.scoring = ScoringScheme::unit();
  opts.global = true;
  opts.materialize = with_cigar;
  TracebackAligner aligner;
  auto al = aligner.align(b, a, opts);
  out.distance = al.edit_dist;
  if (with_cigar) out.cigar = std::move(al.cigar);
  return out;
}

EditDistanceResult edit_distance(const EncodedSequence& a, const EncodedSequence& b,
                                 const WindowConfig& cfg, bool with_cigar) {
  return edit_distance(a.unpack(), b.unpack(), cfg, with_cigar);
}

}  // namespace bitalign
