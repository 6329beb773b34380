#pragma once

// The three end-to-end uses: read alignment against a candidate region,
// distance-only pre-alignment filtering, and windowed edit distance.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bitalign/distance.hpp"
#include "bitalign/traceback.hpp"

namespace bitalign {

struct CandidatePair {
  std::string pair_id;
  std::string read_id;
  std::string ref_id;
  std::size_t ref_offset = 0;
  EncodedSequence read;
  EncodedSequence ref_region;
};

/// Per-pair failure categories surfaced in batch output.
enum class PairStatus { kOk, kUsage, kWindowUnalignable, kAlignmentFailed, kInternal };

const char* to_string(PairStatus status) noexcept;

/// Either k directly or an error rate giving k = ceil(rate * m).
struct EditBudget {
  std::optional<std::size_t> k;
  std::optional<double> error_rate;

  std::size_t resolve(std::size_t read_len) const;
};

struct ReadAlignConfig {
  EditBudget budget;
  WindowConfig window;
  ScoringScheme scoring = ScoringScheme::unit();
  AmbiguityPolicy ambiguity = AmbiguityPolicy::kMismatch;
};

/// Aligns the read against its region; start_loc is the pair's ref_offset.
Alignment align_read(const CandidatePair& pair, std::size_t k, const WindowConfig& cfg,
                     const ScoringScheme& scoring, TracebackAligner* aligner = nullptr,
                     AmbiguityPolicy ambiguity = AmbiguityPolicy::kMismatch);

struct AlignRecord {
  std::string pair_id;
  PairStatus status = PairStatus::kOk;
  std::string error;
  std::size_t k = 0;
  Alignment alignment;
};

/// Output order equals input order for any thread count.
std::vector<AlignRecord> align_batch(std::span<const CandidatePair> pairs, const ReadAlignConfig& cfg,
                                     unsigned threads = 1);

struct FilterOptions {
  std::size_t threshold = 5;
  // Charge for skipped flanking text, so the estimate is the global distance
  // of the pair rather than the best placement of the read inside it.
  bool quirk_correction = false;
  AmbiguityPolicy ambiguity = AmbiguityPolicy::kMismatch;
};

struct FilterDecision {
  std::string pair_id;
  std::size_t estimated_dist = 0;  // threshold + 1 when nothing was found
  bool accepted = false;
  std::size_t threshold = 0;
  PairStatus status = PairStatus::kOk;
  std::string error;
};

FilterDecision prealign_filter(const CandidatePair& pair, const FilterOptions& options,
                               DcEngine* engine = nullptr);
std::vector<FilterDecision> prealign_filter(std::span<const CandidatePair> pairs,
                                            const FilterOptions& options, unsigned threads = 1);

struct FilterMetrics {
  std::size_t similar = 0;     // truth <= threshold
  std::size_t dissimilar = 0;  // truth > threshold
  std::size_t false_accepts = 0;
  std::size_t false_rejects = 0;
  std::size_t skipped = 0;  // decisions carrying an error
  double false_accept_rate = 0.0;
  double false_reject_rate = 0.0;
};

/// Throws UsageError when the two streams differ in length.
FilterMetrics filter_metrics(std::span<const FilterDecision> decisions,
                             std::span<const std::size_t> truth, std::size_t threshold);

struct EditDistanceResult {
  std::size_t distance = 0;
  std::optional<Cigar> cigar;
};

/// Windowed global distance of `a` (pattern) against `b` (text) with unit
/// costs. An upper bound on the true distance; exact within one window.
EditDistanceResult edit_distance(const EncodedSequence& a, const EncodedSequence& b,
                                 const WindowConfig& cfg = {}, bool with_cigar = false);
EditDistanceResult edit_distance(std::span<const Code> a, std::span<const Code> b,
                                 const WindowConfig& cfg = {}, bool with_cigar = false);

}  // namespace bitalign
