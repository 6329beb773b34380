#pragma once

// Reference implementations used as ground truth in tests: quadratic
// dynamic programming aligners, a banded variant for long inputs, and a
// small mutation simulator. Nothing here shares code with the bit-parallel
// engines.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bitalign/scoring.hpp"
#include "bitalign/sequence.hpp"

namespace bitalign::oracle {

/// Edit operations read pattern -> text: I is a pattern symbol with no text
/// counterpart, D a text symbol with no pattern counterpart.
struct DpAlignment {
  long value = 0;  // distance for unit cost, score otherwise
  std::vector<EditOp> ops;
};

std::size_t global_distance(std::span<const Code> pattern, std::span<const Code> text);
DpAlignment dp_global(std::span<const Code> pattern, std::span<const Code> text);
/// Affine-gap maximum score; a gap of length L scores open + (L-1) * extend.
DpAlignment dp_global(std::span<const Code> pattern, std::span<const Code> text,
                      const ScoringScheme& scoring);

DpAlignment dp_global(const EncodedSequence& pattern, const EncodedSequence& text);
DpAlignment dp_global(const EncodedSequence& pattern, const EncodedSequence& text,
                      const ScoringScheme& scoring);

struct SemiGlobal {
  std::size_t distance = 0;
  std::size_t start = 0;  // smallest start of an optimal text substring
  std::size_t end = 0;    // smallest exclusive end of an optimal text substring
};

/// Minimum global distance between the pattern and any substring of text.
SemiGlobal dp_semiglobal(std::span<const Code> pattern, std::span<const Code> text);
SemiGlobal dp_semiglobal(const EncodedSequence& pattern, const EncodedSequence& text);

struct Banded {
  std::size_t distance = 0;
  std::size_t band = 0;
  bool certified = false;  // distance <= band, so no path outside the band can beat it
};

/// Global distance restricted to diagonals within `band` of the corridor
/// joining the two corners.
Banded dp_global_banded(std::span<const Code> pattern, std::span<const Code> text, std::size_t band);
/// Doubles the band from `initial_band` until the result is certified.
Banded dp_global_banded_auto(std::span<const Code> pattern, std::span<const Code> text,
                             std::size_t initial_band = 32);

/// Portable deterministic generator; the standard distributions are
/// implementation-defined, so draws are mapped by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
  double uniform();                          // [0, 1), 53-bit resolution
  std::size_t range(std::size_t lo, std::size_t hi);  // inclusive
  Code base() { return static_cast<Code>(below(4)); }

 private:
  std::mt19937_64 engine_;
};

std::vector<Code> random_dna(std::size_t length, Rng& rng);

struct MutationProfile {
  double substitution_rate = 0.0;
  double insertion_rate = 0.0;
  double deletion_rate = 0.0;
  std::uint64_t seed = 0;

  static MutationProfile uniform(double total_rate, std::uint64_t seed);
  /// Long-read shape: 10% substitutions, 60% insertions, 30% deletions.
  static MutationProfile long_read(double total_rate, std::uint64_t seed);
  void validate() const;
};

struct MutationEvent {
  enum class Kind : std::uint8_t { kSubstitution, kInsertion, kDeletion };
  Kind kind;
  std::size_t position;  // index into the input sequence
  Code base;             // new base for substitutions and insertions

  bool operator==(const MutationEvent&) const = default;
};

struct Mutated {
  std::vector<Code> sequence;
  std::vector<MutationEvent> log;
};

/// Visits each input position once: substitute, insert a random base before
/// it, delete it, or keep it, with the profile's probabilities.
Mutated mutate(std::span<const Code> input, const MutationProfile& profile);
Mutated mutate(std::span<const Code> input, const MutationProfile& profile, Rng& rng);

std::vector<Code> replay_mutations(std::span<const Code> input, std::span<const MutationEvent> log);

/// Applies exactly `edits` events at distinct input positions, each a
/// substitution, insertion or deletion with equal probability.
Mutated plant_edits(std::span<const Code> input, std::size_t edits, Rng& rng);

struct SimulatedPair {
  std::vector<Code> read;
  std::vector<Code> region;
  std::size_t offset = 0;  // region start in the reference, when there is one
  std::size_t planted = 0;
};

/// Equal-length pairs for filter experiments: the planted edit count is
/// drawn uniformly from [0, 2 * threshold + 2], the read is cut back to
/// `length` symbols.
std::vector<SimulatedPair> simulate_filter_pairs(std::size_t count, std::size_t length,
                                                 std::size_t threshold, std::uint64_t seed);

/// Reads sampled from `reference`, mutated at `error_rate` split evenly
/// over substitutions, insertions and deletions. Each region is the read's
/// source window extended by ceil(rate * m) symbols.
std::vector<SimulatedPair> simulate_read_pairs(std::span<const Code> reference, std::size_t count,
                                               std::size_t min_len, std::size_t max_len,
                                               double error_rate, std::uint64_t seed);

}  // namespace bitalign::oracle
