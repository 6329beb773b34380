#include "bitalign/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bitalign/errors.hpp"

namespace bitalign::oracle {

namespace {

inline std::size_t sub_cost(Code a, Code b) {
  return symbols_match(a, b, AmbiguityPolicy::kMismatch) ? 0 : 1;
}

}  // namespace

std::size_t global_distance(std::span<const Code> p, std::span<const Code> t) {
  std::vector<std::size_t> prev(t.size() + 1);
  std::vector<std::size_t> cur(t.size() + 1);
  for (std::size_t j = 0; j <= t.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= t.size(); ++j) {
      cur[j] = std::min({prev[j - 1] + sub_cost(p[i - 1], t[j - 1]), prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[t.size()];
}

DpAlignment dp_global(std::span<const Code> p, std::span<const Code> t) {
  const std::size_t m = p.size();
  const std::size_t n = t.size();
  const std::size_t cols = n + 1;
  std::vector<std::uint32_t> c((m + 1) * cols);
  for (std::size_t j = 0; j <= n; ++j) c[j] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= m; ++i) {
    c[i * cols] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= n; ++j) {
      c[i * cols + j] = std::min({c[(i - 1) * cols + j - 1] +
                                      static_cast<std::uint32_t>(sub_cost(p[i - 1], t[j - 1])),
                                  c[(i - 1) * cols + j] + 1, c[i * cols + j - 1] + 1});
    }
  }
  DpAlignment out;
  out.value = c[m * cols + n];
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    const auto here = c[i * cols + j];
    if (i > 0 && j > 0 &&
        here == c[(i - 1) * cols + j - 1] + sub_cost(p[i - 1], t[j - 1])) {
      out.ops.push_back(sub_cost(p[i - 1], t[j - 1]) ? EditOp::kSubstitution : EditOp::kMatch);
      --i;
      --j;
    } else if (i > 0 && here == c[(i - 1) * cols + j] + 1) {
      out.ops.push_back(EditOp::kInsertion);
      --i;
    } else {
      out.ops.push_back(EditOp::kDeletion);
      --j;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

DpAlignment dp_global(std::span<const Code> p, std::span<const Code> t,
                      const ScoringScheme& s) {
  // Gotoh: H best overall, E ends in an insertion, F ends in a deletion.
  constexpr long kNeg = std::numeric_limits<long>::min() / 4;
  const std::size_t m = p.size();
  const std::size_t n = t.size();
  const std::size_t cols = n + 1;
  std::vector<long> H((m + 1) * cols, kNeg);
  std::vector<long> E((m + 1) * cols, kNeg);
  std::vector<long> F((m + 1) * cols, kNeg);
  auto at = [cols](std::size_t i, std::size_t j) { return i * cols + j; };
  H[0] = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    E[at(i, 0)] = s.gap_open + static_cast<long>(i - 1) * s.gap_extend;
    H[at(i, 0)] = E[at(i, 0)];
  }
  for (std::size_t j = 1; j <= n; ++j) {
    F[at(0, j)] = s.gap_open + static_cast<long>(j - 1) * s.gap_extend;
    H[at(0, j)] = F[at(0, j)];
  }
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      E[at(i, j)] = std::max(H[at(i - 1, j)] + s.gap_open, E[at(i - 1, j)] + s.gap_extend);
      F[at(i, j)] = std::max(H[at(i, j - 1)] + s.gap_open, F[at(i, j - 1)] + s.gap_extend);
      const long diag = H[at(i - 1, j - 1)] + (sub_cost(p[i - 1], t[j - 1]) ? s.substitution : s.match);
      H[at(i, j)] = std::max({diag, E[at(i, j)], F[at(i, j)]});
    }
  }
  DpAlignment out;
  out.value = H[at(m, n)];
  enum { kH, kE, kF } state = kH;
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    if (state == kH) {
      if (i > 0 && j > 0) {
        const bool mismatch = sub_cost(p[i - 1], t[j - 1]) != 0;
        if (H[at(i, j)] == H[at(i - 1, j - 1)] + (mismatch ? s.substitution : s.match)) {
          out.ops.push_back(mismatch ? EditOp::kSubstitution : EditOp::kMatch);
          --i;
          --j;
          continue;
        }
      }
      state = (i > 0 && H[at(i, j)] == E[at(i, j)]) ? kE : kF;
    } else if (state == kE) {
      out.ops.push_back(EditOp::kInsertion);
      const bool extended = i > 1 && E[at(i, j)] == E[at(i - 1, j)] + s.gap_extend;
      --i;
      state = extended ? kE : kH;
    } else {
      out.ops.push_back(EditOp::kDeletion);
      const bool extended = j > 1 && F[at(i, j)] == F[at(i, j - 1)] + s.gap_extend;
      --j;
      state = extended ? kF : kH;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

DpAlignment dp_global(const EncodedSequence& pattern, const EncodedSequence& text) {
  return dp_global(pattern.unpack(), text.unpack());
}

DpAlignment dp_global(const EncodedSequence& pattern, const EncodedSequence& text,
                      const ScoringScheme& scoring) {
  return dp_global(pattern.unpack(), text.unpack(), scoring);
}

namespace {

// Last row of the free-text-prefix DP: entry j is the best distance of the
// pattern against a substring ending at j.
std::vector<std::size_t> semiglobal_last_row(std::span<const Code> p, std::span<const Code> t,
                                             bool reversed) {
  const std::size_t m = p.size();
  const std::size_t n = t.size();
  auto P = [&](std::size_t i) { return reversed ? p[m - 1 - i] : p[i]; };
  auto T = [&](std::size_t j) { return reversed ? t[n - 1 - j] : t[j]; };
  std::vector<std::size_t> prev(n + 1, 0);
  std::vector<std::size_t> cur(n + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      cur[j] = std::min({prev[j - 1] + sub_cost(P(i - 1), T(j - 1)), prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev;
}

}  // namespace

SemiGlobal dp_semiglobal(std::span<const Code> p, std::span<const Code> t) {
  if (t.empty()) throw UsageError("semi-global alignment needs a non-empty text");
  const std::size_t n = t.size();
  const auto fwd = semiglobal_last_row(p, t, false);
  const auto rev = semiglobal_last_row(p, t, true);
  SemiGlobal out;
  out.distance = *std::min_element(fwd.begin(), fwd.end());
  out.end = static_cast<std::size_t>(std::find(fwd.begin(), fwd.end(), out.distance) - fwd.begin());
  // rev[c] covers substrings starting at n - c; scan for the smallest start.
  for (std::size_t c = n + 1; c-- > 0;) {
    if (rev[c] == out.distance) {
      out.start = n - c;
      break;
    }
  }
  return out;
}

SemiGlobal dp_semiglobal(const EncodedSequence& pattern, const EncodedSequence& text) {
  return dp_semiglobal(pattern.unpack(), text.unpack());
}

Banded dp_global_banded(std::span<const Code> p, std::span<const Code> t, std::size_t band) {
  const long m = static_cast<long>(p.size());
  const long n = static_cast<long>(t.size());
  const long lo = std::min(0L, n - m) - static_cast<long>(band);
  const long hi = std::max(0L, n - m) + static_cast<long>(band);
  const long span = hi - lo + 1;
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 2;
  // Row i holds columns j = i + lo .. i + hi at offsets 0 .. span-1.
  std::vector<std::size_t> prev(span, kInf);
  std::vector<std::size_t> cur(span, kInf);
  for (long j = std::max(0L, lo); j <= std::min(n, hi); ++j) prev[j - lo] = static_cast<std::size_t>(j);
  for (long i = 1; i <= m; ++i) {
    std::fill(cur.begin(), cur.end(), kInf);
    for (long off = 0; off < span; ++off) {
      const long j = i + lo + off;
      if (j < 0 || j > n) continue;
      std::size_t best = kInf;
      if (j == 0) {
        best = static_cast<std::size_t>(i);
      } else {
        // diag: (i-1, j-1) sits at the same offset in prev
        if (prev[off] < kInf) best = prev[off] + sub_cost(p[i - 1], t[j - 1]);
        if (off > 0 && cur[off - 1] < kInf) best = std::min(best, cur[off - 1] + 1);
      }
      // up: (i-1, j) sits at offset + 1 in prev
      if (off + 1 < span && prev[off + 1] < kInf) best = std::min(best, prev[off + 1] + 1);
      cur[off] = best;
    }
    std::swap(prev, cur);
  }
  Banded out;
  out.band = band;
  out.distance = prev[n - m - lo];
  out.certified = out.distance <= band;
  return out;
}

Banded dp_global_banded_auto(std::span<const Code> p, std::span<const Code> t,
                             std::size_t initial_band) {
  std::size_t band = std::max<std::size_t>(initial_band, 1);
  for (;;) {
    auto r = dp_global_banded(p, t, band);
    if (r.certified) return r;
    band *= 2;
  }
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("Rng::below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::range(std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::vector<Code> random_dna(std::size_t length, Rng& rng) {
  std::vector<Code> out(length);
  for (auto& c : out) c = rng.base();
  return out;
}

MutationProfile MutationProfile::uniform(double total_rate, std::uint64_t seed) {
  return {total_rate / 3, total_rate / 3, total_rate / 3, seed};
}

MutationProfile MutationProfile::long_read(double total_rate, std::uint64_t seed) {
  return {total_rate * 0.1, total_rate * 0.6, total_rate * 0.3, seed};
}

void MutationProfile::validate() const {
  if (substitution_rate < 0 || insertion_rate < 0 || deletion_rate < 0) {
    throw UsageError("mutation rates must be non-negative");
  }
  if (substitution_rate + insertion_rate + deletion_rate > 1.0 + 1e-12) {
    throw UsageError("mutation rates must sum to at most 1");
  }
}

Mutated mutate(std::span<const Code> input, const MutationProfile& profile) {
  Rng rng(profile.seed);
  return mutate(input, profile, rng);
}

Mutated mutate(std::span<const Code> input, const MutationProfile& profile, Rng& rng) {
  profile.validate();
  using Kind = MutationEvent::Kind;
  Mutated out;
  out.sequence.reserve(input.size() + input.size() / 8);
  const double s = profile.substitution_rate;
  const double si = s + profile.insertion_rate;
  const double sid = si + profile.deletion_rate;
  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    const double u = rng.uniform();
    if (u < s) {
      Code b = input[pos];
      const Code from = b == kN ? kA : b;
      b = static_cast<Code>((from + 1 + rng.below(3)) % 4);
      out.sequence.push_back(b);
      out.log.push_back({Kind::kSubstitution, pos, b});
    } else if (u < si) {
      const Code b = rng.base();
      out.sequence.push_back(b);
      out.sequence.push_back(input[pos]);
      out.log.push_back({Kind::kInsertion, pos, b});
    } else if (u < sid) {
      out.log.push_back({Kind::kDeletion, pos, input[pos]});
    } else {
      out.sequence.push_back(input[pos]);
    }
  }
  return out;
}

std::vector<Code> replay_mutations(std::span<const Code> input, std::span<const MutationEvent> log) {
  using Kind = MutationEvent::Kind;
  std::vector<Code> out;
  out.reserve(input.size());
  std::size_t e = 0;
  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    bool keep = true;
    bool substituted = false;
    while (e < log.size() && log[e].position == pos) {
      const auto& ev = log[e++];
      if (ev.kind == Kind::kInsertion) {
        out.push_back(ev.base);
      } else if (ev.kind == Kind::kSubstitution) {
        out.push_back(ev.base);
        substituted = true;
      } else {
        keep = false;
      }
    }
    if (keep && !substituted) out.push_back(input[pos]);
  }
  return out;
}

}  // namespace bitalign::oracle

namespace bitalign::oracle {

Mutated plant_edits(std::span<const Code> input, std::size_t edits, Rng& rng) {
  using Kind = MutationEvent::Kind;
  edits = std::min(edits, input.size());
  // Partial Fisher-Yates for distinct positions.
  std::vector<std::size_t> pos(input.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
  for (std::size_t i = 0; i < edits; ++i) std::swap(pos[i], pos[i + rng.below(pos.size() - i)]);
  pos.resize(edits);
  std::sort(pos.begin(), pos.end());
  std::vector<MutationEvent> log;
  log.reserve(edits);
  for (std::size_t p : pos) {
    switch (rng.below(3)) {
      case 0: {
        const Code from = input[p] == kN ? kA : input[p];
        log.push_back({Kind::kSubstitution, p, static_cast<Code>((from + 1 + rng.below(3)) % 4)});
        break;
      }
      case 1: log.push_back({Kind::kInsertion, p, rng.base()}); break;
      default: log.push_back({Kind::kDeletion, p, input[p]}); break;
    }
  }
  Mutated out;
  out.sequence = replay_mutations(input, log);
  out.log = std::move(log);
  return out;
}

std::vector<SimulatedPair> simulate_filter_pairs(std::size_t count, std::size_t length,
                                                 std::size_t threshold, std::uint64_t seed) {
  if (length == 0) throw UsageError("pair length must be >= 1");
  Rng rng(seed);
  std::vector<SimulatedPair> out(count);
  const std::size_t max_edits = 2 * threshold + 2;
  for (auto& pair : out) {
    const std::size_t edits = rng.range(0, max_edits);
    auto source = random_dna(length + max_edits, rng);
    auto mutated = plant_edits(std::span<const Code>(source).first(length), edits, rng);
    // Top the read up from the source tail when deletions shortened it.
    std::vector<Code> read = std::move(mutated.sequence);
    for (std::size_t i = length; read.size() < length; ++i) read.push_back(source[i]);
    read.resize(length);
    pair.read = std::move(read);
    pair.region.assign(source.begin(), source.begin() + static_cast<std::ptrdiff_t>(length));
    pair.planted = edits;
  }
  return out;
}

std::vector<SimulatedPair> simulate_read_pairs(std::span<const Code> reference, std::size_t count,
                                               std::size_t min_len, std::size_t max_len,
                                               double error_rate, std::uint64_t seed) {
  if (min_len == 0 || min_len > max_len) throw UsageError("need 1 <= min_len <= max_len");
  if (reference.size() <= max_len) throw UsageError("reference shorter than the longest read");
  Rng rng(seed);
  std::vector<SimulatedPair> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t len = rng.range(min_len, max_len);
    const std::size_t offset = rng.below(reference.size() - len);
    auto mutated = mutate(reference.subspan(offset, len), MutationProfile::uniform(error_rate, 0), rng);
    if (mutated.sequence.empty()) continue;
    SimulatedPair pair;
    pair.read = std::move(mutated.sequence);
    const auto k = static_cast<std::size_t>(std::ceil(error_rate * static_cast<double>(pair.read.size()) - 1e-9));
    const std::size_t region_len = std::min(pair.read.size() + k, reference.size() - offset);
    pair.region.assign(reference.begin() + static_cast<std::ptrdiff_t>(offset),
                       reference.begin() + static_cast<std::ptrdiff_t>(offset + region_len));
    pair.offset = offset;
    pair.planted = mutated.log.size();
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace bitalign::oracle
