#include "bitalign/cigar.hpp"

#include <cctype>

#include "bitalign/errors.hpp"

namespace bitalign {

void Cigar::push(EditOp op, std::uint32_t count) {
  if (count == 0) return;
  if (!runs_.empty() && runs_.back().op == op) {
    runs_.back().length += count;
  } else {
    runs_.push_back({op, count});
  }
}

void Cigar::append(const Cigar& other) {
  for (const auto& run : other.runs_) push(run.op, run.length);
}

std::size_t Cigar::count(EditOp op) const noexcept {
  std::size_t total = 0;
  for (const auto& run : runs_) {
    if (run.op == op) total += run.length;
  }
  return total;
}

std::size_t Cigar::pattern_length() const noexcept {
  return count(EditOp::kMatch) + count(EditOp::kSubstitution) + count(EditOp::kInsertion);
}

std::size_t Cigar::text_length() const noexcept {
  return count(EditOp::kMatch) + count(EditOp::kSubstitution) + count(EditOp::kDeletion);
}

std::size_t Cigar::edits() const noexcept {
  return count(EditOp::kSubstitution) + count(EditOp::kInsertion) + count(EditOp::kDeletion);
}

std::vector<EditOp> Cigar::expand() const {
  std::vector<EditOp> ops;
  for (const auto& run : runs_) ops.insert(ops.end(), run.length, run.op);
  return ops;
}

std::string Cigar::to_string(CigarStyle style) const {
  std::string out;
  for (const auto& run : runs_) {
    out += std::to_string(run.length);
    char c = static_cast<char>(run.op);
    if (style == CigarStyle::kSam) {
      if (run.op == EditOp::kMatch) c = '=';
      if (run.op == EditOp::kSubstitution) c = 'X';
    }
    out.push_back(c);
  }
  return out;
}

Cigar Cigar::parse(std::string_view text) {
  Cigar cigar;
  std::uint64_t len = 0;
  bool have_digits = false;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      len = len * 10 + static_cast<std::uint64_t>(c - '0');
      have_digits = true;
      continue;
    }
    if (!have_digits) throw UsageError("CIGAR operation without a length");
    EditOp op;
    switch (c) {
      case 'M': case '=': op = EditOp::kMatch; break;
      case 'S': case 'X': op = EditOp::kSubstitution; break;
      case 'I': op = EditOp::kInsertion; break;
      case 'D': op = EditOp::kDeletion; break;
      default: throw UsageError(std::string("unknown CIGAR operation '") + c + "'");
    }
    cigar.push(op, static_cast<std::uint32_t>(len));
    len = 0;
    have_digits = false;
  }
  if (have_digits) throw UsageError("CIGAR ends with a dangling length");
  return cigar;
}

std::string cigar_render(const Cigar& cigar, CigarStyle style) { return cigar.to_string(style); }

long score_cigar(const Cigar& cigar, const ScoringScheme& scoring) {
  long score = 0;
  for (const auto& run : cigar.runs()) {
    const long len = run.length;
    switch (run.op) {
      case EditOp::kMatch: score += len * scoring.match; break;
      case EditOp::kSubstitution: score += len * scoring.substitution; break;
      case EditOp::kInsertion:
      case EditOp::kDeletion: score += scoring.gap_open + (len - 1) * scoring.gap_extend; break;
    }
  }
  return score;
}

ReplayResult replay_cigar(const Cigar& cigar, const EncodedSequence& text_region,
                          const EncodedSequence& pattern, AmbiguityPolicy policy) {
  std::size_t t = 0;
  std::size_t p = 0;
  auto fail = [&](std::string why) {
    return ReplayResult{false, why + " at pattern " + std::to_string(p) + ", text " + std::to_string(t)};
  };
  for (const auto& run : cigar.runs()) {
    for (std::uint32_t r = 0; r < run.length; ++r) {
      const bool uses_text = run.op != EditOp::kInsertion;
      const bool uses_pattern = run.op != EditOp::kDeletion;
      if (uses_text && t >= text_region.size()) return fail("text overrun");
      if (uses_pattern && p >= pattern.size()) return fail("pattern overrun");
      if (run.op == EditOp::kMatch && !symbols_match(text_region[t], pattern[p], policy)) {
        return fail("M over mismatching symbols");
      }
      if (run.op == EditOp::kSubstitution && symbols_match(text_region[t], pattern[p], policy)) {
        return fail("S over matching symbols");
      }
      if (uses_text) ++t;
      if (uses_pattern) ++p;
    }
  }
  if (p != pattern.size()) return fail("pattern not fully consumed");
  return {};
}

}  // namespace bitalign
