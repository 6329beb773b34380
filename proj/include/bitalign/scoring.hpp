#pragma once

#include <array>
#include <string>
#include <string_view>

namespace bitalign {

enum class EditOp : char {
  kMatch = 'M',
  kSubstitution = 'S',
  kInsertion = 'I',  // pattern symbol absent from the text
  kDeletion = 'D',   // text symbol absent from the pattern
};

/// Scores are signed: matches positive, penalties negative. A gap of
/// length L scores gap_open + (L-1) * gap_extend.
struct ScoringScheme {
  int match = 0;
  int substitution = -1;
  int gap_open = -1;
  int gap_extend = -1;

  static ScoringScheme unit() { return {0, -1, -1, -1}; }
  static ScoringScheme bwa_mem() { return {1, -4, -6, -1}; }
  static ScoringScheme minimap2() { return {2, -4, -4, -2}; }

  /// "match=1,sub=-4,open=-6,ext=-1"; omitted keys keep their unit values.
  static ScoringScheme parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const ScoringScheme&) const = default;
};

/// Order in which traceback tries the four cases once the gap-extend checks
/// have failed.
using CaseOrder = std::array<EditOp, 4>;

/// Cases sorted by ascending penalty (-score); ties keep M, S, I, D order.
CaseOrder order_cases(const ScoringScheme& scoring);

std::string to_string(const CaseOrder& order);

}  // namespace bitalign
