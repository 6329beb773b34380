#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bitalign/scoring.hpp"
#include "bitalign/sequence.hpp"

namespace bitalign {

struct CigarRun {
  EditOp op;
  std::uint32_t length;

  bool operator==(const CigarRun&) const = default;
};

enum class CigarStyle {
  kClassic,  // M/S/I/D
  kSam,    // =/X/I/D
};

/// Run-length encoded edit sequence. Consecutive pushes of the same
/// operation extend the last run.
class Cigar {
 public:
  void push(EditOp op, std::uint32_t count = 1);
  void append(const Cigar& other);

  const std::vector<CigarRun>& runs() const noexcept { return runs_; }
  bool empty() const noexcept { return runs_.empty(); }

  std::size_t count(EditOp op) const noexcept;
  std::size_t pattern_length() const noexcept;  // M + S + I
  std::size_t text_length() const noexcept;     // M + S + D
  std::size_t edits() const noexcept;           // S + I + D

  std::vector<EditOp> expand() const;
  std::string to_string(CigarStyle style = CigarStyle::kClassic) const;

  /// Accepts either style.
  static Cigar parse(std::string_view text);

  bool operator==(const Cigar&) const = default;

 private:
  std::vector<CigarRun> runs_;
};

std::string cigar_render(const Cigar& cigar, CigarStyle style = CigarStyle::kClassic);

/// Gap runs cost gap_open for the first symbol and gap_extend for each
/// further one.
long score_cigar(const Cigar& cigar, const ScoringScheme& scoring);

struct ReplayResult {
  bool ok = true;
  std::string error;
};

/// Walks the edit sequence over text_region and pattern together. Checks
/// that the whole pattern is consumed, that the text is not overrun, that
/// every M pairs matching symbols and every S pairs mismatching ones.
ReplayResult replay_cigar(const Cigar& cigar, const EncodedSequence& text_region,
                          const EncodedSequence& pattern,
                          AmbiguityPolicy policy = AmbiguityPolicy::kMismatch);

}  // namespace bitalign
