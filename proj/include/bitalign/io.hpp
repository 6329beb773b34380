#pragma once

// File formats: FASTA/FASTQ (plain or gzip), tab-separated tables, and the
// candidate pair table consumed by the align and filter commands.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bitalign/pipelines.hpp"
#include "bitalign/sequence.hpp"

namespace bitalign::io {

struct SequenceRecord {
  std::string id;  // header up to the first whitespace
  EncodedSequence sequence;
};

/// Format is picked from the first non-blank character ('>' or '@').
/// Throws ParseError with the offending line number.
std::vector<SequenceRecord> read_sequences(const std::string& path);
std::vector<SequenceRecord> read_fasta(const std::string& path);
std::vector<SequenceRecord> read_fastq(const std::string& path);

void write_fasta(const std::string& path, const std::vector<SequenceRecord>& records,
                 std::size_t line_width = 60);

struct TsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // source line of each row

  /// Column index by name, or nullopt.
  std::optional<std::size_t> column(const std::string& name) const;
  std::size_t require(const std::string& name) const;  // throws ParseError
};

/// Header row required; blank lines and lines starting with '#' skipped.
TsvTable read_tsv(const std::string& path);

/// One row of the pair table. read_seq "*" means: look the read up by
/// read_id in the reads file. ref_seq, when present and not "*", gives the
/// region directly and no reference lookup happens.
struct PairRow {
  std::string pair_id;
  std::string read_id;
  std::string ref_id;
  std::size_t ref_offset = 0;
  std::string read_seq;
  std::optional<std::size_t> region_len;
  std::optional<std::string> ref_seq;
  std::size_t line = 0;
};

std::vector<PairRow> read_pair_table(const std::string& path);

struct ResolvedPair {
  CandidatePair pair;
  std::string error;  // empty when resolution succeeded
};

using SequenceIndex = std::unordered_map<std::string, const EncodedSequence*>;

SequenceIndex index_by_id(const std::vector<SequenceRecord>& records);

/// Builds candidate pairs. `default_extra(read_len)` gives the region
/// length added to the read when region_len is absent.
std::vector<ResolvedPair> resolve_pairs(const std::vector<PairRow>& rows, const SequenceIndex& references,
                                        const SequenceIndex& reads,
                                        const std::function<std::size_t(std::size_t)>& default_extra);

}  // namespace bitalign::io
