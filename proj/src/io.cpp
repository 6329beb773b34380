#include "bitalign/io.hpp"

#include <zlib.h>

#include <cctype>
#include <charconv>
#include <fstream>
#include <memory>

#include "bitalign/errors.hpp"

namespace bitalign::io {

namespace {

// Line reader over gzopen, which also reads uncompressed files.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), file_(gzopen(path.c_str(), "rb")) {
    if (!file_) throw UsageError("cannot open " + path);
  }
  ~LineReader() {
    if (file_) gzclose(file_);
  }
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  bool next(std::string& line) {
    line.clear();
    char buf[1 << 16];
    bool any = false;
    while (gzgets(file_, buf, sizeof buf) != nullptr) {
      any = true;
      line.append(buf);
      if (!line.empty() && line.back() == '\n') break;
    }
    if (!any) {
      int err = 0;
      const char* msg = gzerror(file_, &err);
      if (err != Z_OK && err != Z_STREAM_END) throw ParseError(path_ + ": " + msg, number_ + 1);
      return false;
    }
    ++number_;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    return true;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  std::string path_;
  gzFile file_;
  std::size_t number_ = 0;
};

bool blank(const std::string& s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string header_id(const std::string& line) {
  std::size_t end = 1;
  while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
  return line.substr(1, end - 1);
}

EncodedSequence inline_sequence(const std::string& text) {
  for (char c : text) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw UsageError(std::string("unexpected character '") + c + "' in inline sequence");
    }
  }
  return EncodedSequence::from_string(text);
}

void append_residues(EncodedSequence& seq, const std::string& line, std::size_t line_no) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unexpected character '") + c + "' in sequence", line_no);
    }
    seq.push_back(encode_symbol(c));
  }
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::size_t parse_size(const std::string& text, const char* what, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
  }
  return value;
}

}  // namespace

std::vector<SequenceRecord> read_fasta(const std::string& path) {
  LineReader in(path);
  std::vector<SequenceRecord> out;
  std::string line;
  std::size_t header_line = 0;
  auto close_record = [&] {
    if (!out.empty() && out.back().sequence.empty()) throw ParseError("record has no sequence", header_line);
  };
  while (in.next(line)) {
    if (line.empty() || line[0] == ';') continue;
    if (line[0] == '>') {
      close_record();
      const auto id = header_id(line);
      if (id.empty()) throw ParseError("FASTA header without an id", in.number());
      out.push_back({id, {}});
      header_line = in.number();
      continue;
    }
    if (out.empty()) {
      if (blank(line)) continue;
      throw ParseError("sequence data before the first FASTA header", in.number());
    }
    append_residues(out.back().sequence, line, in.number());
  }
  close_record();
  return out;
}

std::vector<SequenceRecord> read_fastq(const std::string& path) {
  LineReader in(path);
  std::vector<SequenceRecord> out;
  std::string header;
  std::string seq;
  std::string plus;
  std::string qual;
  while (in.next(header)) {
    if (blank(header)) continue;
    const std::size_t header_no = in.number();
    if (header[0] != '@') throw ParseError("FASTQ record must start with '@'", header_no);
    if (!in.next(seq)) throw ParseError("FASTQ record truncated after header", header_no);
    if (!in.next(plus) || plus.empty() || plus[0] != '+') {
      throw ParseError("FASTQ separator line must start with '+'", in.number());
    }
    if (!in.next(qual)) throw ParseError("FASTQ record missing quality line", in.number());
    if (qual.size() != seq.size()) {
      throw ParseError("quality length " + std::to_string(qual.size()) + " does not match sequence length " +
                           std::to_string(seq.size()),
                       in.number());
    }
    SequenceRecord rec{header_id(header), {}};
    if (rec.id.empty()) throw ParseError("FASTQ header without an id", header_no);
    append_residues(rec.sequence, seq, header_no + 1);
    if (rec.sequence.empty()) throw ParseError("record has no sequence", header_no + 1);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SequenceRecord> read_sequences(const std::string& path) {
  LineReader in(path);
  std::string line;
  while (in.next(line)) {
    if (blank(line)) continue;
    if (line[0] == '@') return read_fastq(path);
    if (line[0] == '>' || line[0] == ';') return read_fasta(path);
    throw ParseError("not a FASTA or FASTQ file", in.number());
  }
  return {};
}

void write_fasta(const std::string& path, const std::vector<SequenceRecord>& records,
                 std::size_t line_width) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  if (line_width == 0) line_width = std::string::npos;
  for (const auto& rec : records) {
    out << '>' << rec.id << '\n';
    const auto s = rec.sequence.to_string();
    for (std::size_t i = 0; i < s.size(); i += line_width) out << s.substr(i, line_width) << '\n';
  }
  if (!out) throw UsageError("write failed for " + path);
}

std::optional<std::size_t> TsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t TsvTable::require(const std::string& name) const {
  const auto c = column(name);
  if (!c) throw ParseError("missing required column '" + name + "'", 1);
  return *c;
}

TsvTable read_tsv(const std::string& path) {
  LineReader in(path);
  TsvTable t;
  std::string line;
  bool have_header = false;
  while (in.next(line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError("expected " + std::to_string(t.header.size()) + " columns, found " +
                           std::to_string(fields.size()),
                       in.number());
    }
    t.rows.push_back(std::move(fields));
    t.lines.push_back(in.number());
  }
  if (!have_header) throw ParseError("table has no header row", in.number() + 1);
  return t;
}

std::vector<PairRow> read_pair_table(const std::string& path) {
  const auto t = read_tsv(path);
  const auto c_pair = t.require("pair_id");
  const auto c_read = t.require("read_id");
  const auto c_ref = t.require("ref_id");
  const auto c_off = t.require("ref_offset");
  const auto c_seq = t.require("read_seq");
  const auto c_len = t.column("region_len");
  const auto c_refseq = t.column("ref_seq");
  std::vector<PairRow> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& f = t.rows[r];
    PairRow row;
    row.line = t.lines[r];
    row.pair_id = f[c_pair];
    row.read_id = f[c_read];
    row.ref_id = f[c_ref];
    row.ref_offset = parse_size(f[c_off], "ref_offset", row.line);
    row.read_seq = f[c_seq];
    if (c_len && !f[*c_len].empty() && f[*c_len] != "*") {
      row.region_len = parse_size(f[*c_len], "region_len", row.line);
    }
    if (c_refseq && !f[*c_refseq].empty() && f[*c_refseq] != "*") row.ref_seq = f[*c_refseq];
    if (row.pair_id.empty()) throw ParseError("empty pair_id", row.line);
    out.push_back(std::move(row));
  }
  return out;
}

SequenceIndex index_by_id(const std::vector<SequenceRecord>& records) {
  SequenceIndex idx;
  for (const auto& r : records) idx.emplace(r.id, &r.sequence);
  return idx;
}

std::vector<ResolvedPair> resolve_pairs(const std::vector<PairRow>& rows, const SequenceIndex& references,
                                        const SequenceIndex& reads,
                                        const std::function<std::size_t(std::size_t)>& default_extra) {
  std::vector<ResolvedPair> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    auto& res = out[i];
    auto& p = res.pair;
    p.pair_id = row.pair_id;
    p.read_id = row.read_id;
    p.ref_id = row.ref_id;
    p.ref_offset = row.ref_offset;
    if (row.read_seq.empty() || row.read_seq == "*") {
      const auto it = reads.find(row.read_id);
      if (it == reads.end()) {
        res.error = "read '" + row.read_id + "' not found";
        continue;
      }
      p.read = *it->second;
    } else {
      try {
        p.read = inline_sequence(row.read_seq);
      } catch (const std::exception& e) {
        res.error = e.what();
        continue;
      }
    }
    if (row.ref_seq) {
      try {
        p.ref_region = inline_sequence(*row.ref_seq);
      } catch (const std::exception& e) {
        res.error = e.what();
      }
      continue;
    }
    const auto it = references.find(row.ref_id);
    if (it == references.end()) {
      res.error = "reference '" + row.ref_id + "' not found";
      continue;
    }
    const auto& ref = *it->second;
    if (row.ref_offset >= ref.size()) {
      res.error = "ref_offset " + std::to_string(row.ref_offset) + " is past the end of '" + row.ref_id + "'";
      continue;
    }
    std::size_t len = 0;
    try {
      len = row.region_len ? *row.region_len : p.read.size() + default_extra(p.read.size());
    } catch (const std::exception& e) {
      res.error = e.what();
      continue;
    }
    p.ref_region = ref.subseq(row.ref_offset, len);
  }
  return out;
}

}  // namespace bitalign::io
