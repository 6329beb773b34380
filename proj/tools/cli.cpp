#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <unordered_map>

#include "bitalign/errors.hpp"
#include "bitalign/io.hpp"
#include "bitalign/oracle.hpp"
#include "bitalign/perf_model.hpp"
#include "bitalign/pipelines.hpp"

namespace bitalign {

namespace {

ScoringScheme parse_scoring(const std::string& text) {
  if (text == "unit") return ScoringScheme::unit();
  if (text == "bwa" || text == "bwa-mem") return ScoringScheme::bwa_mem();
  if (text == "minimap2") return ScoringScheme::minimap2();
  return ScoringScheme::parse(text);
}

// "-" writes to the supplied stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::string clean(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s.empty() ? "*" : s;
}

std::string codes_to_string(const std::vector<Code>& codes) {
  std::string s(codes.size(), 'N');
  for (std::size_t i = 0; i < codes.size(); ++i) s[i] = decode_symbol(codes[i]);
  return s;
}

struct PairInputs {
  std::string reference;
  std::string reads;
  std::string pairs;
  unsigned threads = 1;
};

// Loads sequences and pair rows; rows that cannot be resolved keep their
// error so they still produce an output row.
std::vector<io::ResolvedPair> load_pairs(const PairInputs& in,
                                         const std::function<std::size_t(std::size_t)>& extra,
                                         std::vector<io::SequenceRecord>& refs,
                                         std::vector<io::SequenceRecord>& reads) {
  const auto rows = io::read_pair_table(in.pairs);
  if (!in.reference.empty()) refs = io::read_sequences(in.reference);
  if (!in.reads.empty()) reads = io::read_sequences(in.reads);
  return io::resolve_pairs(rows, io::index_by_id(refs), io::index_by_id(reads), extra);
}

int run_align(const PairInputs& in, std::optional<std::size_t> k, std::optional<double> rate,
              const WindowConfig& window, const std::string& scoring_text, const std::string& out_path,
              bool sam_cigar, std::ostream& out, std::ostream& err) {
  if (k.has_value() == rate.has_value()) throw UsageError("give exactly one of --k and --error-rate");
  ReadAlignConfig cfg;
  cfg.budget.k = k;
  cfg.budget.error_rate = rate;
  cfg.window = window;
  cfg.scoring = parse_scoring(scoring_text);
  cfg.window.validate();
  if (rate) cfg.budget.resolve(1);

  std::vector<io::SequenceRecord> refs;
  std::vector<io::SequenceRecord> reads;
  const auto resolved = load_pairs(in, [&](std::size_t m) { return cfg.budget.resolve(m); }, refs, reads);

  std::vector<CandidatePair> pairs;
  std::vector<std::size_t> slot(resolved.size(), SIZE_MAX);
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    if (resolved[i].error.empty()) {
      slot[i] = pairs.size();
      pairs.push_back(resolved[i].pair);
    }
  }
  const auto records = align_batch(pairs, cfg, in.threads);

  Output sink(out_path, out);
  auto& os = *sink;
  os << "pair_id\tread_id\tref_id\tstart_loc\tedit_dist\tscore\tcigar\tstatus\terror\n";
  std::size_t failed = 0;
  const auto style = sam_cigar ? CigarStyle::kSam : CigarStyle::kClassic;
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    const auto& p = resolved[i].pair;
    os << p.pair_id << '\t' << clean(p.read_id) << '\t' << clean(p.ref_id) << '\t';
    if (slot[i] == SIZE_MAX) {
      ++failed;
      os << "*\t*\t*\t*\tinput_error\t" << clean(resolved[i].error) << '\n';
      continue;
    }
    const auto& rec = records[slot[i]];
    if (rec.status != PairStatus::kOk) {
      ++failed;
      os << "*\t*\t*\t*\t" << to_string(rec.status) << '\t' << clean(rec.error) << '\n';
      continue;
    }
    const auto& a = rec.alignment;
    os << a.start_loc << '\t' << a.edit_dist << '\t' << a.score << '\t' << a.cigar.to_string(style)
       << "\tok\t*\n";
  }
  if (failed) err << failed << " of " << resolved.size() << " pairs failed\n";
  return failed ? 1 : 0;
}

int run_filter(const PairInputs& in, std::size_t threshold, bool quirk_correction,
               const std::string& out_path, const std::string& truth_path, std::ostream& out,
               std::ostream& err) {
  FilterOptions opts;
  opts.threshold = threshold;
  opts.quirk_correction = quirk_correction;

  std::vector<io::SequenceRecord> refs;
  std::vector<io::SequenceRecord> reads;
  const auto resolved = load_pairs(in, [](std::size_t) { return std::size_t{0}; }, refs, reads);
  std::vector<CandidatePair> pairs;
  std::vector<std::size_t> slot(resolved.size(), SIZE_MAX);
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    if (resolved[i].error.empty()) {
      slot[i] = pairs.size();
      pairs.push_back(resolved[i].pair);
    }
  }
  const auto computed = prealign_filter(pairs, opts, in.threads);

  std::vector<FilterDecision> decisions(resolved.size());
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    if (slot[i] != SIZE_MAX) {
      decisions[i] = computed[slot[i]];
    } else {
      decisions[i] = {resolved[i].pair.pair_id, threshold + 1, false, threshold, PairStatus::kUsage,
                      resolved[i].error};
    }
  }

  Output sink(out_path, out);
  auto& os = *sink;
  os << "pair_id\testimated_dist\taccepted\tthreshold\tstatus\terror\n";
  std::size_t failed = 0;
  for (const auto& d : decisions) {
    if (d.status != PairStatus::kOk) ++failed;
    os << d.pair_id << '\t' << d.estimated_dist << '\t' << (d.accepted ? 1 : 0) << '\t' << d.threshold << '\t'
       << to_string(d.status) << '\t' << clean(d.error) << '\n';
  }

  if (!truth_path.empty()) {
    const auto table = io::read_tsv(truth_path);
    const auto c_id = table.require("pair_id");
    const auto c_dist = table.require("distance");
    std::unordered_map<std::string, std::size_t> truth_by_id;
    for (const auto& row : table.rows) truth_by_id[row[c_id]] = std::stoul(row[c_dist]);
    std::vector<std::size_t> truth;
    truth.reserve(decisions.size());
    for (const auto& d : decisions) {
      const auto it = truth_by_id.find(d.pair_id);
      if (it == truth_by_id.end()) throw UsageError("no ground truth for pair '" + d.pair_id + "'");
      truth.push_back(it->second);
    }
    const auto m = filter_metrics(decisions, truth, threshold);
    auto& ms = (out_path.empty() || out_path == "-") ? err : out;
    ms << "similar\t" << m.similar << "\ndissimilar\t" << m.dissimilar << "\nfalse_accepts\t"
       << m.false_accepts << "\nfalse_rejects\t" << m.false_rejects << "\nskipped\t" << m.skipped
       << "\nfalse_accept_rate\t" << m.false_accept_rate << "\nfalse_reject_rate\t" << m.false_reject_rate
       << '\n';
  }
  if (failed) err << failed << " of " << decisions.size() << " pairs could not be filtered\n";
  return failed ? 1 : 0;
}

const EncodedSequence& first_record(const std::vector<io::SequenceRecord>& records, const std::string& path) {
  if (records.empty()) throw UsageError(path + " holds no sequences");
  return records.front().sequence;
}

int run_distance(const std::string& a_path, const std::string& b_path, const WindowConfig& window,
                 bool with_cigar, std::ostream& out) {
  window.validate();
  const auto a = io::read_sequences(a_path);
  const auto b = io::read_sequences(b_path);
  const auto r = edit_distance(first_record(a, a_path), first_record(b, b_path), window, with_cigar);
  out << r.distance;
  if (with_cigar) out << '\t' << r.cigar->to_string();
  out << '\n';
  return 0;
}

int run_model(std::uint64_t m, std::uint64_t k, std::uint64_t n, const perf::HwConfig& hw, bool tsv,
              std::ostream& out) {
  const auto report = perf::model(m, k, n, hw);
  out << (tsv ? perf::format_tsv(report) : perf::format_text(report));
  return 0;
}

struct SimulateArgs {
  std::string mode = "align";
  std::string prefix = "sim";
  std::size_t count = 100;
  std::size_t min_len = 100;
  std::size_t max_len = 1000;
  std::size_t length = 100;
  std::size_t threshold = 5;
  std::size_t ref_len = 100000;
  double error_rate = 0.05;
  std::uint64_t seed = 1;
};

int run_simulate(const SimulateArgs& s, std::ostream& out) {
  if (s.mode == "filter") {
    const auto pairs = oracle::simulate_filter_pairs(s.count, s.length, s.threshold, s.seed);
    std::ofstream table(s.prefix + ".pairs.tsv");
    std::ofstream truth(s.prefix + ".truth.tsv");
    if (!table || !truth) throw UsageError("cannot write under prefix " + s.prefix);
    table << "pair_id\tread_id\tref_id\tref_offset\tread_seq\tregion_len\tref_seq\n";
    truth << "pair_id\tdistance\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto id = "p" + std::to_string(i);
      table << id << "\tr" << i << "\tregion" << i << "\t0\t" << codes_to_string(pairs[i].read) << "\t"
            << pairs[i].region.size() << '\t' << codes_to_string(pairs[i].region) << '\n';
      truth << id << '\t' << oracle::global_distance(pairs[i].read, pairs[i].region) << '\n';
    }
    out << "wrote " << pairs.size() << " pairs to " << s.prefix << ".pairs.tsv and " << s.prefix
        << ".truth.tsv\n";
    return 0;
  }
  if (s.mode != "align") throw UsageError("--mode must be align or filter");
  oracle::Rng rng(s.seed);
  const auto reference = oracle::random_dna(s.ref_len, rng);
  const auto pairs = oracle::simulate_read_pairs(reference, s.count, s.min_len, s.max_len, s.error_rate,
                                                 rng.next());
  io::write_fasta(s.prefix + ".ref.fa", {{"chr1", EncodedSequence::from_codes(reference)}});
  std::vector<io::SequenceRecord> reads;
  std::ofstream table(s.prefix + ".pairs.tsv");
  if (!table) throw UsageError("cannot write under prefix " + s.prefix);
  table << "pair_id\tread_id\tref_id\tref_offset\tread_seq\tregion_len\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    reads.push_back({"r" + std::to_string(i), EncodedSequence::from_codes(pairs[i].read)});
    table << 'p' << i << "\tr" << i << "\tchr1\t" << pairs[i].offset << "\t*\t" << pairs[i].region.size()
          << '\n';
  }
  io::write_fasta(s.prefix + ".reads.fa", reads);
  out << "wrote " << pairs.size() << " pairs under prefix " << s.prefix << '\n';
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bit-parallel approximate string matching, alignment and filtering"};
  app.name("bitalign");
  app.require_subcommand(1);

  PairInputs pin;
  std::optional<std::size_t> k;
  std::optional<double> rate;
  WindowConfig window;
  std::string scoring = "unit";
  std::string out_path = "-";
  bool sam_cigar = false;

  auto* align = app.add_subcommand("align", "Align reads against candidate regions");
  align->add_option("--reference", pin.reference, "Reference FASTA (plain or gzip)")->check(CLI::ExistingFile);
  align->add_option("--reads", pin.reads, "Reads FASTA/FASTQ, for rows whose read_seq is *")
      ->check(CLI::ExistingFile);
  align->add_option("--pairs", pin.pairs, "Candidate pair table (TSV)")->required()->check(CLI::ExistingFile);
  auto* k_opt = align->add_option("--k", k, "Edit threshold");
  auto* rate_opt = align->add_option("--error-rate", rate, "Edit threshold as a fraction of read length");
  k_opt->excludes(rate_opt);
  align->add_option("--window", window.window, "Window size W")->capture_default_str();
  align->add_option("--overlap", window.overlap, "Window overlap O")->capture_default_str();
  align->add_option("--scoring", scoring, "unit, bwa, minimap2 or match=,sub=,open=,ext=")
      ->capture_default_str();
  align->add_option("--out", out_path, "Output TSV, - for stdout")->capture_default_str();
  align->add_flag("--sam-cigar", sam_cigar, "Render matches as = and substitutions as X");
  align->add_option("--threads", pin.threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  std::size_t threshold = 5;
  bool quirk = false;
  std::string truth_path;
  auto* filter = app.add_subcommand("filter", "Pre-alignment filter on candidate pairs");
  filter->add_option("--pairs", pin.pairs, "Candidate pair table (TSV)")->required()->check(CLI::ExistingFile);
  filter->add_option("--reference", pin.reference, "Reference FASTA")->check(CLI::ExistingFile);
  filter->add_option("--reads", pin.reads, "Reads FASTA/FASTQ")->check(CLI::ExistingFile);
  filter->add_option("--threshold", threshold, "Accept pairs with estimated distance <= threshold")
      ->required();
  filter->add_option("--out", out_path, "Decisions TSV, - for stdout")->capture_default_str();
  filter->add_option("--metrics", truth_path, "Ground truth TSV (pair_id, distance) for error rates")
      ->check(CLI::ExistingFile);
  filter->add_flag("--quirk-correction", quirk, "Charge for reference symbols outside the read's placement");
  filter->add_option("--threads", pin.threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  std::string a_path;
  std::string b_path;
  bool with_cigar = false;
  auto* distance = app.add_subcommand("distance", "Windowed edit distance between two sequences");
  distance->add_option("--a", a_path, "First sequence (FASTA/FASTQ, first record)")
      ->required()
      ->check(CLI::ExistingFile);
  distance->add_option("--b", b_path, "Second sequence")->required()->check(CLI::ExistingFile);
  distance->add_flag("--cigar", with_cigar, "Also print the edit sequence");
  distance->add_option("--window", window.window, "Window size W")->capture_default_str();
  distance->add_option("--overlap", window.overlap, "Window overlap O")->capture_default_str();

  std::uint64_t mm = 0;
  std::uint64_t mk = 0;
  std::uint64_t mn = 0;
  perf::HwConfig hw;
  bool tsv = false;
  auto* model = app.add_subcommand("model", "Analytical cycle and memory model");
  model->add_option("--m", mm, "Pattern length")->required();
  model->add_option("--k", mk, "Edit threshold")->required();
  model->add_option("--n", mn, "Text length (default m+k)");
  model->add_option("--pe", hw.pe, "Processing elements")->capture_default_str();
  model->add_option("--bits", hw.bits, "Bits per processing element")->capture_default_str();
  model->add_option("--window", hw.window, "Window size W")->capture_default_str();
  model->add_option("--overlap", hw.overlap, "Window overlap O")->capture_default_str();
  model->add_flag("--tsv", tsv, "Machine-readable rows");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate synthetic pair sets");
  simulate->add_option("--mode", sim.mode, "align or filter")->capture_default_str();
  simulate->add_option("--out-prefix", sim.prefix, "Output path prefix")->capture_default_str();
  simulate->add_option("--count", sim.count, "Number of pairs")->capture_default_str();
  simulate->add_option("--min-length", sim.min_len, "Shortest read (align)")->capture_default_str();
  simulate->add_option("--max-length", sim.max_len, "Longest read (align)")->capture_default_str();
  simulate->add_option("--length", sim.length, "Pair length (filter)")->capture_default_str();
  simulate->add_option("--threshold", sim.threshold, "Filter threshold the edit counts straddle")
      ->capture_default_str();
  simulate->add_option("--ref-length", sim.ref_len, "Reference length (align)")->capture_default_str();
  simulate->add_option("--error-rate", sim.error_rate, "Mutation rate (align)")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*align) return run_align(pin, k, rate, window, scoring, out_path, sam_cigar, out, err);
    if (*filter) return run_filter(pin, threshold, quirk, out_path, truth_path, out, err);
    if (*distance) return run_distance(a_path, b_path, window, with_cigar, out);
    if (*model) return run_model(mm, mk, mn, hw, tsv, out);
    if (*simulate) return run_simulate(sim, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace bitalign
