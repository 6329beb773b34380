#include <doctest.h>

#include "bitalign/errors.hpp"
#include "bitalign/oracle.hpp"
#include "bitalign/traceback.hpp"

using namespace bitalign;
using oracle::Rng;

namespace {

std::vector<Code> codes(const char* s) { return EncodedSequence::from_string(s).unpack(); }

std::size_t count(const std::vector<EditOp>& ops, EditOp op) {
  return static_cast<std::size_t>(std::count(ops.begin(), ops.end(), op));
}

void check_identities(const Alignment& a, std::span<const Code> text, std::span<const Code> pattern) {
  REQUIRE(a.cigar.pattern_length() == pattern.size());
  REQUIRE(a.cigar.text_length() == a.text_consumed);
  REQUIRE(a.text_consumed <= text.size());
  REQUIRE(a.cigar.edits() == a.edit_dist);
  const auto replay = replay_cigar(a.cigar, EncodedSequence::from_codes(text), EncodedSequence::from_codes(pattern));
  REQUIRE_MESSAGE(replay.ok, replay.error);
}

}  // namespace

TEST_CASE("window config") {
  CHECK_NOTHROW(WindowConfig{}.validate());
  CHECK(WindowConfig{}.commit() == 40);
  CHECK_THROWS_AS((WindowConfig{64, 0}).validate(), UsageError);
  CHECK_THROWS_AS((WindowConfig{64, 64}).validate(), UsageError);
}

TEST_CASE("index transitions") {
  TracebackCursor c{3, 0, 1, 0, 0, std::nullopt};
  auto m = advance(c, EditOp::kMatch);
  CHECK(m.pattern_i == 2);
  CHECK(m.text_i == 1);
  CHECK(m.cur_error == 1);
  auto s = advance(c, EditOp::kSubstitution);
  CHECK((s.pattern_i == 2 && s.text_i == 1 && s.cur_error == 0));
  auto i = advance(c, EditOp::kInsertion);
  CHECK((i.pattern_i == 2 && i.text_i == 0 && i.cur_error == 0));
  auto d = advance(c, EditOp::kDeletion);
  CHECK((d.pattern_i == 3 && d.text_i == 1 && d.cur_error == 0));
  CHECK_THROWS_AS(advance(s, EditOp::kDeletion), InternalConsistencyError);
}

TEST_CASE("first step of a 4-symbol window with one edit is a match") {
  // pattern ACGT against text ACTT: one substitution at the third symbol
  DcEngine engine;
  const auto dist = engine.window(codes("ACTT"), codes("ACGT"), 4);
  REQUIRE(dist == 1);
  std::vector<TracebackStep> steps;
  StepObserver obs = [&](const TracebackStep& s) { steps.push_back(s); };
  const auto tb = tb_window(engine.store(), dist, 0, order_cases(ScoringScheme::unit()), std::nullopt, &obs);
  REQUIRE(steps.size() >= 2);
  CHECK(steps[0].before == TracebackCursor{3, 0, 1, 0, 0, std::nullopt});
  CHECK(steps[0].op == EditOp::kMatch);
  CHECK(steps[1].before.pattern_i == 2);
  CHECK(steps[1].before.text_i == 1);
  CHECK(steps[1].before.cur_error == 1);
  CHECK(tb.ops == std::vector<EditOp>{EditOp::kMatch, EditOp::kMatch, EditOp::kSubstitution, EditOp::kMatch});
}

TEST_CASE("tb_window examples") {
  Rng rng(3);
  const WindowConfig cfg;
  const auto p = oracle::random_dna(64, rng);
  DcEngine engine;
  auto dist = engine.window(p, p, 64);
  auto tb = tb_window(engine.store(), dist, cfg, ScoringScheme::unit());
  CHECK(tb.ops == std::vector<EditOp>(40, EditOp::kMatch));
  CHECK(tb.pattern_consumed == 40);
  CHECK(tb.text_consumed == 40);

  for (std::size_t pos : {0u, 5u, 17u, 39u}) {
    auto t = p;
    t[pos] = static_cast<Code>((t[pos] + 1) % 4);
    dist = engine.window(t, p, 64);
    REQUIRE(dist == 1);
    tb = tb_window(engine.store(), dist, cfg, ScoringScheme::unit());
    CHECK(count(tb.ops, EditOp::kSubstitution) == 1);
    CHECK(count(tb.ops, EditOp::kMatch) == tb.ops.size() - 1);
    CHECK(tb.ops[pos] == EditOp::kSubstitution);
    CHECK(tb.edits == 1);
  }

  dist = engine.window(p, p, 64);
  tb = tb_window(engine.store(), dist, 0, order_cases(ScoringScheme::unit()));
  CHECK(tb.ops == std::vector<EditOp>(64, EditOp::kMatch));
  CHECK(tb.edits == 0);
}

TEST_CASE("corrupt distance is an internal-consistency error") {
  DcEngine engine;
  const auto t = codes("ACGTACGT");
  const auto p = codes("TTTTACGA");
  WindowOptions o;
  o.full_rows = true;
  const auto dist = engine.window(t, p, 8, o);
  REQUIRE(dist > 0);
  CHECK_THROWS_AS(tb_window(engine.store(), dist - 1, 0, order_cases(ScoringScheme::unit())),
                  InternalConsistencyError);
}

TEST_CASE("identical sequences of any length") {
  Rng rng(8);
  for (std::size_t len : {1u, 7u, 64u, 65u, 333u, 5000u}) {
    const auto p = oracle::random_dna(len, rng);
    const auto a = align_traceback(EncodedSequence::from_codes(p), EncodedSequence::from_codes(p));
    CHECK(a.cigar.to_string() == std::to_string(len) + "M");
    CHECK(a.edit_dist == 0);
    CHECK(a.score == 0);
    AlignOptions bwa;
    bwa.scoring = ScoringScheme::bwa_mem();
    CHECK(align_traceback(EncodedSequence::from_codes(p), EncodedSequence::from_codes(p), bwa).score ==
          static_cast<long>(len));
  }
}

TEST_CASE("single window is exact") {
  Rng rng(12);
  TracebackAligner aligner;
  AlignOptions global;
  global.global = true;
  for (int rep = 0; rep < 2000; ++rep) {
    const auto p = oracle::random_dna(rng.range(1, 64), rng);
    auto t = oracle::mutate(p, oracle::MutationProfile::uniform(0.2, 0), rng).sequence;
    if (t.empty() || t.size() > 64) continue;
    const auto a = aligner.align(t, p, global);
    REQUIRE(a.edit_dist == oracle::global_distance(p, t));
    REQUIRE(a.text_consumed == t.size());
    check_identities(a, t, p);
    REQUIRE(a.windows == 1);
  }
}

TEST_CASE("random pairs replay and respect consumption identities") {
  Rng rng(13);
  TracebackAligner aligner;
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t m = rng.range(30, 2000);
    const auto ref = oracle::random_dna(m + 400, rng);
    const double rate = std::array{0.05, 0.10, 0.15}[rep % 3];
    auto read = oracle::mutate(std::span<const Code>(ref).first(m), oracle::MutationProfile::uniform(rate, 0), rng)
                    .sequence;
    const auto k = static_cast<std::size_t>(std::ceil(rate * static_cast<double>(read.size())));
    const std::span<const Code> region = std::span<const Code>(ref).first(read.size() + k);
    AlignOptions o;
    o.max_tail_insertions = k;
    o.scoring = rep % 2 ? ScoringScheme::bwa_mem() : ScoringScheme::unit();
    const auto a = aligner.align(region, read, o);
    check_identities(a, region, read);
    REQUIRE(a.score == score_cigar(a.cigar, o.scoring));
    REQUIRE(a.count(EditOp::kMatch) == a.cigar.count(EditOp::kMatch));
    REQUIRE(a.peak_store_bits <= 64u * 3 * 65 * 64);

    AlignOptions g;
    g.global = true;
    const auto ga = aligner.align(region, read, g);
    check_identities(ga, region, read);
    REQUIRE(ga.text_consumed == region.size());
    REQUIRE(ga.edit_dist >= oracle::global_distance(read, region));
  }
}

TEST_CASE("every non-final window commits W-O symbols on one side") {
  Rng rng(14);
  const auto ref = oracle::random_dna(3000, rng);
  const auto read = oracle::mutate(ref, oracle::MutationProfile::uniform(0.1, 0), rng).sequence;
  DcEngine engine;
  const WindowConfig cfg;
  std::size_t cur_p = 0;
  std::size_t cur_t = 0;
  std::size_t windows = 0;
  while (read.size() - cur_p > cfg.window) {
    const auto sp = std::span<const Code>(read).subspan(cur_p, cfg.window);
    const auto st = std::span<const Code>(ref).subspan(cur_t, std::min<std::size_t>(cfg.window, ref.size() - cur_t));
    const auto dist = engine.window(st, sp, cfg.window);
    const auto tb = tb_window(engine.store(), dist, cfg, ScoringScheme::unit());
    CHECK(std::max(tb.pattern_consumed, tb.text_consumed) == cfg.commit());
    cur_p += tb.pattern_consumed;
    cur_t += tb.text_consumed;
    ++windows;
  }
  CHECK(windows > 50);
}

TEST_CASE("gap extension takes priority when available") {
  Rng rng(15);
  TracebackAligner aligner;
  std::size_t gap_steps = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto ref = oracle::random_dna(rng.range(100, 800), rng);
    auto read = oracle::mutate(ref, oracle::MutationProfile::long_read(0.15, 0), rng).sequence;
    if (read.empty()) continue;
    std::optional<EditOp> violation;
    StepObserver obs = [&](const TracebackStep& s) {
      if (s.before.prev == EditOp::kInsertion || s.before.prev == EditOp::kDeletion) ++gap_steps;
      if (s.insertion_extend_open && s.op != EditOp::kInsertion) violation = s.op;
      if (!s.insertion_extend_open && s.deletion_extend_open && s.op != EditOp::kDeletion) violation = s.op;
    };
    AlignOptions o;
    o.scoring = ScoringScheme::bwa_mem();
    o.global = true;
    const auto a = aligner.align(ref, read, o, &obs);
    REQUIRE_FALSE(violation.has_value());
    check_identities(a, ref, read);
  }
  CHECK(gap_steps > 0);
}

TEST_CASE("tail handling") {
  // Region too short for the read: the uncovered tail becomes insertions.
  const auto read = codes("ACGTACGTAC");
  const auto region = codes("ACGTACG");
  AlignOptions o;
  o.max_tail_insertions = 3;
  const auto a = TracebackAligner{}.align(region, read, o);
  CHECK(a.cigar.to_string() == "7M3I");
  o.max_tail_insertions = 2;
  CHECK_THROWS_AS(TracebackAligner{}.align(region, read, o), AlignmentFailed);

  AlignOptions g;
  g.global = true;
  const auto b = TracebackAligner{}.align(codes("ACGTACGTACGT"), codes("ACGTACGT"), g);
  CHECK(b.cigar.to_string() == "8M4D");
  CHECK(b.edit_dist == 4);
}

TEST_CASE("pure substitutions: distance at least the Hamming count") {
  Rng rng(16);
  std::size_t exact = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = oracle::random_dna(rng.range(64, 3000), rng);
    auto b = a;
    std::size_t hamming = 0;
    for (auto& c : b) {
      if (rng.uniform() < 0.01) {
        c = static_cast<Code>((c + 1 + rng.below(3)) % 4);
        ++hamming;
      }
    }
    AlignOptions g;
    g.global = true;
    const auto r = TracebackAligner{}.align(b, a, g);
    REQUIRE(r.edit_dist <= hamming);
    REQUIRE(r.edit_dist >= oracle::global_distance(a, b));
    exact += r.edit_dist == hamming;
  }
  CHECK(exact >= 190);
}
