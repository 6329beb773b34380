#include <doctest.h>

#include "bitalign/distance.hpp"
#include "bitalign/errors.hpp"
#include "bitalign/oracle.hpp"

using namespace bitalign;
using oracle::Rng;

namespace {

EncodedSequence seq(const char* s) { return EncodedSequence::from_string(s); }

std::vector<Code> codes(const char* s) { return seq(s).unpack(); }

bool subset_zeros(const Bitvector& lower, const Bitvector& higher) {
  for (std::size_t j = 0; j < lower.width(); ++j) {
    if (!lower.test(j) && higher.test(j)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pattern bitmasks") {
  const auto pm = build_pattern_bitmasks(seq("AC"));
  CHECK(pm[kA].to_string() == "01");
  CHECK(pm[kC].to_string() == "10");
  CHECK(pm[kG].to_string() == "11");
  CHECK(pm[kT].to_string() == "11");

  const auto pa = build_pattern_bitmasks(seq("AAAA"));
  CHECK(pa[kA].to_string() == "0000");
  CHECK(pa[kC].all_ones());
  CHECK(pa[kT].all_ones());

  Rng rng(5);
  const auto p = oracle::random_dna(100, rng);
  const auto pr = PatternBitmasks(p, AmbiguityPolicy::kMismatch);
  for (std::size_t j = 0; j < 100; ++j) {
    int zeros = 0;
    for (Code c : {kA, kC, kG, kT}) zeros += !pr[c].test(j);
    CHECK(zeros == 1);
    CHECK(!pr[p[j]].test(j));
  }
  CHECK(pr[kN].all_ones());
  CHECK_THROWS_AS(build_pattern_bitmasks(EncodedSequence{}), UsageError);

  const auto wild = build_pattern_bitmasks(seq("ANA"), AmbiguityPolicy::kWildcard);
  CHECK(wild[kC].to_string() == "101");
}

TEST_CASE("dc_step examples") {
  const auto pm = build_pattern_bitmasks(seq("AC"));
  auto state = DcState::initial(2, 0);
  dc_step(state, pm[kC], 0);
  dc_step(state, pm[kA], 0);
  CHECK(state.r[0].to_string() == "01");
  CHECK(state.r[0].msb_is_zero());

  auto s2 = DcState::initial(2, 0);
  dc_step(s2, Bitvector(2, true), 0);
  CHECK(s2.r[0].all_ones());

  CHECK_THROWS_AS(dc_step(s2, Bitvector(3, true), 0), UsageError);
  CHECK_THROWS_AS(dc_step(s2, pm[kA], 1), UsageError);
}

TEST_CASE("initial state clears low bits unless literal") {
  const auto s = DcState::initial(5, 3);
  CHECK(s.r[0].to_string() == "11111");
  CHECK(s.r[1].to_string() == "11110");
  CHECK(s.r[3].to_string() == "11000");
  const auto lit = DcState::initial(5, 3, true);
  for (const auto& r : lit.r) CHECK(r.all_ones());
}

TEST_CASE("monotonicity of status bitvectors") {
  Rng rng(9);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t m = rng.range(1, 90);
    const std::size_t k = rng.range(0, std::min<std::size_t>(m, 8));
    const auto p = oracle::random_dna(m, rng);
    const auto t = oracle::random_dna(rng.range(1, 120), rng);
    const PatternBitmasks pm(p, AmbiguityPolicy::kMismatch);
    auto state = DcState::initial(m, k);
    for (std::size_t i = t.size(); i-- > 0;) {
      dc_step(state, pm[t[i]], k);
      for (std::size_t d = 1; d <= k; ++d) REQUIRE(subset_zeros(state.r[d - 1], state.r[d]));
    }
  }
}

TEST_CASE("search examples") {
  auto r = search(seq("ACGT"), seq("ACGT"), 0);
  CHECK(r == MatchResult{true, 0, 0});
  CHECK_FALSE(search(seq("AAAA"), seq("TTTT"), 1).found);
  r = search(seq("ACTT"), seq("AGTT"), 1);
  CHECK(r.found);
  CHECK(r.edit_dist == 1);
  CHECK(r.start_loc == 0);

  CHECK_THROWS_AS(search(seq("ACGT"), seq("AC"), 3), UsageError);
  CHECK_THROWS_AS(search(EncodedSequence{}, seq("AC"), 0), UsageError);
  CHECK_THROWS_AS(search(seq("AC"), EncodedSequence{}, 0), UsageError);
  CHECK_FALSE(search(seq("AC"), seq("ACGT"), 1).found);
  CHECK(search(seq("A"), seq("A"), 0) == MatchResult{true, 0, 0});
  CHECK(search(seq("TTGGT"), seq("GG"), 0) == MatchResult{true, 2, 0});
}

TEST_CASE("exhaustive binary alphabet vs semi-global oracle") {
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t m = 1; m <= std::min<std::size_t>(n, 4); ++m) {
      for (unsigned tb = 0; tb < (1u << n); ++tb) {
        std::vector<Code> t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = (tb >> i) & 1 ? kC : kA;
        for (unsigned pb = 0; pb < (1u << m); ++pb) {
          std::vector<Code> p(m);
          for (std::size_t i = 0; i < m; ++i) p[i] = (pb >> i) & 1 ? kC : kA;
          const auto o = oracle::dp_semiglobal(p, t);
          const std::size_t k = m;
          DcEngine engine;
          const auto r = engine.search(t, p, k);
          REQUIRE(r.found);
          REQUIRE(r.edit_dist == o.distance);
          REQUIRE(r.start_loc == o.start);
          ++cases;
        }
      }
    }
  }
  CHECK(cases > 100000);
}

TEST_CASE("random search vs oracles, default and corrected") {
  Rng rng(21);
  DcEngine engine;
  std::size_t literal_over = 0;
  for (int rep = 0; rep < 3000; ++rep) {
    const std::size_t m = rng.range(1, 64);
    const std::size_t n = rng.range(m, 64);
    const std::size_t k = rng.range(0, std::min<std::size_t>(m, 8));
    const auto p = oracle::random_dna(m, rng);
    auto t = oracle::random_dna(n, rng);
    if (rng.below(2)) {
      const std::size_t s = rng.below(n);
      for (std::size_t j = 0; j < m && s + j < n; ++j) {
        if (rng.uniform() > 0.15) t[s + j] = p[j];
      }
    }
    const auto semi = oracle::dp_semiglobal(p, t);
    const auto r = engine.search(t, p, k);
    if (semi.distance <= k) {
      REQUIRE(r == MatchResult{true, semi.start, semi.distance});
    } else {
      REQUIRE_FALSE(r.found);
    }

    DcOptions anchored;
    anchored.anchor_text_ends = true;
    const auto g = engine.search(t, p, k, anchored);
    const auto gd = oracle::global_distance(p, t);
    if (gd <= k) {
      REQUIRE(g == MatchResult{true, 0, gd});
    } else {
      REQUIRE_FALSE(g.found);
    }

    DcOptions literal;
    literal.literal_all_ones_init = true;
    const auto l = engine.search(t, p, k, literal);
    if (l.found) {
      REQUIRE(l.edit_dist >= semi.distance);
      literal_over += l.edit_dist > semi.distance;
    }
  }
  MESSAGE("literal initialisation over-estimated in " << literal_over << " of 3000 cases");
}

TEST_CASE("early exit reports the first hit from the right") {
  DcOptions opts;
  opts.early_exit = true;
  const auto r = search(seq("GGAAAGG"), seq("GG"), 0, opts);
  CHECK(r == MatchResult{true, 5, 0});
  CHECK(search(seq("GGAAAGG"), seq("GG"), 0) == MatchResult{true, 0, 0});
}

TEST_CASE("multi-word equivalence (8-bit words)") {
  Rng rng(33);
  BasicDcEngine<std::uint64_t> e64;
  BasicDcEngine<std::uint8_t> e8;
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t m = rng.range(1, 64);
    const std::size_t k = rng.range(0, std::min<std::size_t>(m, 8));
    const auto p = oracle::random_dna(m, rng);
    const auto t = oracle::random_dna(rng.range(m, m + 64), rng);
    DcOptions o;
    o.anchor_text_ends = rng.below(4) == 0;
    REQUIRE(e64.search(t, p, k, o) == e8.search(t, p, k, o));

    const PatternBitmasks pm64(p, AmbiguityPolicy::kMismatch);
    const BasicPatternBitmasks<std::uint8_t> pm8(p, AmbiguityPolicy::kMismatch);
    auto s64 = DcState::initial(m, k);
    auto s8 = BasicDcState<std::uint8_t>::initial(m, k);
    for (std::size_t i = t.size(); i-- > 0;) {
      dc_step(s64, pm64[t[i]], k);
      dc_step(s8, pm8[t[i]], k);
      for (std::size_t d = 0; d <= k; ++d) REQUIRE(s64.r[d].to_string() == s8.r[d].to_string());
    }
  }
}

TEST_CASE("chunked search") {
  Rng rng(44);
  const auto p = oracle::random_dna(64, rng);
  auto t = oracle::random_dna(4096, rng);
  const auto text = EncodedSequence::from_codes(t);
  const auto pat = EncodedSequence::from_codes(p);
  CHECK(search_chunked(text, pat, 6, 4096) == search(text, pat, 6));
  CHECK(search_chunked(text, pat, 6, 512) == search(text, pat, 6));

  // plant the pattern straddling the second chunk start
  const std::size_t boundary = 512 - (64 + 6);
  for (std::size_t j = 0; j < 64; ++j) t[boundary - 32 + j] = p[j];
  t[boundary - 32 + 10] = static_cast<Code>((p[10] + 1) % 4);
  const auto planted = EncodedSequence::from_codes(t);
  const auto whole = search(planted, pat, 6);
  CHECK(whole == MatchResult{true, boundary - 32, 1});
  CHECK(search_chunked(planted, pat, 6, 512) == whole);
  CHECK(search_chunked(planted, pat, 6, 512, {}, 4) == whole);

  CHECK_THROWS_AS(search_chunked(text, pat, 6, 70), UsageError);
  DcOptions anchored;
  anchored.anchor_text_ends = true;
  CHECK_THROWS_AS(search_chunked(text, pat, 6, 512, anchored), UsageError);
}

TEST_CASE("window examples") {
  Rng rng(55);
  const auto p = oracle::random_dna(64, rng);
  DcEngine engine;
  CHECK(engine.window(p, p, 64) == 0);
  const auto& store = engine.store();
  for (std::size_t t = 0; t < 64; ++t) CHECK_FALSE(store.bit(IntermediateKind::kMatch, t, 0, t));

  auto q = p;
  q[20] = static_cast<Code>((q[20] + 1) % 4);
  CHECK(engine.window(q, p, 64) == 1);
  CHECK(engine.window(q, p, 64) == oracle::global_distance(p, q));

  WindowOptions full;
  full.full_rows = true;
  engine.window(p, p, 63, full);
  CHECK(engine.store().stored_bits() == 64u * 3 * 64 * 64);
  CHECK(engine.store().stored_bits() / 8 == 96 * 1024);
  engine.window(p, p, 64, full);
  CHECK(engine.store().stored_bits() == 64u * 3 * 65 * 64);

  CHECK_THROWS_AS(engine.window(codes("AAAA"), codes("TTTT"), 1), WindowUnalignable);
  CHECK_THROWS_AS(engine.window({}, codes("TTTT"), 1), UsageError);
}

TEST_CASE("full-length windows are always alignable") {
  Rng rng(66);
  DcEngine engine;
  WindowOptions anchored;
  anchored.anchored_end = true;
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = oracle::random_dna(64, rng);
    const auto b = oracle::random_dna(64, rng);
    CHECK_NOTHROW(engine.window(a, b, 64));
    CHECK(engine.window(a, b, 64, anchored) == oracle::global_distance(b, a));
  }
}

TEST_CASE("substitution reconstruction and row truncation") {
  Rng rng(77);
  BasicDcEngine<std::uint64_t> derived;
  BasicDcEngine<std::uint64_t> stored;
  BasicDcEngine<std::uint8_t> narrow;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t m = rng.range(1, 80);
    const auto p = oracle::random_dna(m, rng);
    auto mt = oracle::mutate(p, oracle::MutationProfile::uniform(0.2, 0), rng).sequence;
    if (mt.empty()) mt.push_back(kA);
    WindowOptions o;
    o.anchored_end = rng.below(2);
    o.full_rows = true;
    WindowOptions s = o;
    s.store_substitution = true;
    WindowOptions lazy = o;
    lazy.full_rows = false;
    const std::size_t k_w = m + mt.size();
    const auto d1 = derived.window(mt, p, k_w, o);
    const auto d2 = stored.window(mt, p, k_w, s);
    const auto d3 = narrow.window(mt, p, k_w, lazy);
    REQUIRE(d1 == d2);
    REQUIRE(d1 == d3);
    REQUIRE(narrow.store().rows() == d1 + 1);
    for (std::size_t t = 0; t < mt.size(); ++t) {
      for (std::size_t d = 0; d <= k_w; ++d) {
        const auto sub = stored.store().bitvector(IntermediateKind::kSubstitution, t, d);
        REQUIRE(derived.store().bitvector(IntermediateKind::kSubstitution, t, d) == sub);
        if (d > 0) {
          const auto del = derived.store().bitvector(IntermediateKind::kDeletion, t, d);
          REQUIRE(shift_left_one(del, derived.store().substitution_fill(t, d)) == sub);
        }
        if (d <= d1) {
          for (auto kind : {IntermediateKind::kMatch, IntermediateKind::kInsertion,
                            IntermediateKind::kDeletion, IntermediateKind::kSubstitution}) {
            for (std::size_t j = 0; j < m; ++j) {
              REQUIRE(narrow.store().bit(kind, t, d, j) == derived.store().bit(kind, t, d, j));
            }
          }
        }
      }
    }
  }
}
