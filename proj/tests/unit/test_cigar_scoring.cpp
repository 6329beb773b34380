#include <doctest.h>

#include "bitalign/cigar.hpp"
#include "bitalign/errors.hpp"
#include "bitalign/scoring.hpp"

using namespace bitalign;

namespace {

Cigar from_ops(std::string_view ops) {
  Cigar c;
  for (char o : ops) c.push(static_cast<EditOp>(o));
  return c;
}

EncodedSequence seq(const char* s) { return EncodedSequence::from_string(s); }

}  // namespace

TEST_CASE("case ordering") {
  CHECK(to_string(order_cases(ScoringScheme::bwa_mem())) == "MSID");
  CHECK(to_string(order_cases(ScoringScheme::minimap2())) == "MSID");
  CHECK(to_string(order_cases(ScoringScheme::unit())) == "MSID");
  CHECK(to_string(order_cases({0, -6, -4, -1})) == "MIDS");
  CHECK(to_string(order_cases({0, -2, -2, -1})) == "MSID");
}

TEST_CASE("scoring parse") {
  CHECK(ScoringScheme::parse("match=1,sub=-4,open=-6,ext=-1") == ScoringScheme::bwa_mem());
  CHECK(ScoringScheme::parse("substitution=-4,match=2,gap_open=-4,gap_extend=-2") == ScoringScheme::minimap2());
  CHECK(ScoringScheme::parse("") == ScoringScheme::unit());
  CHECK(ScoringScheme::parse(ScoringScheme::bwa_mem().to_string()) == ScoringScheme::bwa_mem());
  CHECK_THROWS_AS(ScoringScheme::parse("match"), UsageError);
  CHECK_THROWS_AS(ScoringScheme::parse("mismatch=3"), UsageError);
  CHECK_THROWS_AS(ScoringScheme::parse("match=x"), UsageError);
}

TEST_CASE("render") {
  CHECK(from_ops("MMMM").to_string() == "4M");
  CHECK(from_ops("MMSMID").to_string() == "2M1S1M1I1D");
  CHECK(cigar_render(from_ops("MMSM"), CigarStyle::kSam) == "2=1X1=");
  CHECK(Cigar{}.to_string().empty());
}

TEST_CASE("parse and counts") {
  const auto c = Cigar::parse("3M2I1S4D");
  CHECK(c == Cigar::parse("3=2I1X4D"));
  CHECK(c.pattern_length() == 6);
  CHECK(c.text_length() == 8);
  CHECK(c.edits() == 7);
  CHECK(c.expand().size() == 10);
  CHECK(Cigar::parse(c.to_string(CigarStyle::kSam)) == c);
  CHECK_THROWS_AS(Cigar::parse("M"), UsageError);
  CHECK_THROWS_AS(Cigar::parse("3"), UsageError);
  CHECK_THROWS_AS(Cigar::parse("3Q"), UsageError);
  Cigar a = Cigar::parse("2M");
  a.append(Cigar::parse("3M1I"));
  CHECK(a.to_string() == "5M1I");
}

TEST_CASE("score") {
  const auto bwa = ScoringScheme::bwa_mem();
  CHECK(score_cigar(Cigar::parse("10M"), bwa) == 10);
  CHECK(score_cigar(Cigar::parse("4M3I4M"), bwa) == 8 - 6 - 2);
  CHECK(score_cigar(Cigar::parse("4M1S1D"), bwa) == 4 - 4 - 6);
  CHECK(score_cigar(Cigar::parse("2I2D"), ScoringScheme::unit()) == -4);
}

TEST_CASE("replay") {
  CHECK(replay_cigar(Cigar::parse("4M"), seq("ACGT"), seq("ACGT")).ok);
  CHECK(replay_cigar(Cigar::parse("2M1S1M"), seq("ACTT"), seq("ACGT")).ok);
  CHECK(replay_cigar(Cigar::parse("2M1D2M"), seq("ACGGT"), seq("ACGT")).ok);
  CHECK(replay_cigar(Cigar::parse("2M1I1M"), seq("ACT"), seq("ACGT")).ok);
  CHECK(replay_cigar(Cigar::parse("3M"), seq("ACGTTT"), seq("ACG")).ok);

  CHECK_FALSE(replay_cigar(Cigar::parse("4M"), seq("ACTT"), seq("ACGT")).ok);
  CHECK_FALSE(replay_cigar(Cigar::parse("3M1S"), seq("ACGT"), seq("ACGT")).ok);
  CHECK_FALSE(replay_cigar(Cigar::parse("3M"), seq("ACGT"), seq("ACGT")).ok);
  CHECK_FALSE(replay_cigar(Cigar::parse("5M"), seq("ACGT"), seq("ACGTA")).ok);
  CHECK_FALSE(replay_cigar(Cigar::parse("1M"), seq("N"), seq("N")).ok);
  CHECK(replay_cigar(Cigar::parse("1M"), seq("N"), seq("A"), AmbiguityPolicy::kWildcard).ok);
}
