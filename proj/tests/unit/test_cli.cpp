#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bitalign/cigar.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bitalign");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = bitalign::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, '\t');) v.push_back(f);
  return v;
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("bitalign_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const std::string kFixtures = BITALIGN_FIXTURES;

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nope"}).code == 2);
  CHECK(run({"distance", "--bogus"}).code == 2);
  CHECK(run({"model", "--m", "10", "--k", "20"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("distance command") {
  const auto a = kFixtures + "/pair_a.fa";
  const auto b = kFixtures + "/pair_b.fa";
  CHECK(run({"distance", "--a", a, "--b", a}).out == "0\n");
  const auto r = run({"distance", "--a", a, "--b", b, "--cigar"});
  CHECK(r.code == 0);
  const auto f = fields(lines(r.out).at(0));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == "3");
  CHECK(bitalign::Cigar::parse(f[1]).edits() == 3);
  CHECK(run({"distance", "--a", a, "--b", b, "--window", "8", "--overlap", "8"}).code == 2);
}

TEST_CASE("model command") {
  const auto r = run({"model", "--m", "10000", "--k", "1500", "--tsv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("dc_cycles_windowed\t18400\tcycles") != std::string::npos);
  CHECK(r.out.find("tb_sram_total\t98304\tbytes") != std::string::npos);
}

TEST_CASE("align command on the fixture") {
  const auto r = run({"align", "--reference", kFixtures + "/ref.fa", "--reads", kFixtures + "/reads.fa", "--pairs",
                      kFixtures + "/align_pairs.tsv", "--error-rate", "0.1", "--scoring", "bwa"});
  const auto out = lines(r.out);
  REQUIRE(out.size() == 5);
  CHECK(out[0] == "pair_id\tread_id\tref_id\tstart_loc\tedit_dist\tscore\tcigar\tstatus\terror");
  // p0..p2 align; p3 names a read missing from the reads file.
  for (int i = 1; i <= 3; ++i) CHECK(fields(out[i]).at(7) == "ok");
  CHECK(fields(out[1]).at(3) == "100");
  CHECK(fields(out[2]).at(6) == "20M");
  CHECK(fields(out[4]).at(7) == "input_error");
  CHECK(r.code == 1);
  CHECK(r.err.find("1 of 4 pairs failed") != std::string::npos);

  const auto sam = run({"align", "--reference", kFixtures + "/ref.fa", "--reads", kFixtures + "/reads.fa",
                        "--pairs", kFixtures + "/align_pairs.tsv", "--k", "3", "--sam-cigar"});
  CHECK(fields(lines(sam.out).at(2)).at(6) == "20=");
  CHECK(run({"align", "--pairs", kFixtures + "/align_pairs.tsv", "--k", "3", "--error-rate", "0.1"}).code == 2);
  CHECK(run({"align", "--pairs", kFixtures + "/align_pairs.tsv"}).code == 2);
}

TEST_CASE("simulate then filter round trip") {
  TempDir dir;
  const auto prefix = dir / "f";
  REQUIRE(run({"simulate", "--mode", "filter", "--count", "300", "--out-prefix", prefix, "--seed", "4"}).code == 0);
  const auto out = dir / "decisions.tsv";
  auto r = run({"filter", "--pairs", prefix + ".pairs.tsv", "--threshold", "5", "--out", out, "--metrics",
                prefix + ".truth.tsv", "--quirk-correction", "--threads", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("false_rejects\t0\n") != std::string::npos);
  CHECK(r.out.find("false_accepts\t0\n") != std::string::npos);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "pair_id\testimated_dist\taccepted\tthreshold\tstatus\terror");

  r = run({"filter", "--pairs", prefix + ".pairs.tsv", "--threshold", "5", "--metrics", prefix + ".truth.tsv"});
  CHECK(r.code == 0);
  CHECK(r.err.find("false_rejects\t0\n") != std::string::npos);
  CHECK(lines(r.out).size() == 301);

  REQUIRE(run({"simulate", "--mode", "align", "--count", "20", "--ref-length", "5000", "--min-length", "100",
               "--max-length", "400", "--out-prefix", dir / "a", "--error-rate", "0.05"})
              .code == 0);
  r = run({"align", "--reference", dir / "a.ref.fa", "--reads", dir / "a.reads.fa", "--pairs",
           dir / "a.pairs.tsv", "--error-rate", "0.05", "--threads", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 21);
}
