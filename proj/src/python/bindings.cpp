#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "bitalign/distance.hpp"
#include "bitalign/errors.hpp"
#include "bitalign/oracle.hpp"
#include "bitalign/perf_model.hpp"
#include "bitalign/pipelines.hpp"

namespace py = pybind11;
using namespace bitalign;

namespace {

EncodedSequence seq(const std::string& s) { return EncodedSequence::from_string(s); }

ScoringScheme scoring_from(const std::string& name) {
  if (name == "unit") return ScoringScheme::unit();
  if (name == "bwa" || name == "bwa-mem") return ScoringScheme::bwa_mem();
  if (name == "minimap2") return ScoringScheme::minimap2();
  return ScoringScheme::parse(name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bit-parallel approximate string matching and windowed alignment";

  static py::exception<AlignmentFailed> alignment_failed(m, "AlignmentFailed", PyExc_RuntimeError);
  static py::exception<WindowUnalignable> window_unalignable(m, "WindowUnalignable", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UsageError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const AlignmentFailed& e) {
      py::set_error(alignment_failed, e.what());
    } catch (const WindowUnalignable& e) {
      py::set_error(window_unalignable, e.what());
    }
  });

  py::class_<MatchResult>(m, "MatchResult")
      .def_readonly("found", &MatchResult::found)
      .def_readonly("start_loc", &MatchResult::start_loc)
      .def_readonly("edit_dist", &MatchResult::edit_dist)
      .def("__repr__", [](const MatchResult& r) {
        return "MatchResult(found=" + std::string(r.found ? "True" : "False") +
               ", start_loc=" + std::to_string(r.start_loc) + ", edit_dist=" + std::to_string(r.edit_dist) + ")";
      });

  m.def(
      "search",
      [](const std::string& text, const std::string& pattern, std::size_t k, bool anchored, bool wildcard_n) {
        DcOptions o;
        o.anchor_text_ends = anchored;
        o.ambiguity = wildcard_n ? AmbiguityPolicy::kWildcard : AmbiguityPolicy::kMismatch;
        return search(seq(text), seq(pattern), k, o);
      },
      py::arg("text"), py::arg("pattern"), py::arg("k"), py::arg("anchored") = false,
      py::arg("wildcard_n") = false,
      "Best placement of pattern in text with at most k edits; smallest start wins ties.");

  m.def(
      "search_chunked",
      [](const std::string& text, const std::string& pattern, std::size_t k, std::size_t chunk_len,
         unsigned threads) {
        py::gil_scoped_release release;
        return search_chunked(seq(text), seq(pattern), k, chunk_len, {}, threads);
      },
      py::arg("text"), py::arg("pattern"), py::arg("k"), py::arg("chunk_len"), py::arg("threads") = 1);

  m.def(
      "edit_distance",
      [](const std::string& a, const std::string& b, std::size_t window, std::size_t overlap, bool cigar) {
        const auto r = edit_distance(seq(a), seq(b), WindowConfig{window, overlap}, cigar);
        std::optional<std::string> c;
        if (r.cigar) c = r.cigar->to_string();
        return py::make_tuple(r.distance, c);
      },
      py::arg("a"), py::arg("b"), py::arg("window") = 64, py::arg("overlap") = 24, py::arg("cigar") = false,
      "Windowed global edit distance of a against b; returns (distance, cigar or None).");

  py::class_<Alignment>(m, "Alignment")
      .def_readonly("start_loc", &Alignment::start_loc)
      .def_readonly("edit_dist", &Alignment::edit_dist)
      .def_readonly("score", &Alignment::score)
      .def_readonly("text_consumed", &Alignment::text_consumed)
      .def_readonly("windows", &Alignment::windows)
      .def_property_readonly("cigar", [](const Alignment& a) { return a.cigar.to_string(); })
      .def_property_readonly("sam_cigar", [](const Alignment& a) { return a.cigar.to_string(CigarStyle::kSam); });

  m.def(
      "align",
      [](const std::string& read, const std::string& region, std::optional<std::size_t> k,
         std::optional<double> error_rate, std::size_t ref_offset, const std::string& scoring, std::size_t window,
         std::size_t overlap) {
        if (k.has_value() == error_rate.has_value()) throw UsageError("give exactly one of k and error_rate");
        CandidatePair p{"", "", "", ref_offset, seq(read), seq(region)};
        const auto kk = EditBudget{k, error_rate}.resolve(p.read.size());
        return align_read(p, kk, WindowConfig{window, overlap}, scoring_from(scoring));
      },
      py::arg("read"), py::arg("region"), py::arg("k") = py::none(), py::arg("error_rate") = py::none(),
      py::arg("ref_offset") = 0, py::arg("scoring") = "unit", py::arg("window") = 64, py::arg("overlap") = 24,
      "Windowed traceback of read against its candidate region.");

  m.def(
      "prealign_filter",
      [](const std::string& read, const std::string& region, std::size_t threshold, bool quirk_correction) {
        FilterOptions o;
        o.threshold = threshold;
        o.quirk_correction = quirk_correction;
        const auto d = prealign_filter(CandidatePair{"", "", "", 0, seq(read), seq(region)}, o);
        if (d.status != PairStatus::kOk) throw UsageError(d.error);
        return py::make_tuple(d.estimated_dist, d.accepted);
      },
      py::arg("read"), py::arg("region"), py::arg("threshold") = 5, py::arg("quirk_correction") = false,
      "Returns (estimated distance, accepted).");

  m.def(
      "model",
      [](std::uint64_t mm, std::uint64_t k, std::uint64_t n, std::uint64_t pe, std::uint64_t bits,
         std::uint64_t window, std::uint64_t overlap) {
        perf::HwConfig hw;
        hw.pe = pe;
        hw.bits = bits;
        hw.window = window;
        hw.overlap = overlap;
        py::dict out;
        for (const auto& row : perf::report_rows(perf::model(mm, k, n, hw))) out[py::str(row.name)] = row.value;
        return out;
      },
      py::arg("m"), py::arg("k"), py::arg("n") = 0, py::arg("pe") = 64, py::arg("bits") = 64,
      py::arg("window") = 64, py::arg("overlap") = 24, "Cost model rows as name -> formatted value.");

  m.def(
      "global_distance",
      [](const std::string& a, const std::string& b) {
        return oracle::global_distance(seq(a).unpack(), seq(b).unpack());
      },
      py::arg("a"), py::arg("b"), "Reference quadratic-time Levenshtein distance.");
}
