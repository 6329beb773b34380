#pragma once

// Analytical cost model for a systolic implementation of the distance
// recurrence and the windowed traceback: cycle counts, memory footprints and
// on-chip buffer sizes. Purely descriptive; nothing here is measured.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bitalign::perf {

struct HwConfig {
  std::uint64_t pe = 64;    // processing elements per engine
  std::uint64_t bits = 64;  // bits handled by one PE per cycle
  std::uint64_t window = 64;
  std::uint64_t overlap = 24;
  double clock_hz = 1e9;

  void validate() const;
};

struct CostReport {
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  std::uint64_t n = 0;

  // Cycle formulas are evaluated over the reals and rounded up once.
  double dc_cycles_unwindowed_exact = 0;
  double dc_cycles_windowed_exact = 0;
  std::uint64_t dc_cycles_unwindowed = 0;
  std::uint64_t dc_cycles_windowed = 0;
  std::uint64_t tb_cycles = 0;
  std::uint64_t windows = 0;  // ceil((m+k) / (W-O))
  std::uint64_t candidates = 0;  // text positions searched: n - m + 1 when n > m, else 1

  std::uint64_t footprint_unwindowed_bits = 0;
  std::uint64_t footprint_windowed_bits = 0;
  std::uint64_t per_cycle_tb_write_bytes = 0;
  std::uint64_t tb_sram_bytes_per_pe = 0;
  std::uint64_t tb_sram_bytes_total = 0;
  std::uint64_t dc_sram_bits = 0;
  std::uint64_t dc_sram_bytes = 0;

  double dc_seconds_windowed = 0;  // at the configured clock
};

/// n is the text length searched by the unwindowed engine (defaults to m+k
/// when 0); it only affects `candidates`.
CostReport model(std::uint64_t m, std::uint64_t k, std::uint64_t n = 0, const HwConfig& cfg = {});

/// Unwindowed over windowed distance-calculation cycles.
double speedup_windowed(std::uint64_t m, std::uint64_t k, const HwConfig& cfg = {});

struct ReportRow {
  std::string name;
  std::string value;
  std::string unit;
};

std::vector<ReportRow> report_rows(const CostReport& report);
std::string format_text(const CostReport& report);
std::string format_tsv(const CostReport& report);

}  // namespace bitalign::perf
