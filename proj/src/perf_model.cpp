#include "bitalign/perf_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bitalign/errors.hpp"

namespace bitalign::perf {

namespace {

std::uint64_t ceil_u64(double x) { return static_cast<std::uint64_t>(std::ceil(x - 1e-9)); }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

void HwConfig::validate() const {
  if (pe == 0 || bits == 0 || window == 0) throw UsageError("PE count, PE width and window must be >= 1");
  if (overlap >= window) throw UsageError("overlap must be smaller than the window");
  if (clock_hz <= 0) throw UsageError("clock frequency must be positive");
}

CostReport model(std::uint64_t m, std::uint64_t k, std::uint64_t n, const HwConfig& cfg) {
  cfg.validate();
  if (m == 0) throw UsageError("pattern length must be >= 1");
  if (k > m) throw UsageError("k must not exceed m");
  if (n == 0) n = m + k;

  const double M = static_cast<double>(m);
  const double K = static_cast<double>(k);
  const double W = static_cast<double>(cfg.window);
  const double O = static_cast<double>(cfg.overlap);
  const double lanes = static_cast<double>(cfg.pe) * static_cast<double>(cfg.bits);
  const double region = M + K;

  CostReport r;
  r.m = m;
  r.k = k;
  r.n = n;
  r.dc_cycles_unwindowed_exact = M * region * K / lanes;
  r.dc_cycles_windowed_exact = (W * W * std::min(W, K) / lanes) * region / (W - O);
  r.dc_cycles_unwindowed = ceil_u64(r.dc_cycles_unwindowed_exact);
  r.dc_cycles_windowed = ceil_u64(r.dc_cycles_windowed_exact);
  r.tb_cycles = m + k;
  r.windows = ceil_u64(region / (W - O));
  r.candidates = n > m ? n - m + 1 : 1;

  r.footprint_unwindowed_bits = (m + k) * 4 * k * m;
  r.footprint_windowed_bits = cfg.window * 3 * cfg.window * cfg.window;
  r.per_cycle_tb_write_bytes = ceil_u64(3.0 * static_cast<double>(cfg.bits) / 8.0);
  r.tb_sram_bytes_per_pe = ceil_u64(3.0 * static_cast<double>(cfg.bits) * W / 8.0);
  r.tb_sram_bytes_total = r.tb_sram_bytes_per_pe * cfg.pe;

  // 2-bit text region, four m-bit pattern bitmasks, and per-PE shift
  // carries (oldR MSB and R MSB). Rows that do not fit on the PEs spill a
  // double-buffered W-bit status vector each.
  const std::uint64_t rows = std::min<std::uint64_t>(cfg.window, k);
  const std::uint64_t spill = rows > cfg.pe ? (rows - cfg.pe) * cfg.window * 2 : 0;
  r.dc_sram_bits = 2 * (m + k) + 4 * m + 2 * cfg.pe + spill;
  r.dc_sram_bytes = (r.dc_sram_bits + 7) / 8;

  r.dc_seconds_windowed = r.dc_cycles_windowed_exact / cfg.clock_hz;
  return r;
}

double speedup_windowed(std::uint64_t m, std::uint64_t k, const HwConfig& cfg) {
  const auto r = model(m, k, 0, cfg);
  if (r.dc_cycles_windowed_exact == 0) return 0.0;
  return r.dc_cycles_unwindowed_exact / r.dc_cycles_windowed_exact;
}

std::vector<ReportRow> report_rows(const CostReport& r) {
  const double gib = 8.0 * 1024 * 1024 * 1024;
  const double ratio = r.dc_cycles_windowed_exact == 0
                           ? 0.0
                           : r.dc_cycles_unwindowed_exact / r.dc_cycles_windowed_exact;
  return {
      {"m", std::to_string(r.m), "symbols"},
      {"k", std::to_string(r.k), "edits"},
      {"n", std::to_string(r.n), "symbols"},
      {"dc_cycles_unwindowed", std::to_string(r.dc_cycles_unwindowed), "cycles"},
      {"dc_cycles_windowed", std::to_string(r.dc_cycles_windowed), "cycles"},
      {"speedup_windowed", fixed(ratio, 3), "x"},
      {"tb_cycles", std::to_string(r.tb_cycles), "cycles"},
      {"windows", std::to_string(r.windows), "windows"},
      {"footprint_unwindowed", std::to_string(r.footprint_unwindowed_bits), "bits"},
      {"footprint_unwindowed_gib", fixed(static_cast<double>(r.footprint_unwindowed_bits) / gib, 2), "GiB"},
      {"footprint_unwindowed_gb", fixed(static_cast<double>(r.footprint_unwindowed_bits) / 8e9, 2), "GB"},
      {"footprint_windowed", std::to_string(r.footprint_windowed_bits), "bits"},
      {"footprint_windowed_kib", fixed(static_cast<double>(r.footprint_windowed_bits) / 8192.0, 2), "KiB"},
      {"per_cycle_tb_write", std::to_string(r.per_cycle_tb_write_bytes), "bytes"},
      {"tb_sram_per_pe", std::to_string(r.tb_sram_bytes_per_pe), "bytes"},
      {"tb_sram_total", std::to_string(r.tb_sram_bytes_total), "bytes"},
      {"dc_sram", std::to_string(r.dc_sram_bytes), "bytes"},
      {"dc_sram_kib", fixed(static_cast<double>(r.dc_sram_bytes) / 1024.0, 2), "KiB"},
      {"dc_time_windowed", fixed(r.dc_seconds_windowed * 1e6, 3), "us"},
  };
}

std::string format_text(const CostReport& r) {
  const auto rows = report_rows(r);
  std::size_t name_w = 0;
  std::size_t value_w = 0;
  for (const auto& row : rows) {
    name_w = std::max(name_w, row.name.size());
    value_w = std::max(value_w, row.value.size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    out << row.name << std::string(name_w - row.name.size() + 2, ' ')
        << std::string(value_w - row.value.size(), ' ') << row.value << "  " << row.unit << '\n';
  }
  return out.str();
}

std::string format_tsv(const CostReport& r) {
  std::ostringstream out;
  out << "metric\tvalue\tunit\n";
  for (const auto& row : report_rows(r)) out << row.name << '\t' << row.value << '\t' << row.unit << '\n';
  return out.str();
}

}  // namespace bitalign::perf
