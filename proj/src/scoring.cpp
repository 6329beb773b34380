#include "bitalign/scoring.hpp"

#include <algorithm>
#include <charconv>

#include "bitalign/errors.hpp"

namespace bitalign {

ScoringScheme ScoringScheme::parse(std::string_view text) {
  ScoringScheme s = unit();
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw UsageError("scoring entry needs key=value: " + std::string(item));
    const auto key = item.substr(0, eq);
    const auto val = item.substr(eq + 1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), value);
    if (ec != std::errc{} || ptr != val.data() + val.size()) {
      throw UsageError("bad scoring value: " + std::string(item));
    }
    if (key == "match") {
      s.match = value;
    } else if (key == "sub" || key == "substitution") {
      s.substitution = value;
    } else if (key == "open" || key == "gap_open") {
      s.gap_open = value;
    } else if (key == "ext" || key == "gap_extend") {
      s.gap_extend = value;
    } else {
      throw UsageError("unknown scoring key: " + std::string(key));
    }
  }
  return s;
}

std::string ScoringScheme::to_string() const {
  return "match=" + std::to_string(match) + ",sub=" + std::to_string(substitution) +
         ",open=" + std::to_string(gap_open) + ",ext=" + std::to_string(gap_extend);
}

CaseOrder order_cases(const ScoringScheme& scoring) {
  struct Entry {
    EditOp op;
    int penalty;
  };
  std::array<Entry, 4> entries{{{EditOp::kMatch, -scoring.match},
                                {EditOp::kSubstitution, -scoring.substitution},
                                {EditOp::kInsertion, -scoring.gap_open},
                                {EditOp::kDeletion, -scoring.gap_open}}};
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.penalty < b.penalty; });
  CaseOrder order{};
  for (std::size_t i = 0; i < 4; ++i) order[i] = entries[i].op;
  return order;
}

std::string to_string(const CaseOrder& order) {
  std::string s;
  for (EditOp op : order) s.push_back(static_cast<char>(op));
  return s;
}

}  // namespace bitalign
