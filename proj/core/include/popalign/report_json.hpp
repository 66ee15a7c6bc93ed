#ifndef POPALIGN_REPORT_JSON_HPP
#define POPALIGN_REPORT_JSON_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "popalign/analyze.hpp"

namespace popalign {

/// Fixed-width float formatting for reports and golden files: 12 significant
/// digits, round-half-even, no locale dependence. NaN serializes as null.
std::string format_double(double v);

/// Canonical JSON serialization of a report: fixed key order, fixed float
/// formatting, no whitespace variance. Byte-identical for identical inputs.
std::string report_to_json(const BoundReport& report);

/// CSV emitters (one header row, stable column order, format_double floats).
void write_rank_frequency_csv(std::ostream& out,
                              const std::vector<std::pair<std::size_t, std::uint32_t>>& rf);
void write_bounds_series_csv(std::ostream& out, const BoundReport& report);
void write_sweep_aggregate_csv(std::ostream& out, const std::vector<SweepCellResult>& results);

} // namespace popalign

#endif
