/**
 * Result writers: per-timestep CSV, per-day CSV, a JSON KPI summary and a
 * fixed-width comparison table (one column per scenario).
 *
 * All emission is locale-independent (period decimal separator, UTC
 * timestamps) and byte-stable across runs.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "entlink/scenario.hpp"

namespace entlink {

/// One row per communication timestep, full sample column set.
void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& samples);

/// One row per calendar day: visibility/communication seconds and counts.
void write_daily_csv(std::ostream& out, const std::vector<DailyStat>& daily);

nlohmann::ordered_json summary_to_json(const std::string& scenario_name, const KpiSummary& kpi);
void write_summary_json(std::ostream& out, const std::string& scenario_name,
                        const KpiSummary& kpi);

/// Fixed-width KPI table; columns in input order.
std::string summary_table(const std::vector<std::pair<std::string, KpiSummary>>& columns);

}  // namespace entlink
