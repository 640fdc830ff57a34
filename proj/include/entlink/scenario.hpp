/**
 * The simulation driver: steps a scenario over its time grid, applies the
 * visibility/night/communication gates, evaluates the link budget and
 * coincidence model on communication timesteps, and aggregates the KPI
 * summary (per-day averages over the whole horizon).
 *
 * Results are deterministic: the timestep range is processed in fixed-size
 * chunks whose per-sample math is independent of how chunks are assigned to
 * workers, and all aggregation runs over the merged, ordered sample stream.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "entlink/astro.hpp"
#include "entlink/ephemeris.hpp"
#include "entlink/link_budget.hpp"
#include "entlink/orbit.hpp"
#include "entlink/quantum.hpp"
#include "entlink/visibility.hpp"

namespace entlink {

struct Gates {
    double beta_min_deg = 30.0;
    Twilight twilight = Twilight::astronomical;
    OperationMode mode = OperationMode::night_only;

    void validate() const;
};

struct TimeGrid {
    Epoch start;
    double step_s = 10.0;
    double duration_days = 365.0;

    void validate() const;
    long long step_count() const;
};

/// Trajectory source: propagated elements, or an imported ephemeris table
/// (path kept for the resolved-configuration echo).
struct EphemerisSource {
    std::string path;
    EphemerisTable table;
};

struct Scenario {
    std::string name = "scenario";
    std::array<GroundStation, 2> stations;
    std::variant<OrbitElements, EphemerisSource> orbit;
    std::array<LinkParams, 2> link;  // identical by default
    QuantumParams quantum;
    Gates gates;
    TimeGrid time;

    void validate() const;
};

/// One evaluated timestep. Records are kept for every dual-visibility
/// timestep; physics fields are NaN when the communication gate is closed.
struct SampleRecord {
    Epoch epoch;
    double elevation1_deg = 0.0;
    double elevation2_deg = 0.0;
    double range1_km = 0.0;
    double range2_km = 0.0;
    double atten1_db = 0.0;
    double atten2_db = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    bool dual_vis = false;
    bool night = false;
    bool comm = false;
    double window_probability = 0.0;
    double raw_cps = 0.0;       // sifted, q*Q/tau
    double unsifted_cps = 0.0;  // Q/tau
    double qber = 0.0;
    double distilled_cps = 0.0;
    bool clamped = false;  // far-field clamp hit on either link
};

enum class AttenuationAveraging { decibel, linear };

struct KpiSummary {
    double duration_days = 0.0;
    double step_s = 0.0;
    std::int64_t dual_vis_samples = 0;
    std::int64_t comm_samples = 0;
    std::int64_t flagged_samples = 0;

    double system_losses_db = 0.0;
    // Absent (nullopt) when there are no communication samples.
    std::optional<double> avg_dual_link_attenuation_db;
    std::optional<double> avg_atm_losses_db;  // <A1> + <A2>
    std::optional<double> avg_qber;           // communication-time weighted

    double avg_dual_visibility_min_per_day = 0.0;
    double avg_communication_min_per_day = 0.0;
    double avg_raw_per_day = 0.0;
    double avg_unsifted_per_day = 0.0;
    double avg_distilled_per_day = 0.0;
};

/// Per-calendar-day (UTC) totals; one entry per day of the horizon.
struct DailyStat {
    Epoch day_start;  // midnight UTC
    double dual_vis_seconds = 0.0;
    double comm_seconds = 0.0;
    double raw_counts = 0.0;
    double distilled_counts = 0.0;
};

struct GapPeriod {
    Epoch first_day;  // midnight UTC of the first zero-communication day
    Epoch last_day;   // midnight UTC of the last one (closed interval)
    int days = 0;
};

struct RunOptions {
    int threads = 1;  // worker count; any value yields identical results
    AttenuationAveraging averaging = AttenuationAveraging::decibel;
};

struct RunResult {
    std::vector<SampleRecord> samples;  // dual-visibility timesteps, ordered
    std::vector<DailyStat> daily;
    KpiSummary summary;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// KPI aggregation over an ordered sample stream. Counts are totals divided
/// by the horizon length in days; attenuation averages run over
/// communication samples in the dB domain unless `averaging` says linear.
KpiSummary aggregate(const std::vector<SampleRecord>& samples, double duration_days,
                     double step_s, double system_losses_db,
                     AttenuationAveraging averaging = AttenuationAveraging::decibel);

/// Duration-weighted merge of two consecutive runs' summaries.
KpiSummary merge_summaries(const KpiSummary& a, const KpiSummary& b);

/// Per-calendar-day accumulation of an ordered sample stream.
std::vector<DailyStat> daily_series(const std::vector<SampleRecord>& samples,
                                    const Epoch& start, double duration_days, double step_s);

/// Maximal closed runs of consecutive days with zero communication seconds.
std::vector<GapPeriod> gap_analysis(const std::vector<DailyStat>& daily);

}  // namespace entlink
