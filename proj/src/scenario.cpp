#include "entlink/scenario.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace entlink {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Fixed chunk length (timesteps). Chunk boundaries never depend on the
// worker count, so partitioning cannot change any result.
constexpr long long kChunkSteps = 8640;

struct StationContext {
    GroundStation station;
    Vec3 ecef_m{0, 0, 0, Frame::ecef};
    Vec3 up{0, 0, 0, Frame::ecef};
};

StationContext make_station_context(const GroundStation& raw) {
    StationContext ctx;
    ctx.station = raw.validated();
    ctx.ecef_m = geodetic_to_ecef(ctx.station);
    const double lat = ctx.station.latitude_deg * constants::kRadPerDeg;
    const double lon = ctx.station.longitude_deg * constants::kRadPerDeg;
    ctx.up = {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat),
              Frame::ecef};
    return ctx;
}

PassGeometry station_geometry(const StationContext& ctx, const Vec3& sat_ecef_km) {
    const Vec3 d{sat_ecef_km.x - ctx.ecef_m.x / 1000.0, sat_ecef_km.y - ctx.ecef_m.y / 1000.0,
                 sat_ecef_km.z - ctx.ecef_m.z / 1000.0, Frame::ecef};
    PassGeometry g;
    g.range_km = d.norm();
    g.elevation_deg = std::asin(dot(d, ctx.up) / g.range_km) * constants::kDegPerRad;
    return g;
}

double station_sun_elevation(const StationContext& ctx, const Vec3& sun_ecef) {
    return std::asin(dot(ctx.up, sun_ecef)) * constants::kDegPerRad;
}

}  // namespace

void Gates::validate() const {
    if (!(beta_min_deg >= 0.0 && beta_min_deg < 90.0)) {
        throw std::invalid_argument("gates: beta_min must be in [0, 90) degrees");
    }
}

void TimeGrid::validate() const {
    if (!(step_s > 0.0)) throw std::invalid_argument("time: step must be > 0 seconds");
    if (!(duration_days >= 0.0)) throw std::invalid_argument("time: duration must be >= 0 days");
}

long long TimeGrid::step_count() const {
    return static_cast<long long>(std::floor(duration_days * constants::kSecondsPerDay / step_s));
}

void Scenario::validate() const {
    stations[0].validated();
    stations[1].validated();
    if (const auto* elements = std::get_if<OrbitElements>(&orbit)) {
        elements->validate();
    } else {
        std::get<EphemerisSource>(orbit).table.validate();
    }
    link[0].validate();
    link[1].validate();
    quantum.validate();
    gates.validate();
    time.validate();
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
    scenario.validate();

    const long long n_steps = scenario.time.step_count();
    const double step_s = scenario.time.step_s;
    const Epoch start = scenario.time.start;

    const OrbitElements* elements = std::get_if<OrbitElements>(&scenario.orbit);
    const EphemerisTable* ephemeris =
        elements ? nullptr : &std::get<EphemerisSource>(scenario.orbit).table;
    if (ephemeris && n_steps > 0) {
        const Epoch last = start.plus_seconds(static_cast<double>(n_steps - 1) * step_s);
        if (start < ephemeris->first_epoch() || ephemeris->last_epoch() < last) {
            throw std::runtime_error("ephemeris does not cover the scenario time range " +
                                     start.to_iso() + " .. " + last.to_iso());
        }
    }

    const StationContext ctx1 = make_station_context(scenario.stations[0]);
    const StationContext ctx2 = make_station_context(scenario.stations[1]);
    const double threshold = twilight_threshold_deg(scenario.gates.twilight);
    const double sys_db = 0.5 * (system_loss_db(scenario.link[0]) + system_loss_db(scenario.link[1]));

    const long long n_chunks = (n_steps + kChunkSteps - 1) / kChunkSteps;
    std::vector<std::vector<SampleRecord>> chunk_samples(
        static_cast<std::size_t>(std::max<long long>(n_chunks, 0)));

    auto process_chunk = [&](long long chunk) {
        const long long begin = chunk * kChunkSteps;
        const long long end = std::min(begin + kChunkSteps, n_steps);
        auto& local = chunk_samples[static_cast<std::size_t>(chunk)];
        for (long long i = begin; i < end; ++i) {
            const Epoch t = start.plus_seconds(static_cast<double>(i) * step_s);
            SatState sat;
            if (elements) {
                sat = propagate(*elements, t);
            } else {
                sat = SatState{interpolate_position(*ephemeris, t), t};
            }
            const Vec3 sat_ecef = eci_to_ecef(sat.position_km, t);
            const PassGeometry g1 = station_geometry(ctx1, sat_ecef);
            const PassGeometry g2 = station_geometry(ctx2, sat_ecef);
            if (!dual_visibility(g1, g2, scenario.gates.beta_min_deg)) continue;

            const Vec3 sun = sun_direction_eci(t);
            const Vec3 sun_ecef = eci_to_ecef(sun, t);
            IlluminationState ill;
            ill.satellite_sunlit = satellite_sunlit(sat, sun);
            ill.station1_dark = station_sun_elevation(ctx1, sun_ecef) < threshold;
            ill.station2_dark = station_sun_elevation(ctx2, sun_ecef) < threshold;
            const bool night = night_condition(ill);
            const bool comm = communication_allowed(true, night, scenario.gates.mode);

            SampleRecord rec;
            rec.epoch = t;
            rec.elevation1_deg = g1.elevation_deg;
            rec.elevation2_deg = g2.elevation_deg;
            rec.range1_km = g1.range_km;
            rec.range2_km = g2.range_km;
            rec.dual_vis = true;
            rec.night = night;
            rec.comm = comm;
            if (comm) {
                const LinkAttenuation a1 =
                    link_attenuation(g1.range_km, scenario.link[0], g1.elevation_deg);
                const LinkAttenuation a2 =
                    link_attenuation(g2.range_km, scenario.link[1], g2.elevation_deg);
                rec.atten1_db = a1.db;
                rec.atten2_db = a2.db;
                rec.eta1 = channel_efficiency(a1.linear, scenario.link[0]);
                rec.eta2 = channel_efficiency(a2.linear, scenario.link[1]);
                rec.clamped = a1.clamped || a2.clamped;
                const CoincidenceResult q = evaluate_sample(rec.eta1, rec.eta2, scenario.quantum);
                rec.window_probability = q.window_probability;
                rec.raw_cps = q.raw_rate_cps;
                rec.unsifted_cps = q.unsifted_rate_cps;
                rec.qber = q.no_signal ? kNaN : q.qber;
                rec.distilled_cps = q.distilled_rate_cps;
            } else {
                rec.atten1_db = rec.atten2_db = kNaN;
                rec.eta1 = rec.eta2 = kNaN;
                rec.window_probability = kNaN;
                rec.raw_cps = rec.unsifted_cps = kNaN;
                rec.qber = kNaN;
                rec.distilled_cps = kNaN;
            }
            local.push_back(rec);
        }
    };

    int workers = options.threads;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1 || n_chunks <= 1) {
        for (long long c = 0; c < n_chunks; ++c) process_chunk(c);
    } else {
        std::atomic<long long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const long long c = next.fetch_add(1);
                    if (c >= n_chunks) return;
                    process_chunk(c);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    RunResult result;
    std::size_t total = 0;
    for (const auto& v : chunk_samples) total += v.size();
    result.samples.reserve(total);
    for (const auto& v : chunk_samples) {
        result.samples.insert(result.samples.end(), v.begin(), v.end());
    }
    result.daily = daily_series(result.samples, start, scenario.time.duration_days, step_s);
    result.summary =
        aggregate(result.samples, scenario.time.duration_days, step_s, sys_db, options.averaging);
    return result;
}

KpiSummary aggregate(const std::vector<SampleRecord>& samples, double duration_days,
                     double step_s, double system_losses_db, AttenuationAveraging averaging) {
    KpiSummary s;
    s.duration_days = duration_days;
    s.step_s = step_s;
    s.system_losses_db = system_losses_db;

    double atm_db_sum = 0.0;
    double atm1_linear_sum = 0.0;
    double atm2_linear_sum = 0.0;
    double qber_sum = 0.0;
    std::int64_t qber_count = 0;
    double raw_sum = 0.0, unsifted_sum = 0.0, distilled_sum = 0.0;

    for (const SampleRecord& rec : samples) {
        if (rec.dual_vis) ++s.dual_vis_samples;
        if (!rec.comm) continue;
        ++s.comm_samples;
        if (rec.clamped) ++s.flagged_samples;
        atm_db_sum += rec.atten1_db + rec.atten2_db;
        atm1_linear_sum += linear_from_db(rec.atten1_db);
        atm2_linear_sum += linear_from_db(rec.atten2_db);
        raw_sum += rec.raw_cps;
        unsifted_sum += rec.unsifted_cps;
        distilled_sum += rec.distilled_cps;
        if (!std::isnan(rec.qber)) {
            qber_sum += rec.qber;
            ++qber_count;
        }
    }

    if (s.comm_samples > 0) {
        const double n = static_cast<double>(s.comm_samples);
        double atm_db;
        if (averaging == AttenuationAveraging::decibel) {
            atm_db = atm_db_sum / n;
        } else {
            atm_db = db_from_linear(atm1_linear_sum / n) + db_from_linear(atm2_linear_sum / n);
        }
        s.avg_atm_losses_db = atm_db;
        s.avg_dual_link_attenuation_db = atm_db + system_losses_db;
        if (qber_count > 0) s.avg_qber = qber_sum / static_cast<double>(qber_count);
    }

    if (duration_days > 0.0) {
        s.avg_dual_visibility_min_per_day =
            static_cast<double>(s.dual_vis_samples) * step_s / 60.0 / duration_days;
        s.avg_communication_min_per_day =
            static_cast<double>(s.comm_samples) * step_s / 60.0 / duration_days;
        s.avg_raw_per_day = raw_sum * step_s / duration_days;
        s.avg_unsifted_per_day = unsifted_sum * step_s / duration_days;
        s.avg_distilled_per_day = distilled_sum * step_s / duration_days;
    }
    return s;
}

KpiSummary merge_summaries(const KpiSummary& a, const KpiSummary& b) {
    if (a.duration_days == 0.0) return b;
    if (b.duration_days == 0.0) return a;
    if (a.step_s != b.step_s) {
        throw std::invalid_argument("merge_summaries: mismatched time steps");
    }

    KpiSummary m;
    m.duration_days = a.duration_days + b.duration_days;
    m.step_s = a.step_s;
    m.dual_vis_samples = a.dual_vis_samples + b.dual_vis_samples;
    m.comm_samples = a.comm_samples + b.comm_samples;
    m.flagged_samples = a.flagged_samples + b.flagged_samples;
    m.system_losses_db = a.system_losses_db;

    const double da = a.duration_days / m.duration_days;
    const double db = b.duration_days / m.duration_days;
    m.avg_dual_visibility_min_per_day =
        a.avg_dual_visibility_min_per_day * da + b.avg_dual_visibility_min_per_day * db;
    m.avg_communication_min_per_day =
        a.avg_communication_min_per_day * da + b.avg_communication_min_per_day * db;
    m.avg_raw_per_day = a.avg_raw_per_day * da + b.avg_raw_per_day * db;
    m.avg_unsifted_per_day = a.avg_unsifted_per_day * da + b.avg_unsifted_per_day * db;
    m.avg_distilled_per_day = a.avg_distilled_per_day * da + b.avg_distilled_per_day * db;

    // Communication-sample weighted means.
    const auto weighted = [&](std::optional<double> x, std::int64_t nx, std::optional<double> y,
                              std::int64_t ny) -> std::optional<double> {
        const double wx = x ? static_cast<double>(nx) : 0.0;
        const double wy = y ? static_cast<double>(ny) : 0.0;
        if (wx + wy == 0.0) return std::nullopt;
        return (x.value_or(0.0) * wx + y.value_or(0.0) * wy) / (wx + wy);
    };
    m.avg_atm_losses_db = weighted(a.avg_atm_losses_db, a.comm_samples, b.avg_atm_losses_db,
                                   b.comm_samples);
    if (m.avg_atm_losses_db) {
        m.avg_dual_link_attenuation_db = *m.avg_atm_losses_db + m.system_losses_db;
    }
    m.avg_qber = weighted(a.avg_qber, a.comm_samples, b.avg_qber, b.comm_samples);
    return m;
}

std::vector<DailyStat> daily_series(const std::vector<SampleRecord>& samples, const Epoch& start,
                                    double duration_days, double step_s) {
    std::vector<DailyStat> daily;
    if (duration_days <= 0.0) return daily;

    const auto day_number = [](const Epoch& e) {
        // Midnight-aligned civil day index (days since J2000 run from noon).
        return static_cast<long long>(std::floor(e.days_since_j2000() + 0.5));
    };
    const long long first_day = day_number(start);
    const Epoch last_instant = start.plus_seconds(duration_days * constants::kSecondsPerDay -
                                                  std::min(step_s, 1.0));
    const long long last_day = day_number(last_instant);

    daily.resize(static_cast<std::size_t>(last_day - first_day + 1));
    for (std::size_t k = 0; k < daily.size(); ++k) {
        daily[k].day_start = Epoch::from_days_since_j2000(
            static_cast<double>(first_day + static_cast<long long>(k)) - 0.5);
    }
    for (const SampleRecord& rec : samples) {
        const long long d = day_number(rec.epoch) - first_day;
        if (d < 0 || d >= static_cast<long long>(daily.size())) continue;
        DailyStat& stat = daily[static_cast<std::size_t>(d)];
        if (rec.dual_vis) stat.dual_vis_seconds += step_s;
        if (rec.comm) {
            stat.comm_seconds += step_s;
            stat.raw_counts += rec.raw_cps * step_s;
            stat.distilled_counts += rec.distilled_cps * step_s;
        }
    }
    return daily;
}

std::vector<GapPeriod> gap_analysis(const std::vector<DailyStat>& daily) {
    std::vector<GapPeriod> gaps;
    std::size_t run_start = 0;
    bool in_run = false;
    for (std::size_t i = 0; i < daily.size(); ++i) {
        if (daily[i].comm_seconds == 0.0) {
            if (!in_run) {
                run_start = i;
                in_run = true;
            }
        } else if (in_run) {
            gaps.push_back({daily[run_start].day_start, daily[i - 1].day_start,
                            static_cast<int>(i - run_start)});
            in_run = false;
        }
    }
    if (in_run) {
        gaps.push_back({daily[run_start].day_start, daily.back().day_start,
                        static_cast<int>(daily.size() - run_start)});
    }
    return gaps;
}

}  // namespace entlink
