#include "entlink/output.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace entlink {

namespace {

std::string num(double v, const char* fmt = "%.10g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& samples) {
    out << "epoch,elevation1_deg,elevation2_deg,range1_km,range2_km,"
           "attenuation1_db,attenuation2_db,eta1,eta2,dual_vis,night,comm,"
           "window_probability,raw_cps,unsifted_cps,qber,distilled_cps,farfield_clamped\n";
    for (const SampleRecord& r : samples) {
        if (!r.comm) continue;
        out << r.epoch.to_iso() << ',' << num(r.elevation1_deg, "%.6f") << ','
            << num(r.elevation2_deg, "%.6f") << ',' << num(r.range1_km, "%.6f") << ','
            << num(r.range2_km, "%.6f") << ',' << num(r.atten1_db, "%.6f") << ','
            << num(r.atten2_db, "%.6f") << ',' << num(r.eta1, "%.8e") << ','
            << num(r.eta2, "%.8e") << ',' << (r.dual_vis ? 1 : 0) << ',' << (r.night ? 1 : 0)
            << ',' << (r.comm ? 1 : 0) << ',' << num(r.window_probability, "%.8e") << ','
            << num(r.raw_cps, "%.8e") << ',' << num(r.unsifted_cps, "%.8e") << ','
            << num(r.qber, "%.8e") << ',' << num(r.distilled_cps, "%.8e") << ','
            << (r.clamped ? 1 : 0) << '\n';
    }
}

void write_daily_csv(std::ostream& out, const std::vector<DailyStat>& daily) {
    out << "date,dual_vis_seconds,comm_seconds,raw_coincidences,distilled_coincidences\n";
    for (const DailyStat& d : daily) {
        const CalendarTime t = d.day_start.to_utc();
        char date[16];
        std::snprintf(date, sizeof(date), "%04d-%02d-%02d", t.year, t.month, t.day);
        out << date << ',' << num(d.dual_vis_seconds, "%.1f") << ','
            << num(d.comm_seconds, "%.1f") << ',' << num(d.raw_counts, "%.6f") << ','
            << num(d.distilled_counts, "%.6f") << '\n';
    }
}

nlohmann::ordered_json summary_to_json(const std::string& scenario_name, const KpiSummary& kpi) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario_name;
    j["duration_days"] = kpi.duration_days;
    j["step_s"] = kpi.step_s;

    nlohmann::ordered_json k;
    k["avg_dual_link_attenuation_db"] = kpi.avg_dual_link_attenuation_db
                                            ? nlohmann::ordered_json(*kpi.avg_dual_link_attenuation_db)
                                            : nlohmann::ordered_json(nullptr);
    k["avg_atm_losses_db"] = kpi.avg_atm_losses_db ? nlohmann::ordered_json(*kpi.avg_atm_losses_db)
                                                   : nlohmann::ordered_json(nullptr);
    k["system_losses_db"] = kpi.system_losses_db;
    k["avg_dual_visibility_min_per_day"] = kpi.avg_dual_visibility_min_per_day;
    k["avg_communication_min_per_day"] = kpi.avg_communication_min_per_day;
    k["avg_raw_per_day"] = kpi.avg_raw_per_day;
    k["avg_unsifted_per_day"] = kpi.avg_unsifted_per_day;
    k["avg_distilled_per_day"] = kpi.avg_distilled_per_day;
    k["avg_qber"] = kpi.avg_qber ? nlohmann::ordered_json(*kpi.avg_qber)
                                 : nlohmann::ordered_json(nullptr);
    j["kpis"] = k;

    nlohmann::ordered_json c;
    c["dual_vis_samples"] = kpi.dual_vis_samples;
    c["comm_samples"] = kpi.comm_samples;
    c["flagged_samples"] = kpi.flagged_samples;
    j["counts"] = c;
    return j;
}

void write_summary_json(std::ostream& out, const std::string& scenario_name,
                        const KpiSummary& kpi) {
    out << summary_to_json(scenario_name, kpi).dump(2) << '\n';
}

std::string summary_table(const std::vector<std::pair<std::string, KpiSummary>>& columns) {
    static constexpr const char* kLabels[] = {
        "Average dual link attenuation (dB)*",
        "  of which: atmospheric losses <A1>+<A2> (dB)",
        "  of which: optical system losses eta_sys (dB)",
        "Average dual visibility time per day (min)",
        "Average communication time per day (min)",
        "Average raw coincidences per day",
        "Average distilled coincidences per day",
    };

    const auto cell = [](const KpiSummary& k, int row) -> std::string {
        switch (row) {
            case 0:
                return k.avg_dual_link_attenuation_db ? num(*k.avg_dual_link_attenuation_db, "%.1f")
                                                      : "-";
            case 1: return k.avg_atm_losses_db ? num(*k.avg_atm_losses_db, "%.1f") : "-";
            case 2: return num(k.system_losses_db, "%.1f");
            case 3: return num(k.avg_dual_visibility_min_per_day, "%.2f");
            case 4: return num(k.avg_communication_min_per_day, "%.2f");
            case 5: return num(k.avg_raw_per_day, "%.0f");
            case 6: return num(k.avg_distilled_per_day, "%.0f");
        }
        return "";
    };

    std::size_t label_width = 0;
    for (const char* label : kLabels) label_width = std::max(label_width, std::string(label).size());

    std::vector<std::size_t> widths;
    for (const auto& [name, kpi] : columns) {
        std::size_t w = name.size();
        for (int row = 0; row < 7; ++row) w = std::max(w, cell(kpi, row).size());
        widths.push_back(w + 2);
    }

    std::ostringstream out;
    out << std::string(label_width, ' ');
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const std::string& name = columns[c].first;
        out << std::string(widths[c] - name.size(), ' ') << name;
    }
    out << '\n';
    for (int row = 0; row < 7; ++row) {
        std::string line = kLabels[row];
        line += std::string(label_width - line.size(), ' ');
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const std::string value = cell(columns[c].second, row);
            line += std::string(widths[c] - value.size(), ' ') + value;
        }
        out << line << '\n';
    }
    return out.str();
}

}  // namespace entlink
