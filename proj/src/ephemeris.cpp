#include "entlink/ephemeris.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entlink {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& message) {
    throw std::runtime_error(source + ":" + std::to_string(line) + ": " + message);
}

}  // namespace

Epoch EphemerisTable::first_epoch() const {
    return Epoch::from_days_since_j2000(epochs_days.front());
}

Epoch EphemerisTable::last_epoch() const {
    return Epoch::from_days_since_j2000(epochs_days.back());
}

void EphemerisTable::validate() const {
    if (epochs_days.size() != positions_km.size()) {
        throw std::runtime_error("ephemeris: epoch/position column length mismatch");
    }
    if (epochs_days.size() < 2) {
        throw std::runtime_error("ephemeris: need at least 2 rows");
    }
    for (std::size_t i = 1; i < epochs_days.size(); ++i) {
        if (!(epochs_days[i] > epochs_days[i - 1])) {
            throw std::runtime_error("ephemeris: epochs not strictly increasing at row " +
                                     std::to_string(i + 1));
        }
    }
}

EphemerisTable import_ephemeris(std::istream& in, const std::string& source_name) {
    EphemerisTable table;
    std::string line;
    int line_no = 0;
    bool have_frame = false;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;

        if (text[0] == '#') {
            const std::string low = lower(text);
            const auto pos = low.find("frame:");
            if (pos == std::string::npos) continue;  // ordinary comment
            const std::string frame = trim(low.substr(pos + 6));
            Frame parsed;
            if (frame == "eci") parsed = Frame::eci;
            else if (frame == "ecef") parsed = Frame::ecef;
            else fail(source_name, line_no, "unknown frame '" + frame + "' (expected ECI or ECEF)");
            if (have_frame && parsed != table.source_frame) {
                fail(source_name, line_no, "mixed frames: a single frame per file is required");
            }
            table.source_frame = parsed;
            have_frame = true;
            continue;
        }

        if (!have_header) {
            if (lower(text) != "epoch,x_km,y_km,z_km") {
                fail(source_name, line_no, "expected header 'epoch,x_km,y_km,z_km'");
            }
            have_header = true;
            continue;
        }

        std::stringstream row(text);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(trim(field));
        if (fields.size() != 4) {
            fail(source_name, line_no, "expected 4 columns, got " + std::to_string(fields.size()));
        }

        Epoch epoch;
        try {
            epoch = Epoch::parse_iso(fields[0]);
        } catch (const std::exception& e) {
            fail(source_name, line_no, e.what());
        }
        double xyz[3];
        for (int k = 0; k < 3; ++k) {
            try {
                std::size_t used = 0;
                xyz[k] = std::stod(fields[k + 1], &used);
                if (used != fields[k + 1].size()) throw std::invalid_argument("trailing garbage");
            } catch (const std::exception&) {
                fail(source_name, line_no, "bad numeric value '" + fields[k + 1] + "'");
            }
        }
        if (!table.epochs_days.empty() &&
            !(epoch.days_since_j2000() > table.epochs_days.back())) {
            fail(source_name, line_no, "epochs not strictly increasing");
        }

        const Frame frame = have_frame ? table.source_frame : Frame::eci;
        Vec3 pos{xyz[0], xyz[1], xyz[2], frame};
        if (frame == Frame::ecef) pos = ecef_to_eci(pos, epoch);
        table.epochs_days.push_back(epoch.days_since_j2000());
        table.positions_km.push_back(pos);
    }

    if (!have_frame) {
        throw std::runtime_error(source_name + ": missing '# frame: ECI|ECEF' declaration line");
    }
    if (!have_header) {
        throw std::runtime_error(source_name + ": missing 'epoch,x_km,y_km,z_km' header");
    }
    table.validate();
    return table;
}

EphemerisTable import_ephemeris_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ephemeris file: " + path);
    return import_ephemeris(in, path);
}

void write_ephemeris_csv(std::ostream& out, const EphemerisTable& table) {
    out << "# frame: ECI\n";
    out << "epoch,x_km,y_km,z_km\n";
    char buf[160];
    for (std::size_t i = 0; i < table.size(); ++i) {
        const Vec3& p = table.positions_km[i];
        std::snprintf(buf, sizeof(buf), "%s,%.9f,%.9f,%.9f\n",
                      Epoch::from_days_since_j2000(table.epochs_days[i]).to_iso().c_str(), p.x,
                      p.y, p.z);
        out << buf;
    }
}

EphemerisTable tabulate_orbit(const OrbitElements& elements, const Epoch& start, double step_s,
                              long long n_steps) {
    if (n_steps < 2) throw std::invalid_argument("tabulate_orbit: need at least 2 steps");
    EphemerisTable table;
    table.source_frame = Frame::eci;
    table.epochs_days.reserve(static_cast<std::size_t>(n_steps));
    table.positions_km.reserve(static_cast<std::size_t>(n_steps));
    for (long long i = 0; i < n_steps; ++i) {
        const Epoch t = start.plus_seconds(static_cast<double>(i) * step_s);
        table.epochs_days.push_back(t.days_since_j2000());
        table.positions_km.push_back(propagate(elements, t).position_km);
    }
    return table;
}

Vec3 interpolate_position(const EphemerisTable& table, const Epoch& t) {
    table.validate();
    const double td = t.days_since_j2000();
    const auto& ts = table.epochs_days;
    if (td < ts.front() || td > ts.back()) {
        throw std::out_of_range("ephemeris does not cover epoch " + t.to_iso());
    }

    // Segment index: ts[i] <= td <= ts[i+1].
    const auto it = std::upper_bound(ts.begin(), ts.end(), td);
    std::size_t i = (it == ts.begin()) ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
    if (i >= ts.size() - 1) i = ts.size() - 2;

    // Finite-difference slopes (km per day), one-sided at the ends.
    const auto slope = [&](std::size_t k) -> Vec3 {
        if (k == 0) {
            const double h = ts[1] - ts[0];
            return (1.0 / h) * (table.positions_km[1] - table.positions_km[0]);
        }
        if (k == ts.size() - 1) {
            const double h = ts[k] - ts[k - 1];
            return (1.0 / h) * (table.positions_km[k] - table.positions_km[k - 1]);
        }
        const double h = ts[k + 1] - ts[k - 1];
        return (1.0 / h) * (table.positions_km[k + 1] - table.positions_km[k - 1]);
    };

    const double h = ts[i + 1] - ts[i];
    const double s = (td - ts[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;

    const Vec3& p0 = table.positions_km[i];
    const Vec3& p1 = table.positions_km[i + 1];
    const Vec3 m0 = slope(i);
    const Vec3 m1 = slope(i + 1);
    return h00 * p0 + (h10 * h) * m0 + h01 * p1 + (h11 * h) * m1;
}

}  // namespace entlink
