#include "entlink/astro.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace entlink {

namespace {

using constants::kDegPerRad;
using constants::kRadPerDeg;

void require_same_frame(const Vec3& a, const Vec3& b) {
    if (a.frame != b.frame) {
        throw std::invalid_argument("vector frame mismatch (ECI vs ECEF)");
    }
}

// Days from 1970-01-01 for a proleptic Gregorian date (Hinnant's algorithm).
constexpr long long days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

constexpr void civil_from_days(long long z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long yr = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y = static_cast<int>(yr + (m <= 2));
}

constexpr long long kUnixDaysAtJ2000 = days_from_civil(2000, 1, 1);

// Supported range for the Earth-rotation and solar models.
constexpr double kMinSupportedDays =
    static_cast<double>(days_from_civil(1990, 1, 1) - kUnixDaysAtJ2000) - 0.5;
constexpr double kMaxSupportedDays =
    static_cast<double>(days_from_civil(2061, 1, 1) - kUnixDaysAtJ2000) - 0.5;

void require_supported(const Epoch& epoch, const char* what) {
    const double d = epoch.days_since_j2000();
    if (!(d >= kMinSupportedDays && d < kMaxSupportedDays)) {
        throw std::out_of_range(std::string(what) +
                                ": epoch outside supported years 1990-2060");
    }
}

double wrap_two_pi(double angle) {
    angle = std::fmod(angle, 2.0 * constants::kPi);
    if (angle < 0.0) angle += 2.0 * constants::kPi;
    return angle;
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return {x / n, y / n, z / n, frame};
}

Vec3 operator+(const Vec3& a, const Vec3& b) {
    require_same_frame(a, b);
    return {a.x + b.x, a.y + b.y, a.z + b.z, a.frame};
}

Vec3 operator-(const Vec3& a, const Vec3& b) {
    require_same_frame(a, b);
    return {a.x - b.x, a.y - b.y, a.z - b.z, a.frame};
}

Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z, v.frame}; }

double dot(const Vec3& a, const Vec3& b) {
    require_same_frame(a, b);
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    require_same_frame(a, b);
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x, a.frame};
}

Epoch Epoch::from_days_since_j2000(double days) { return Epoch(days); }

Epoch Epoch::from_utc(const CalendarTime& utc) {
    if (utc.month < 1 || utc.month > 12 || utc.day < 1 || utc.day > 31 ||
        utc.hour < 0 || utc.hour > 23 || utc.minute < 0 || utc.minute > 59 ||
        utc.second < 0.0 || utc.second >= 61.0) {
        throw std::invalid_argument("invalid calendar time");
    }
    const long long days = days_from_civil(utc.year, static_cast<unsigned>(utc.month),
                                           static_cast<unsigned>(utc.day)) -
                           kUnixDaysAtJ2000;
    const double sec_of_day = utc.hour * 3600.0 + utc.minute * 60.0 + utc.second;
    return Epoch(static_cast<double>(days) + (sec_of_day - 43200.0) / constants::kSecondsPerDay);
}

Epoch Epoch::parse_iso(std::string_view text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double s = 0.0;
    char zone = 0;
    int consumed = 0;
    const std::string buf(text);
    if (std::sscanf(buf.c_str(), "%d-%d-%dT%d:%d:%lf%c%n", &y, &mo, &d, &h, &mi, &s,
                    &zone, &consumed) != 7 ||
        zone != 'Z' || consumed != static_cast<int>(buf.size())) {
        throw std::invalid_argument("expected ISO-8601 UTC time like 2021-07-01T00:00:00Z, got '" +
                                    buf + "'");
    }
    return from_utc({y, mo, d, h, mi, s});
}

Epoch Epoch::plus_seconds(double seconds) const {
    return Epoch(days_ + seconds / constants::kSecondsPerDay);
}

double Epoch::seconds_since(const Epoch& other) const {
    return (days_ - other.days_) * constants::kSecondsPerDay;
}

CalendarTime Epoch::to_utc() const {
    // Shift to days since the civil epoch, splitting at midnight.
    double day_part = std::floor(days_ + 0.5);
    double frac = days_ + 0.5 - day_part;
    // Round to 1 microsecond so formatting cannot show 60.000 seconds.
    double sec_of_day = std::round(frac * constants::kSecondsPerDay * 1e6) / 1e6;
    if (sec_of_day >= constants::kSecondsPerDay) {
        sec_of_day -= constants::kSecondsPerDay;
        day_part += 1.0;
    }
    int y;
    unsigned m, d;
    civil_from_days(static_cast<long long>(day_part) + kUnixDaysAtJ2000, y, m, d);
    const int hour = static_cast<int>(sec_of_day / 3600.0);
    const int minute = static_cast<int>((sec_of_day - hour * 3600.0) / 60.0);
    const double second = sec_of_day - hour * 3600.0 - minute * 60.0;
    return {y, static_cast<int>(m), static_cast<int>(d), hour, minute, second};
}

std::string Epoch::to_iso() const {
    const CalendarTime t = to_utc();
    const long long millis = std::llround(t.second * 1000.0);
    char buf[40];
    if (millis % 1000 == 0) {
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02lldZ", t.year, t.month,
                      t.day, t.hour, t.minute, millis / 1000);
    } else {
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02lld.%03lldZ", t.year,
                      t.month, t.day, t.hour, t.minute, millis / 1000, millis % 1000);
    }
    return buf;
}

GroundStation GroundStation::validated() const {
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) {
        throw std::invalid_argument("station '" + name + "': latitude out of [-90, 90]");
    }
    GroundStation s = *this;
    double lon = std::fmod(s.longitude_deg, 360.0);
    if (lon <= -180.0) lon += 360.0;
    if (lon > 180.0) lon -= 360.0;
    s.longitude_deg = lon;
    return s;
}

double earth_rotation_angle(const Epoch& epoch) {
    require_supported(epoch, "earth_rotation_angle");
    // IAU 1982 GMST polynomial (Vallado), seconds of time.
    const double T = epoch.days_since_j2000() / 36525.0;
    const double gmst_sec = 67310.54841 + (876600.0 * 3600.0 + 8640184.812866) * T +
                            0.093104 * T * T - 6.2e-6 * T * T * T;
    return wrap_two_pi(gmst_sec * (constants::kPi / 43200.0));
}

Vec3 geodetic_to_ecef(const GroundStation& station) {
    const GroundStation s = station.validated();
    const double lat = s.latitude_deg * kRadPerDeg;
    const double lon = s.longitude_deg * kRadPerDeg;
    const double f = constants::kWgs84Flattening;
    const double e2 = f * (2.0 - f);
    const double sin_lat = std::sin(lat);
    const double n = constants::kWgs84SemiMajorM / std::sqrt(1.0 - e2 * sin_lat * sin_lat);
    return {(n + s.altitude_m) * std::cos(lat) * std::cos(lon),
            (n + s.altitude_m) * std::cos(lat) * std::sin(lon),
            (n * (1.0 - e2) + s.altitude_m) * sin_lat, Frame::ecef};
}

namespace {

Vec3 rotate_about_pole(const Vec3& v, double angle, Frame out_frame) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z, out_frame};
}

}  // namespace

Vec3 ecef_to_eci(const Vec3& v, const Epoch& epoch) {
    if (v.frame != Frame::ecef) throw std::invalid_argument("ecef_to_eci: input is not ECEF");
    return rotate_about_pole(v, earth_rotation_angle(epoch), Frame::eci);
}

Vec3 eci_to_ecef(const Vec3& v, const Epoch& epoch) {
    if (v.frame != Frame::eci) throw std::invalid_argument("eci_to_ecef: input is not ECI");
    return rotate_about_pole(v, -earth_rotation_angle(epoch), Frame::ecef);
}

Vec3 sun_direction_eci(const Epoch& epoch) {
    require_supported(epoch, "sun_direction_eci");
    // Meeus low-precision solar model: mean anomaly + equation of center,
    // rotated from the ecliptic by the mean obliquity.
    const double T = epoch.days_since_j2000() / 36525.0;
    const double mean_anom =
        std::fmod(357.52911 + 35999.05029 * T - 0.0001537 * T * T, 360.0) * kRadPerDeg;
    const double mean_lon = 280.46646 + 36000.76983 * T + 0.0003032 * T * T;
    const double center = (1.914602 - 0.004817 * T - 0.000014 * T * T) * std::sin(mean_anom) +
                          (0.019993 - 0.000101 * T) * std::sin(2.0 * mean_anom) +
                          0.000289 * std::sin(3.0 * mean_anom);
    const double ecl_lon = std::fmod(mean_lon + center, 360.0) * kRadPerDeg;
    const double obliquity = (23.439291 - 0.0130042 * T) * kRadPerDeg;
    return {std::cos(ecl_lon), std::sin(ecl_lon) * std::cos(obliquity),
            std::sin(ecl_lon) * std::sin(obliquity), Frame::eci};
}

double sun_elevation_deg(const GroundStation& station, const Epoch& epoch) {
    const GroundStation s = station.validated();
    const Vec3 sun_ecef = eci_to_ecef(sun_direction_eci(epoch), epoch);
    const double lat = s.latitude_deg * kRadPerDeg;
    const double lon = s.longitude_deg * kRadPerDeg;
    const Vec3 up{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat),
                  Frame::ecef};
    return std::asin(dot(up, sun_ecef)) * kDegPerRad;
}

}  // namespace entlink
