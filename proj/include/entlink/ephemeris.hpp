/**
 * CSV ephemeris import/export and position interpolation.
 *
 * File format: a frame declaration line, a fixed header, then one row per
 * epoch in strictly increasing time order (uniform step not required):
 *
 *   # frame: ECI
 *   epoch,x_km,y_km,z_km
 *   2021-07-01T00:00:00Z,-1042.8,6899.1,12.0
 *
 * ECEF tables are rotated into ECI at load; everything downstream works in
 * a single inertial frame.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "entlink/astro.hpp"
#include "entlink/orbit.hpp"

namespace entlink {

struct EphemerisTable {
    Frame source_frame = Frame::eci;     // as declared in the file
    std::vector<double> epochs_days;     // days since J2000, strictly increasing
    std::vector<Vec3> positions_km;      // ECI

    std::size_t size() const { return epochs_days.size(); }
    Epoch first_epoch() const;
    Epoch last_epoch() const;
    void validate() const;
};

/// Parse a table; source_name is used in diagnostics. Throws
/// std::runtime_error on malformed content (with the offending row number).
EphemerisTable import_ephemeris(std::istream& in, const std::string& source_name);
EphemerisTable import_ephemeris_file(const std::string& path);

/// Emit the table in the file format above, always in ECI.
void write_ephemeris_csv(std::ostream& out, const EphemerisTable& table);

/// Tabulate a propagated trajectory on a uniform grid.
EphemerisTable tabulate_orbit(const OrbitElements& elements, const Epoch& start,
                              double step_s, long long n_steps);

/// Cubic Hermite interpolation with finite-difference slopes. Throws
/// std::out_of_range when t lies outside the table span.
Vec3 interpolate_position(const EphemerisTable& table, const Epoch& t);

}  // namespace entlink
