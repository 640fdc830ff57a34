#include "entlink/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace entlink {

using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Preset library (Paris/Nice demonstrator configurations)
// ---------------------------------------------------------------------------

constexpr const char* kStartIso = "2021-07-01T00:00:00Z";

GroundStation paris() { return {"Paris", 48.85, 2.35, 0.0}; }
GroundStation nice() { return {"Nice", 43.70, 7.25, 0.0}; }

struct OrbitPreset {
    const char* tag;
    double altitude_km;
    double inclination_deg;
    double raan_deg;
    double tx_diameter_m;
    double rx_diameter_m;
};

// The SSO node is placed for a midnight local solar time of ascending-node
// crossing at the start epoch (sun RA 100.2 deg on 2021-07-01).
constexpr OrbitPreset kOrbits[] = {
    {"leo", 600.0, 50.0, 0.0, 0.3, 0.8},
    {"meo", 8000.0, 60.0, 0.0, 0.5, 1.0},
    {"sso", 600.0, 97.8, 280.2, 0.3, 0.8},
};

struct BandPreset {
    const char* tag;  // "810" / "1550"
    double wavelength_nm;
    double zenith_attenuation_db;
    double optics_transmission;
    double pointing_loss;
    double background_rate_cps;
    OperationMode mode;
};

constexpr BandPreset kBands[] = {
    {"810", 810.0, 3.0, 0.2, 0.3, 400.0, OperationMode::night_only},
    {"1550", 1550.0, 2.0, 0.35, 0.2, 100.0, OperationMode::day_and_night},
};

struct DetectorTag {
    const char* tag;  // "snspd" / "si" / "iga"
    DetectorKind kind;
};

constexpr DetectorTag kDetectors[] = {
    {"snspd", DetectorKind::snspd},
    {"si", DetectorKind::si_apd},
    {"iga", DetectorKind::ingaas_apd},
};

Scenario build_preset(const OrbitPreset& orbit, const BandPreset& band,
                      const DetectorTag& detector) {
    Scenario s;
    s.name = std::string(orbit.tag) + "-" + band.tag + "-" + detector.tag;
    s.stations = {paris(), nice()};

    OrbitElements elements;
    elements.semi_major_axis_km = constants::kEarthRadiusKm + orbit.altitude_km;
    elements.eccentricity = 0.0;
    elements.inclination_deg = orbit.inclination_deg;
    elements.raan_deg = orbit.raan_deg;
    elements.arg_perigee_deg = 0.0;
    elements.mean_anomaly_deg = 0.0;
    elements.epoch = Epoch::parse_iso(kStartIso);
    s.orbit = elements;

    LinkParams link;
    link.wavelength_m = band.wavelength_nm * 1e-9;
    link.tx_diameter_m = orbit.tx_diameter_m;
    link.rx_diameter_m = orbit.rx_diameter_m;
    link.zenith_attenuation_db = band.zenith_attenuation_db;
    link.tx_transmission = 0.8;
    link.rx_transmission = 0.8;
    link.optics_transmission = band.optics_transmission;
    link.pointing_loss = band.pointing_loss;
    link.detector_efficiency = detector_preset(detector.kind).pde;
    link.fried_parameter_m = 1e6;
    s.link = {link, link};

    QuantumParams quantum;
    quantum.mean_pairs_per_window = 0.02;
    quantum.coincidence_window_s = 200e-12;
    quantum.sifting_factor = 0.5;
    quantum.error_correction_efficiency = 1.22;
    quantum.noise_error_rate = 0.5;
    quantum.polarization_error_rate = 0.01;
    quantum.dark_count_rate_cps = detector_preset(detector.kind).dark_count_rate_cps;
    quantum.background_rate_cps = band.background_rate_cps;
    quantum.detectors_per_station = 4;
    s.quantum = quantum;

    s.gates.beta_min_deg = 30.0;
    s.gates.twilight = Twilight::astronomical;
    s.gates.mode = band.mode;

    s.time.start = Epoch::parse_iso(kStartIso);
    s.time.step_s = 10.0;
    s.time.duration_days = 365.0;
    return s;
}

// ---------------------------------------------------------------------------
// Strict JSON access helpers
// ---------------------------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

void reject_unknown_keys(const ordered_json& obj, const std::string& path,
                         const std::set<std::string>& known) {
    for (const auto& item : obj.items()) {
        if (!known.count(item.key())) {
            fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
        }
    }
}

const ordered_json* find(const ordered_json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double require_number(const ordered_json& obj, const std::string& path, const std::string& key) {
    const ordered_json* v = find(obj, key);
    if (!v) fail(path + "." + key, "missing required field");
    if (!v->is_number()) fail(path + "." + key, "expected a number");
    return v->get<double>();
}

double number_or(const ordered_json& obj, const std::string& path, const std::string& key,
                 double fallback) {
    const ordered_json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) fail(path + "." + key, "expected a number");
    return v->get<double>();
}

std::string require_string(const ordered_json& obj, const std::string& path,
                           const std::string& key) {
    const ordered_json* v = find(obj, key);
    if (!v) fail(path + "." + key, "missing required field");
    if (!v->is_string()) fail(path + "." + key, "expected a string");
    return v->get<std::string>();
}

void check_range(double value, double lo, double hi, const std::string& path) {
    if (!(value >= lo && value <= hi)) {
        std::ostringstream msg;
        msg << "value " << value << " out of range [" << lo << ", " << hi << "]";
        fail(path, msg.str());
    }
}

Epoch parse_epoch_field(const ordered_json& obj, const std::string& path,
                        const std::string& key) {
    const std::string text = require_string(obj, path, key);
    try {
        return Epoch::parse_iso(text);
    } catch (const std::exception& e) {
        fail(path + "." + key, e.what());
    }
}

// Last-writer-wins deep merge; objects merge recursively, everything else
// (including arrays) is replaced outright.
void deep_merge(ordered_json& base, const ordered_json& overlay) {
    if (!base.is_object() || !overlay.is_object()) {
        base = overlay;
        return;
    }
    for (const auto& item : overlay.items()) {
        if (base.contains(item.key())) {
            deep_merge(base[item.key()], item.value());
        } else {
            base[item.key()] = item.value();
        }
    }
}

// ---------------------------------------------------------------------------
// Section parsers
// ---------------------------------------------------------------------------

GroundStation parse_station(const ordered_json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path, {"name", "latitude_deg", "longitude_deg", "altitude_m"});
    GroundStation st;
    st.name = require_string(obj, path, "name");
    st.latitude_deg = require_number(obj, path, "latitude_deg");
    check_range(st.latitude_deg, -90.0, 90.0, path + ".latitude_deg");
    st.longitude_deg = require_number(obj, path, "longitude_deg");
    st.altitude_m = number_or(obj, path, "altitude_m", 0.0);
    return st.validated();
}

std::variant<OrbitElements, EphemerisSource> parse_orbit(const ordered_json& obj,
                                                         const Epoch& default_epoch,
                                                         const std::string& base_dir) {
    const std::string path = "orbit";
    if (!obj.is_object()) fail(path, "expected an object");
    if (find(obj, "ephemeris")) {
        reject_unknown_keys(obj, path, {"ephemeris"});
        EphemerisSource src;
        src.path = require_string(obj, path, "ephemeris");
        std::filesystem::path file(src.path);
        if (file.is_relative() && !base_dir.empty()) file = std::filesystem::path(base_dir) / file;
        try {
            src.table = import_ephemeris_file(file.string());
        } catch (const std::exception& e) {
            fail(path + ".ephemeris", e.what());
        }
        return src;
    }

    reject_unknown_keys(obj, path,
                        {"altitude_km", "semi_major_axis_km", "eccentricity", "inclination_deg",
                         "raan_deg", "arg_perigee_deg", "mean_anomaly_deg", "epoch"});
    OrbitElements el;
    const bool has_alt = find(obj, "altitude_km") != nullptr;
    const bool has_sma = find(obj, "semi_major_axis_km") != nullptr;
    if (has_alt == has_sma) {
        fail(path, "specify exactly one of altitude_km or semi_major_axis_km");
    }
    el.semi_major_axis_km = has_alt
                                ? constants::kEarthRadiusKm + require_number(obj, path, "altitude_km")
                                : require_number(obj, path, "semi_major_axis_km");
    el.eccentricity = number_or(obj, path, "eccentricity", 0.0);
    check_range(el.eccentricity, 0.0, 1.0 - 1e-12, path + ".eccentricity");
    el.inclination_deg = require_number(obj, path, "inclination_deg");
    check_range(el.inclination_deg, 0.0, 180.0, path + ".inclination_deg");
    el.raan_deg = number_or(obj, path, "raan_deg", 0.0);
    el.arg_perigee_deg = number_or(obj, path, "arg_perigee_deg", 0.0);
    el.mean_anomaly_deg = number_or(obj, path, "mean_anomaly_deg", 0.0);
    el.epoch = find(obj, "epoch") ? parse_epoch_field(obj, path, "epoch") : default_epoch;
    try {
        el.validate();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return el;
}

LinkParams parse_link(const ordered_json& obj) {
    const std::string path = "link";
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path,
                        {"wavelength_nm", "tx_diameter_m", "rx_diameter_m",
                         "zenith_attenuation_db", "tx_transmission", "rx_transmission",
                         "optics_transmission", "pointing_loss", "detector", "pde",
                         "fried_parameter_m"});
    LinkParams link;
    link.wavelength_m = require_number(obj, path, "wavelength_nm") * 1e-9;
    link.tx_diameter_m = require_number(obj, path, "tx_diameter_m");
    link.rx_diameter_m = require_number(obj, path, "rx_diameter_m");
    link.zenith_attenuation_db = require_number(obj, path, "zenith_attenuation_db");
    link.tx_transmission = require_number(obj, path, "tx_transmission");
    link.rx_transmission = require_number(obj, path, "rx_transmission");
    link.optics_transmission = require_number(obj, path, "optics_transmission");
    link.pointing_loss = require_number(obj, path, "pointing_loss");
    link.fried_parameter_m = number_or(obj, path, "fried_parameter_m", 1e6);

    const ordered_json* detector = find(obj, "detector");
    const ordered_json* pde = find(obj, "pde");
    if (detector && pde) fail(path + ".pde", "conflicts with link.detector; specify one");
    if (!detector && !pde) fail(path, "specify link.detector or link.pde");
    if (pde) {
        if (!pde->is_number()) fail(path + ".pde", "expected a number");
        link.detector_efficiency = pde->get<double>();
    } else {
        if (!detector->is_string()) fail(path + ".detector", "expected a string");
        const std::string name = detector->get<std::string>();
        if (name == "snspd") link.detector_efficiency = detector_preset(DetectorKind::snspd).pde;
        else if (name == "si-apd") link.detector_efficiency = detector_preset(DetectorKind::si_apd).pde;
        else if (name == "ingaas-apd") link.detector_efficiency = detector_preset(DetectorKind::ingaas_apd).pde;
        else fail(path + ".detector", "unknown detector '" + name +
                                      "' (expected snspd, si-apd or ingaas-apd)");
    }
    try {
        link.validate();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return link;
}

QuantumParams parse_quantum(const ordered_json& obj) {
    const std::string path = "quantum";
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path,
                        {"mu", "coincidence_window_ps", "sifting_factor",
                         "error_correction_efficiency", "e0", "polarization_error",
                         "dark_count_rate_cps", "background_rate_cps", "detectors_per_station"});
    QuantumParams q;
    q.mean_pairs_per_window = require_number(obj, path, "mu");
    q.coincidence_window_s = require_number(obj, path, "coincidence_window_ps") * 1e-12;
    q.sifting_factor = require_number(obj, path, "sifting_factor");
    q.error_correction_efficiency = require_number(obj, path, "error_correction_efficiency");
    q.noise_error_rate = require_number(obj, path, "e0");
    q.polarization_error_rate = require_number(obj, path, "polarization_error");
    q.dark_count_rate_cps = number_or(obj, path, "dark_count_rate_cps", 100.0);
    q.background_rate_cps = require_number(obj, path, "background_rate_cps");
    const double n_det = number_or(obj, path, "detectors_per_station", 4.0);
    if (n_det != std::floor(n_det)) fail(path + ".detectors_per_station", "expected an integer");
    q.detectors_per_station = static_cast<int>(n_det);
    try {
        q.validate();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return q;
}

Gates parse_gates(const ordered_json& obj) {
    const std::string path = "gates";
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path, {"beta_min_deg", "twilight", "operation_mode"});
    Gates g;
    g.beta_min_deg = require_number(obj, path, "beta_min_deg");
    if (!(g.beta_min_deg >= 0.0 && g.beta_min_deg < 90.0)) {
        fail(path + ".beta_min_deg", "must be in [0, 90) degrees");
    }
    const std::string twilight = require_string(obj, path, "twilight");
    if (twilight == "civil") g.twilight = Twilight::civil;
    else if (twilight == "nautical") g.twilight = Twilight::nautical;
    else if (twilight == "astronomical") g.twilight = Twilight::astronomical;
    else fail(path + ".twilight", "expected civil, nautical or astronomical");
    const std::string mode = require_string(obj, path, "operation_mode");
    if (mode == "night_only") g.mode = OperationMode::night_only;
    else if (mode == "day_and_night") g.mode = OperationMode::day_and_night;
    else fail(path + ".operation_mode", "expected night_only or day_and_night");
    return g;
}

TimeGrid parse_time(const ordered_json& obj) {
    const std::string path = "time";
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, path, {"start", "step_s", "duration_days"});
    TimeGrid t;
    t.start = parse_epoch_field(obj, path, "start");
    t.step_s = require_number(obj, path, "step_s");
    if (!(t.step_s > 0.0)) fail(path + ".step_s", "must be > 0");
    t.duration_days = require_number(obj, path, "duration_days");
    if (!(t.duration_days >= 0.0)) fail(path + ".duration_days", "must be >= 0");
    return t;
}

Scenario parse_resolved(const ordered_json& doc, const std::string& base_dir) {
    reject_unknown_keys(doc, "",
                        {"name", "stations", "orbit", "link", "quantum", "gates", "time"});
    Scenario s;
    if (const ordered_json* name = find(doc, "name")) {
        if (!name->is_string()) fail("name", "expected a string");
        s.name = name->get<std::string>();
    }

    const ordered_json* stations = find(doc, "stations");
    if (!stations) fail("stations", "missing required field");
    if (!stations->is_array() || stations->size() != 2) {
        fail("stations", "expected an array of exactly two stations");
    }
    s.stations[0] = parse_station((*stations)[0], "stations[0]");
    s.stations[1] = parse_station((*stations)[1], "stations[1]");

    const ordered_json* time = find(doc, "time");
    if (!time) fail("time", "missing required field");
    s.time = parse_time(*time);

    const ordered_json* orbit = find(doc, "orbit");
    if (!orbit) fail("orbit", "missing required field");
    s.orbit = parse_orbit(*orbit, s.time.start, base_dir);

    const ordered_json* link = find(doc, "link");
    if (!link) fail("link", "missing required field");
    const LinkParams link_params = parse_link(*link);
    s.link = {link_params, link_params};

    const ordered_json* quantum = find(doc, "quantum");
    if (!quantum) fail("quantum", "missing required field");
    s.quantum = parse_quantum(*quantum);

    const ordered_json* gates = find(doc, "gates");
    if (!gates) fail("gates", "missing required field");
    s.gates = parse_gates(*gates);

    return s;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& orbit : kOrbits) {
        for (const auto& band : kBands) {
            for (const auto& det : kDetectors) {
                // The paper's detector pairings: SNSPD at both wavelengths,
                // Si-APD at 810 nm, InGaAs-APD at 1550 nm.
                if (det.kind == DetectorKind::si_apd && std::string(band.tag) != "810") continue;
                if (det.kind == DetectorKind::ingaas_apd && std::string(band.tag) != "1550")
                    continue;
                names.push_back(std::string(orbit.tag) + "-" + band.tag + "-" + det.tag);
            }
        }
    }
    return names;
}

bool is_preset_name(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario preset_scenario(const std::string& name) {
    if (is_preset_name(name)) {
        for (const auto& orbit : kOrbits) {
            for (const auto& band : kBands) {
                for (const auto& det : kDetectors) {
                    if (name == std::string(orbit.tag) + "-" + band.tag + "-" + det.tag) {
                        return build_preset(orbit, band, det);
                    }
                }
            }
        }
    }
    throw ConfigError("preset: unknown preset '" + name + "'");
}

Scenario parse_config(const std::string& json_text, const std::string& base_dir) {
    ordered_json user;
    try {
        user = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (!user.is_object()) throw ConfigError("top level: expected a JSON object");

    ordered_json doc;
    if (const ordered_json* preset = find(user, "preset")) {
        if (!preset->is_string()) throw ConfigError("preset: expected a string");
        doc = scenario_to_json(preset_scenario(preset->get<std::string>()));
        ordered_json overrides = user;
        overrides.erase("preset");
        // Switching the trajectory source replaces the orbit section outright;
        // element fields from the preset must not leak into an ephemeris orbit.
        if (overrides.contains("orbit") && overrides["orbit"].is_object()) {
            if (overrides["orbit"].contains("ephemeris")) {
                doc.erase("orbit");
            } else if (overrides["orbit"].contains("altitude_km") && doc.contains("orbit")) {
                doc["orbit"].erase("semi_major_axis_km");
            }
        }
        deep_merge(doc, overrides);
    } else {
        doc = user;
    }
    return parse_resolved(doc, base_dir);
}

Scenario parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::filesystem::path(path).parent_path().string());
}

nlohmann::ordered_json scenario_to_json(const Scenario& scenario) {
    ordered_json doc;
    doc["name"] = scenario.name;

    doc["stations"] = ordered_json::array();
    for (const GroundStation& st : scenario.stations) {
        doc["stations"].push_back({{"name", st.name},
                                   {"latitude_deg", st.latitude_deg},
                                   {"longitude_deg", st.longitude_deg},
                                   {"altitude_m", st.altitude_m}});
    }

    if (const auto* el = std::get_if<OrbitElements>(&scenario.orbit)) {
        doc["orbit"] = {{"semi_major_axis_km", el->semi_major_axis_km},
                        {"eccentricity", el->eccentricity},
                        {"inclination_deg", el->inclination_deg},
                        {"raan_deg", el->raan_deg},
                        {"arg_perigee_deg", el->arg_perigee_deg},
                        {"mean_anomaly_deg", el->mean_anomaly_deg},
                        {"epoch", el->epoch.to_iso()}};
    } else {
        doc["orbit"] = {{"ephemeris", std::get<EphemerisSource>(scenario.orbit).path}};
    }

    const LinkParams& link = scenario.link[0];
    doc["link"] = {{"wavelength_nm", link.wavelength_m * 1e9},
                   {"tx_diameter_m", link.tx_diameter_m},
                   {"rx_diameter_m", link.rx_diameter_m},
                   {"zenith_attenuation_db", link.zenith_attenuation_db},
                   {"tx_transmission", link.tx_transmission},
                   {"rx_transmission", link.rx_transmission},
                   {"optics_transmission", link.optics_transmission},
                   {"pointing_loss", link.pointing_loss},
                   {"pde", link.detector_efficiency},
                   {"fried_parameter_m", link.fried_parameter_m}};

    const QuantumParams& q = scenario.quantum;
    doc["quantum"] = {{"mu", q.mean_pairs_per_window},
                      {"coincidence_window_ps", q.coincidence_window_s * 1e12},
                      {"sifting_factor", q.sifting_factor},
                      {"error_correction_efficiency", q.error_correction_efficiency},
                      {"e0", q.noise_error_rate},
                      {"polarization_error", q.polarization_error_rate},
                      {"dark_count_rate_cps", q.dark_count_rate_cps},
                      {"background_rate_cps", q.background_rate_cps},
                      {"detectors_per_station", q.detectors_per_station}};

    const char* twilight = scenario.gates.twilight == Twilight::civil ? "civil"
                           : scenario.gates.twilight == Twilight::nautical ? "nautical"
                                                                           : "astronomical";
    doc["gates"] = {{"beta_min_deg", scenario.gates.beta_min_deg},
                    {"twilight", twilight},
                    {"operation_mode", scenario.gates.mode == OperationMode::night_only
                                           ? "night_only"
                                           : "day_and_night"}};

    doc["time"] = {{"start", scenario.time.start.to_iso()},
                   {"step_s", scenario.time.step_s},
                   {"duration_days", scenario.time.duration_days}};
    return doc;
}

}  // namespace entlink
