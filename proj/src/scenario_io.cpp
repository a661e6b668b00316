#include "iree/scenario_io.hpp"

#include "iree/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace iree {

namespace {

using nlohmann::json;

constexpr double kSecondsPerYear = 31536000.0;
constexpr double kSecondsPerHour = 3600.0;
constexpr double kJoulesPerKwh = 3.6e6;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return item.key() == k; }) == allowed.end()) {
            fail("unknown key \"" + item.key() + "\" in " + where);
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail("missing key \"" + std::string(key) + "\" in " + where);
    }
    return *it;
}

double as_number(const json& v, const std::string& what) {
    if (!v.is_number()) {
        fail(what + " must be a number");
    }
    return v.get<double>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
    return as_number(require(obj, key, where), where + "." + key);
}

double get_number_or(const json& obj, const char* key, const std::string& where, double fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : as_number(*it, where + "." + key);
}

Vec3 get_vec3(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_array() || v.size() != 3) {
        fail(where + "." + key + " must be an array of 3 numbers");
    }
    return Vec3(as_number(v[0], key), as_number(v[1], key), as_number(v[2], key));
}

// Exactly one of the listed keys must be present; returns its index.
std::size_t exactly_one_of(const json& obj, std::initializer_list<const char*> keys,
                           const std::string& where) {
    std::size_t found = keys.size();
    std::size_t idx = 0;
    for (const char* k : keys) {
        if (obj.contains(k)) {
            if (found != keys.size()) {
                fail(where + " must set exactly one of \"" + std::string(*keys.begin()) + "\"-style keys");
            }
            found = idx;
        }
        ++idx;
    }
    if (found == keys.size()) {
        std::string names;
        for (const char* k : keys) {
            names += names.empty() ? "\"" : " or \"";
            names += k;
            names += "\"";
        }
        fail(where + " needs " + names);
    }
    return found;
}

PathlossModel parse_pathloss(const json& obj, const std::string& where) {
    check_keys(obj, {"kind", "intercept_db", "slope_db_per_decade"}, where);
    PathlossModel m;
    const std::string kind = require(obj, "kind", where).get<std::string>();
    if (kind == "log-distance") {
        m.kind = PathlossKind::LogDistance;
        m.slope_db_per_decade = get_number(obj, "slope_db_per_decade", where);
    } else if (kind == "fixed") {
        m.kind = PathlossKind::Fixed;
        m.slope_db_per_decade = get_number_or(obj, "slope_db_per_decade", where, 0.0);
    } else {
        fail(where + ".kind must be \"log-distance\" or \"fixed\"");
    }
    m.intercept_db = get_number(obj, "intercept_db", where);
    return m;
}

BaseStation parse_station(const json& obj, double epoch_s, const std::string& where) {
    check_keys(obj,
               {"kind", "position", "tx_power_dbm", "tx_power_w", "bandwidth_hz", "circuit_power_w",
                "idle_power_w", "idle_prob", "amp_efficiency", "hover_power_w", "antenna_gain_dbi",
                "pathloss", "capex_per_year", "capex_per_hour", "capex_per_epoch"},
               where);
    BaseStation s;
    const std::string kind = require(obj, "kind", where).get<std::string>();
    if (kind == "terrestrial") {
        s.kind = StationKind::Terrestrial;
    } else if (kind == "airborne") {
        s.kind = StationKind::Airborne;
    } else if (kind == "satellite") {
        s.kind = StationKind::Satellite;
    } else {
        fail(where + ".kind must be \"terrestrial\", \"airborne\", or \"satellite\"");
    }
    s.position = get_vec3(obj, "position", where);
    if (exactly_one_of(obj, {"tx_power_dbm", "tx_power_w"}, where) == 0) {
        s.tx_power_w = dbm_to_watts(get_number(obj, "tx_power_dbm", where));
    } else {
        s.tx_power_w = get_number(obj, "tx_power_w", where);
    }
    s.bandwidth_hz = get_number(obj, "bandwidth_hz", where);
    s.circuit_power_w = get_number(obj, "circuit_power_w", where);
    s.idle_power_w = get_number_or(obj, "idle_power_w", where, 0.0);
    s.idle_prob = get_number_or(obj, "idle_prob", where, 0.0);
    s.amp_efficiency = get_number_or(obj, "amp_efficiency", where, 1.0);
    s.hover_power_w = get_number_or(obj, "hover_power_w", where, 0.0);
    s.antenna_gain_dbi = get_number_or(obj, "antenna_gain_dbi", where, 0.0);
    s.pathloss = parse_pathloss(require(obj, "pathloss", where), where + ".pathloss");
    s.capex_rate = get_number_or(obj, "capex_per_epoch", where, 0.0) +
                   get_number_or(obj, "capex_per_hour", where, 0.0) * epoch_s / kSecondsPerHour +
                   get_number_or(obj, "capex_per_year", where, 0.0) * epoch_s / kSecondsPerYear;
    return s;
}

Mat3 parse_cov(const json& obj, const std::string& where) {
    const std::size_t which = exactly_one_of(obj, {"sigma2", "cov_diag", "cov"}, where);
    if (which == 0) {
        return as_number(obj["sigma2"], where + ".sigma2") * Mat3::Identity();
    }
    if (which == 1) {
        const Vec3 d = get_vec3(obj, "cov_diag", where);
        return d.asDiagonal();
    }
    const json& rows = obj["cov"];
    if (!rows.is_array() || rows.size() != 3) {
        fail(where + ".cov must be a 3x3 array");
    }
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        if (!rows[i].is_array() || rows[i].size() != 3) {
            fail(where + ".cov must be a 3x3 array");
        }
        for (int j = 0; j < 3; ++j) {
            m(i, j) = as_number(rows[i][j], where + ".cov");
        }
    }
    return m;
}

SpatialGMM parse_traffic_gmm(const json& traffic, const std::string& where) {
    const json& comps = require(traffic, "components", where);
    if (!comps.is_array() || comps.empty()) {
        fail(where + ".components must be a non-empty array");
    }
    std::vector<WeightedGaussian> parts;
    parts.reserve(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string cw = where + ".components[" + std::to_string(i) + "]";
        check_keys(comps[i], {"weight", "mean", "sigma2", "cov_diag", "cov"}, cw);
        const double w = get_number(comps[i], "weight", cw);
        const Vec3 mean = get_vec3(comps[i], "mean", cw);
        try {
            parts.push_back({w, Gaussian3(mean, parse_cov(comps[i], cw))});
        } catch (const InvalidCovarianceError& e) {
            fail(cw + ": " + e.what());
        }
    }
    try {
        return SpatialGMM(std::move(parts));
    } catch (const std::invalid_argument& e) {
        fail("traffic_gmm: " + std::string(e.what()));
    }
}

GridDims parse_grid(const json& v) {
    if (v.is_number_integer()) {
        const int n = v.get<int>();
        return {n, n, n};
    }
    if (v.is_array() && v.size() == 3) {
        return {v[0].get<int>(), v[1].get<int>(), v[2].get<int>()};
    }
    fail("grid must be an integer or an array of 3 integers");
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    return 1 + static_cast<std::size_t>(
                   std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

} // namespace

LoadedScenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("parse error at line " + std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
    }
    if (!j.is_object()) {
        fail("config root must be an object");
    }
    check_keys(j,
               {"region", "grid", "epoch_s", "noise_psd_dbm_per_hz", "noise_psd_w_per_hz",
                "interference", "traffic", "stations", "cost"},
               "top level");

    Scenario sc;
    const json& region = require(j, "region", "top level");
    check_keys(region, {"min", "max"}, "region");
    sc.region.lo = get_vec3(region, "min", "region");
    sc.region.hi = get_vec3(region, "max", "region");

    if (j.contains("grid")) {
        sc.grid = parse_grid(j["grid"]);
    }
    sc.epoch_s = get_number_or(j, "epoch_s", "top level", 3600.0);

    if (exactly_one_of(j, {"noise_psd_dbm_per_hz", "noise_psd_w_per_hz"}, "top level") == 0) {
        sc.noise_psd_w_per_hz = dbm_to_watts(get_number(j, "noise_psd_dbm_per_hz", "top level"));
    } else {
        sc.noise_psd_w_per_hz = get_number(j, "noise_psd_w_per_hz", "top level");
    }

    if (j.contains("interference")) {
        const std::string mode = j["interference"].get<std::string>();
        if (mode == "none") {
            sc.interference = InterferenceMode::None;
        } else if (mode == "co-channel-sum") {
            sc.interference = InterferenceMode::CoChannelSum;
        } else {
            fail("interference must be \"none\" or \"co-channel-sum\"");
        }
    }

    const json& traffic = require(j, "traffic", "top level");
    check_keys(traffic, {"total_bits", "components"}, "traffic");
    sc.traffic_total_bits = get_number(traffic, "total_bits", "traffic");
    sc.traffic_gmm = parse_traffic_gmm(traffic, "traffic");

    const json& stations = require(j, "stations", "top level");
    if (!stations.is_array()) {
        fail("stations must be an array");
    }
    for (std::size_t i = 0; i < stations.size(); ++i) {
        sc.stations.push_back(
            parse_station(stations[i], sc.epoch_s, "stations[" + std::to_string(i) + "]"));
    }

    CostModel cost;
    for (const BaseStation& s : sc.stations) {
        cost.capex_total += s.capex_rate;
    }
    if (j.contains("cost")) {
        const json& c = j["cost"];
        check_keys(c, {"opex_per_kwh", "opex_per_joule", "capex_total"}, "cost");
        if (c.contains("opex_per_kwh") && c.contains("opex_per_joule")) {
            fail("cost must set at most one of \"opex_per_kwh\" or \"opex_per_joule\"");
        }
        cost.opex_factor = get_number_or(c, "opex_per_joule", "cost", 0.0) +
                           get_number_or(c, "opex_per_kwh", "cost", 0.0) / kJoulesPerKwh;
        if (c.contains("capex_total")) {
            cost.capex_total = get_number(c, "capex_total", "cost");
        }
    }

    try {
        sc.validate();
        cost.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return {std::move(sc), cost};
}

LoadedScenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

BaseStation make_terrestrial_station(const Vec3& position) {
    BaseStation s;
    s.kind = StationKind::Terrestrial;
    s.position = position;
    s.tx_power_w = dbm_to_watts(35.0);
    s.bandwidth_hz = 20e6;
    s.circuit_power_w = 1.0;
    s.pathloss = {PathlossKind::LogDistance, 35.0, 38.0};
    s.capex_rate = 1e6 * kSecondsPerHour / kSecondsPerYear; // 1 M$/yr at a 3600 s epoch
    return s;
}

BaseStation make_uav_station(const Vec3& position) {
    BaseStation s;
    s.kind = StationKind::Airborne;
    s.position = position;
    s.tx_power_w = dbm_to_watts(35.0);
    s.bandwidth_hz = 20e6;
    s.circuit_power_w = 4.0;
    s.pathloss = {PathlossKind::LogDistance, 78.0, 20.0};
    s.capex_rate = 0.001 + 0.00738; // $/hr rates at a 3600 s epoch
    return s;
}

BaseStation make_satellite_station(const Vec3& position) {
    BaseStation s;
    s.kind = StationKind::Satellite;
    s.position = position;
    s.tx_power_w = dbm_to_watts(35.0);
    s.bandwidth_hz = 20e6;
    s.circuit_power_w = 1.0;
    s.antenna_gain_dbi = 12.0;
    s.pathloss = {PathlossKind::Fixed, 148.0, 0.0};
    s.capex_rate = 22.5e6 * kSecondsPerHour / kSecondsPerYear;
    return s;
}

RisElement make_ris_element(const Vec3& position) {
    RisElement r;
    r.position = position;
    r.footprint_cov = 1e4 * Mat3::Identity();
    r.dc_total_bits = 5e10;
    r.delta_power_w = 1.0;
    return r;
}

namespace {

Scenario base_cube_scenario() {
    Scenario sc;
    sc.region = {Vec3(0, 0, 0), Vec3(1000, 1000, 1000)};
    sc.grid = {64, 64, 64};
    sc.epoch_s = 3600.0;
    sc.noise_psd_w_per_hz = dbm_to_watts(-174.0);
    sc.interference = InterferenceMode::None;
    return sc;
}

LoadedScenario finish(Scenario sc) {
    CostModel cost;
    for (const BaseStation& s : sc.stations) {
        cost.capex_total += s.capex_rate;
    }
    cost.opex_factor = 0.1 / kJoulesPerKwh;
    sc.validate();
    return {std::move(sc), cost};
}

LoadedScenario preset_baseline_terrestrial() {
    Scenario sc = base_cube_scenario();
    sc.stations.push_back(make_terrestrial_station(Vec3(500, 500, 35)));
    sc.traffic_gmm = SpatialGMM({{1.0, Gaussian3(Vec3(500, 500, 35), 4e4 * Mat3::Identity())}});
    sc.traffic_total_bits = 2e11;
    return finish(std::move(sc));
}

LoadedScenario preset_hotspot() {
    Scenario sc = base_cube_scenario();
    sc.stations.push_back(make_terrestrial_station(Vec3(650, 300, 35)));
    sc.traffic_gmm = SpatialGMM({{1.0, Gaussian3(Vec3(300, 700, 10), 1e4 * Mat3::Identity())}});
    sc.traffic_total_bits = 2e11;
    return finish(std::move(sc));
}

LoadedScenario preset_aerial() {
    Scenario sc = base_cube_scenario();
    sc.stations.push_back(make_terrestrial_station(Vec3(650, 300, 35)));
    sc.traffic_gmm =
        SpatialGMM({{1.0 / 11.0, Gaussian3(Vec3(300, 700, 200), 1.6e5 * Mat3::Identity())},
                    {10.0 / 11.0, Gaussian3(Vec3(500, 500, 500), 1e6 * Mat3::Identity())}});
    sc.traffic_total_bits = 1e12;
    return finish(std::move(sc));
}

LoadedScenario preset_random(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto uniform_int = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    Scenario sc;
    const double edge = uniform(600.0, 1500.0);
    sc.region = {Vec3(0, 0, 0), Vec3(edge, edge, edge)};
    sc.grid = {20, 20, 20};
    sc.epoch_s = 3600.0;
    sc.noise_psd_w_per_hz = dbm_to_watts(-174.0);

    const int n_stations = uniform_int(1, 3);
    for (int i = 0; i < n_stations; ++i) {
        const double x = uniform(0.1 * edge, 0.9 * edge);
        const double y = uniform(0.1 * edge, 0.9 * edge);
        BaseStation s;
        switch (uniform_int(0, 3)) {
        case 0:
        case 1:
            s = make_terrestrial_station(Vec3(x, y, 35.0));
            break;
        case 2:
            s = make_uav_station(Vec3(x, y, uniform(50.0, 300.0)));
            break;
        default:
            s = make_satellite_station(Vec3(x, y, 5e5));
            break;
        }
        s.tx_power_w = dbm_to_watts(uniform(25.0, 43.0));
        sc.stations.push_back(std::move(s));
    }

    const int n_comps = uniform_int(1, 3);
    std::vector<double> raw(n_comps);
    double raw_sum = 0.0;
    for (double& w : raw) {
        w = uniform(0.2, 1.0);
        raw_sum += w;
    }
    std::vector<WeightedGaussian> comps;
    for (int i = 0; i < n_comps; ++i) {
        const Vec3 mean(uniform(0.2 * edge, 0.8 * edge), uniform(0.2 * edge, 0.8 * edge),
                        uniform(0.0, 0.6 * edge));
        const double sigma2 =
            std::exp(uniform(std::log(edge / 20.0 * edge / 20.0), std::log(edge / 3.0 * edge / 3.0)));
        comps.push_back({raw[i] / raw_sum, Gaussian3(mean, sigma2 * Mat3::Identity())});
    }
    sc.traffic_gmm = SpatialGMM(std::move(comps));
    sc.traffic_total_bits = std::exp(uniform(std::log(1e10), std::log(1e12)));
    return finish(std::move(sc));
}

} // namespace

std::vector<PresetInfo> preset_list() {
    return {
        {"baseline-terrestrial", "single terrestrial station, demand centered on the station"},
        {"hotspot", "single terrestrial station, one tight ground-level demand hotspot"},
        {"aerial", "single terrestrial station, two-component elevated demand mixture"},
        {"random", "randomized valid scenario derived from --seed"},
    };
}

LoadedScenario make_preset(const std::string& name, std::uint64_t seed) {
    if (name == "baseline-terrestrial") {
        return preset_baseline_terrestrial();
    }
    if (name == "hotspot") {
        return preset_hotspot();
    }
    if (name == "aerial") {
        return preset_aerial();
    }
    if (name == "random") {
        return preset_random(seed);
    }
    fail("unknown preset \"" + name + "\" (see the presets command)");
}

} // namespace iree
