#include "iree/radio.hpp"

#include "iree/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace iree {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

void PathlossModel::validate() const {
    if (!std::isfinite(intercept_db)) {
        throw std::invalid_argument("pathloss intercept must be finite");
    }
    if (!(slope_db_per_decade >= 0.0)) {
        throw std::invalid_argument("pathloss slope must be >= 0");
    }
    if (kind == PathlossKind::Fixed && slope_db_per_decade != 0.0) {
        throw std::invalid_argument("fixed pathloss model must have slope 0");
    }
}

void BaseStation::validate() const {
    pathloss.validate();
    if (!(tx_power_w >= 0.0) || !(circuit_power_w >= 0.0) || !(idle_power_w >= 0.0) ||
        !(hover_power_w >= 0.0)) {
        throw std::invalid_argument("station powers must be >= 0");
    }
    if (!(bandwidth_hz > 0.0)) {
        throw std::invalid_argument("station bandwidth must be > 0");
    }
    if (!(idle_prob >= 0.0 && idle_prob <= 1.0)) {
        throw std::invalid_argument("idle_prob must be within [0, 1]");
    }
    if (!(amp_efficiency > 0.0)) {
        throw std::invalid_argument("amp_efficiency must be > 0");
    }
    if (kind == StationKind::Terrestrial && hover_power_w != 0.0) {
        throw std::invalid_argument("terrestrial stations cannot hover");
    }
    if (!(capex_rate >= 0.0)) {
        throw std::invalid_argument("capex_rate must be >= 0");
    }
    if (!position.allFinite()) {
        throw std::invalid_argument("station position must be finite");
    }
}

void Scenario::validate() const {
    if (!region.valid()) {
        throw std::invalid_argument("region must have positive volume");
    }
    for (int n : grid) {
        if (n < 4) {
            throw std::invalid_argument("grid resolution must be >= 4 cells per axis");
        }
    }
    for (const BaseStation& s : stations) {
        s.validate();
    }
    if (!(traffic_total_bits > 0.0)) {
        throw std::invalid_argument("traffic_total must be > 0");
    }
    if (!(noise_psd_w_per_hz > 0.0)) {
        throw std::invalid_argument("noise_psd must be > 0");
    }
    if (!(epoch_s > 0.0)) {
        throw std::invalid_argument("epoch must be > 0");
    }
}

double pathloss_db(const PathlossModel& model, const Vec3& tx, const Vec3& rx) {
    if (model.kind == PathlossKind::Fixed) {
        return model.intercept_db;
    }
    const double d = std::max((tx - rx).norm(), 1.0);
    return model.intercept_db + model.slope_db_per_decade * std::log10(d);
}

double link_capacity(const BaseStation& station, const Vec3& loc, double noise_psd_w_per_hz,
                     double interference_w) {
    const double loss = db_to_linear(pathloss_db(station.pathloss, station.position, loc));
    const double gain = db_to_linear(station.antenna_gain_dbi);
    const double received_w = station.tx_power_w * gain / loss;
    const double sinr = received_w / (interference_w + station.bandwidth_hz * noise_psd_w_per_hz);
    return station.bandwidth_hz * std::log2(1.0 + sinr);
}

double station_power(const BaseStation& s) {
    return s.hover_power_w + s.idle_prob * s.idle_power_w +
           (1.0 - s.idle_prob) * (s.amp_efficiency * s.tx_power_w + s.circuit_power_w);
}

double total_power(const Scenario& scenario) {
    double acc = 0.0;
    for (const BaseStation& s : scenario.stations) {
        acc += station_power(s);
    }
    return acc;
}

} // namespace iree
