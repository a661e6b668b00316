#pragma once

#include "iree/geometry.hpp"
#include "iree/gmm.hpp"

#include <vector>

namespace iree {

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

enum class PathlossKind { LogDistance, Fixed };

struct PathlossModel {
    PathlossKind kind = PathlossKind::LogDistance;
    double intercept_db = 0.0;
    double slope_db_per_decade = 0.0; // 0 for fixed

    void validate() const;
};

enum class StationKind { Terrestrial, Airborne, Satellite };

// One radio asset. Powers in watts, bandwidth in hertz, gain in dBi.
// capex_rate is currency per evaluation epoch.
struct BaseStation {
    StationKind kind = StationKind::Terrestrial;
    Vec3 position{0.0, 0.0, 0.0};
    double tx_power_w = 0.0;
    double bandwidth_hz = 0.0;
    double circuit_power_w = 0.0;
    double idle_power_w = 0.0;
    double idle_prob = 0.0;
    double amp_efficiency = 1.0; // multiplier on tx power inside the power model
    double hover_power_w = 0.0;  // 0 for terrestrial
    double antenna_gain_dbi = 0.0;
    PathlossModel pathloss;
    double capex_rate = 0.0;

    void validate() const;
};

enum class InterferenceMode { None, CoChannelSum };

struct Scenario {
    Box region;
    GridDims grid{64, 64, 64};
    std::vector<BaseStation> stations;
    SpatialGMM traffic_gmm{{{1.0, Gaussian3(Vec3::Zero(), Mat3::Identity())}}};
    double traffic_total_bits = 0.0;
    double noise_psd_w_per_hz = 0.0;
    InterferenceMode interference = InterferenceMode::None;
    double epoch_s = 3600.0;

    void validate() const;
};

// Distance clamps to 1 m for log-distance models so a cell containing the
// station stays finite.
double pathloss_db(const PathlossModel& model, const Vec3& tx, const Vec3& rx);

// Shannon rate B*log2(1 + P_t*G/L / (I + B*N0)) in bit/s.
double link_capacity(const BaseStation& station, const Vec3& loc, double noise_psd_w_per_hz,
                     double interference_w = 0.0);

// Hover + idle mix + active amplifier/circuit draw, in watts.
double station_power(const BaseStation& station);

// Sum of station_power over the roster, in watts.
double total_power(const Scenario& scenario);

} // namespace iree
