#pragma once

// Sweep drivers: vary one scenario parameter, evaluate every point as an
// independent scenario, and collect per-point metric reports in axis order.

#include "iree/metrics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iree {

enum class SweepKind {
    SePower,         // axis: transmit power [dBm], applied to every station
    DeStationCount,  // axis: station count (integer)
    Placement,       // axis: moving asset coordinate [m]
    TrafficSigma,    // axis: traffic component variance [m^2]
};

enum class MovingAsset { None, Station, Ris };

struct SweepSpec {
    SweepKind kind = SweepKind::SePower;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
    int axis = 0; // placement coordinate: 0 = x, 1 = y, 2 = z

    // Present at every sweep point, appended after the scenario roster.
    std::vector<BaseStation> added_stations;
    std::optional<RisElement> ris;

    MovingAsset moving = MovingAsset::None;
    std::size_t moving_station = 0; // index into the combined roster

    int workers = 1;

    // steps >= 2, start < stop, axis in {0,1,2}, workers >= 1, and the moving
    // asset exists for placement sweeps.
    void validate() const;
};

struct SweepRow {
    double axis = 0.0;
    bool ok = false;
    std::string error;     // set when !ok
    MetricsReport numeric; // mode Numeric
    MetricsReport closed;  // mode ClosedForm
};

// The inclusive axis grid: steps points from start to stop, ascending.
// Station-count axes are rounded to the nearest integer.
std::vector<double> sweep_axis_values(const SweepSpec& spec);

// One row per axis value, computed independently (up to spec.workers
// threads) and assembled in axis order. A point that violates scenario
// invariants is marked failed and the sweep continues. Station-count
// variants recompute the capex share of `cost` from their own roster.
std::vector<SweepRow> run_sweep(const Scenario& scenario, const CostModel& cost,
                                const SweepSpec& spec);

// Discrete-difference bell test: the sequence of nonzero difference signs is
// +...+ -...- with exactly one sign change. Differences within
// rel_plateau_tol * max|value| count as plateau and are ignored.
bool unimodal(const std::vector<double>& values, double rel_plateau_tol = 1e-9);

} // namespace iree
