#pragma once

#include "iree/divergence.hpp"
#include "iree/field.hpp"
#include "iree/gmm.hpp"
#include "iree/radio.hpp"

#include <optional>

namespace iree {

struct CostModel {
    double capex_total = 0.0; // currency per evaluation epoch
    double opex_factor = 0.0; // currency per joule

    void validate() const;
};

// Capacity-increment asset: a Gaussian footprint carrying dc_total_bits of
// extra capacity per epoch at delta_power_w of marginal power.
struct RisElement {
    Vec3 position{0.0, 0.0, 0.0};
    Mat3 footprint_cov = Mat3::Identity();
    double dc_total_bits = 0.0;
    double delta_power_w = 1.0;
};

enum class XiMode { Numeric, ClosedForm };

struct MetricsReport {
    double ee = 0.0;   // bit/J
    double aee = 0.0;  // bit/J per m^3
    double iee = 0.0;  // bit/J
    double iree = 0.0; // bit/J
    double se = 0.0;   // bit/s/Hz
    double de = 0.0;   // bit per currency unit
    double xi = 0.0;
    bool xi_clamped = false;
    XiMode mode = XiMode::Numeric;
    double c_tot = 0.0; // bits
    double d_tot = 0.0; // bits
    double p_tot = 0.0; // joules
};

// Everything derived from one scenario: fields, densities, fitted capacity
// mixture, and totals. capacity.total is the pooled field (base roster plus
// RIS increment when present); capacity.per_station covers the base roster
// only and feeds the moment-matched fit.
struct Evaluation {
    Scenario scenario;
    CapacityField capacity;
    GridField traffic;
    GridField f_c; // normalized pooled capacity density
    GridField f_d; // normalized traffic density
    SpatialGMM capacity_gmm;
    SpatialGMM traffic_gmm;
    std::optional<RisElement> ris;
    SpatialGMM ris_gmm;      // single footprint component; equals traffic_gmm when no RIS
    double base_c_tot = 0.0; // bits, pooled minus RIS increment
    double c_tot = 0.0;      // bits
    double d_tot = 0.0;      // bits
    double p_tot = 0.0;      // joules
    double b_tot = 0.0;      // hertz
    double volume = 0.0;     // m^3
    double epoch = 0.0;      // seconds
};

Evaluation evaluate(const Scenario& scenario);
Evaluation evaluate(const Scenario& scenario, const RisElement& ris);

double xi_numeric(const Evaluation& ev);
DivergenceResult xi_closed(const Evaluation& ev);

double ee(const Evaluation& ev);
double aee(const Evaluation& ev);
double aee(double ee_value, double volume);
double iee_numeric(const Evaluation& ev);
double smoothed_utility(const Evaluation& ev);
double iree(const Evaluation& ev, XiMode mode);
double se(const Evaluation& ev);
double se_iree(double se_value, double b_tot_hz, double d_tot_bits, double p_tot_j, double xi,
               double epoch_s);
double de(const Evaluation& ev, const CostModel& cost);
double de_iree(double de_value, const CostModel& cost, double d_tot_bits, double p_tot_j, double xi);

MetricsReport metrics_report(const Evaluation& ev, const CostModel& cost, XiMode mode);

// min(c_tot + dc, d_tot) * (1 - mixture divergence) / (p_tot + dp*epoch) for a
// RIS increment on top of a base evaluation (which must not carry one already).
double ris_iree(const Evaluation& base, const RisElement& ris);

// min(1, d/(c_t + dc)) * [c_t*(1 - xi_t) + dc*(1 - xi_as)] / (p_t + dp).
// Energies in joules; a lower bound on the pooled IREE.
double sagin_iree_bound(double xi_t, double c_t_bits, double p_t_j, double xi_as, double dc_bits,
                        double dp_j, double d_tot_bits);

} // namespace iree
