#include "iree/metrics.hpp"

#include "iree/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace iree {

void CostModel::validate() const {
    if (!(capex_total >= 0.0) || !(opex_factor >= 0.0)) {
        throw std::invalid_argument("cost model entries must be >= 0");
    }
}

namespace {

Evaluation evaluate_impl(const Scenario& scenario, const std::optional<RisElement>& ris) {
    scenario.validate();

    CapacityField capacity = build_capacity_field(scenario);
    const double base_rate = capacity.total.total(); // volume-averaged bit/s
    const double base_c_tot = base_rate * scenario.epoch_s;
    if (!(base_c_tot > 0.0)) {
        throw DegenerateScenarioError("total capacity is zero (no stations or no transmit power)");
    }

    double c_tot = base_c_tot;
    double power_w = total_power(scenario);
    SpatialGMM ris_gmm = scenario.traffic_gmm; // placeholder until an overlay replaces it
    if (ris) {
        if (!(ris->dc_total_bits >= 0.0) || !(ris->delta_power_w >= 0.0)) {
            throw std::invalid_argument("RIS increment and power must be >= 0");
        }
        ris_gmm = SpatialGMM({{1.0, Gaussian3(ris->position, ris->footprint_cov)}});
        GridField footprint = sample_gmm_on_grid(ris_gmm, scenario.region, scenario.grid);
        const double mass = footprint.total();
        if (!(mass > 0.0)) {
            throw EmptyFieldError("RIS footprint has no mass inside the region");
        }
        const double rate_scale = ris->dc_total_bits / scenario.epoch_s / mass;
        for (std::size_t i = 0; i < footprint.size(); ++i) {
            capacity.total.values[i] += footprint.values[i] * rate_scale;
        }
        c_tot += ris->dc_total_bits;
        power_w += ris->delta_power_w;
    }

    GridField traffic = build_traffic_field(scenario);

    SpatialGMM capacity_gmm = fit_gmm_moment_match(
        capacity.total, std::span<const GridField>(capacity.per_station));

    double b_tot = 0.0;
    for (const BaseStation& s : scenario.stations) {
        b_tot += s.bandwidth_hz;
    }

    GridField f_c = normalize_field(capacity.total);
    GridField f_d = normalize_field(traffic);

    return Evaluation{scenario,
                      std::move(capacity),
                      std::move(traffic),
                      std::move(f_c),
                      std::move(f_d),
                      std::move(capacity_gmm),
                      scenario.traffic_gmm,
                      ris,
                      std::move(ris_gmm),
                      base_c_tot,
                      c_tot,
                      scenario.traffic_total_bits,
                      power_w * scenario.epoch_s,
                      b_tot,
                      scenario.region.volume(),
                      scenario.epoch_s};
}

void require_positive_power(const Evaluation& ev) {
    if (!(ev.p_tot > 0.0)) {
        throw DegenerateScenarioError("total energy is zero");
    }
}

} // namespace

Evaluation evaluate(const Scenario& scenario) { return evaluate_impl(scenario, std::nullopt); }

Evaluation evaluate(const Scenario& scenario, const RisElement& ris) {
    return evaluate_impl(scenario, ris);
}

double xi_numeric(const Evaluation& ev) { return js_numeric(ev.f_c, ev.f_d).value; }

DivergenceResult xi_closed(const Evaluation& ev) {
    if (ev.ris) {
        return js_ris_mixture(ev.capacity_gmm, ev.ris_gmm, ev.traffic_gmm, ev.base_c_tot,
                              ev.ris->dc_total_bits);
    }
    return js_closed_form(ev.capacity_gmm, ev.traffic_gmm);
}

double ee(const Evaluation& ev) {
    require_positive_power(ev);
    return ev.c_tot / ev.p_tot;
}

double aee(const Evaluation& ev) { return aee(ee(ev), ev.volume); }

double aee(double ee_value, double volume) {
    if (!(volume > 0.0)) {
        throw DegenerateScenarioError("coverage volume must be > 0");
    }
    return ee_value / volume;
}

double iee_numeric(const Evaluation& ev) {
    require_positive_power(ev);
    double acc = 0.0;
    for (std::size_t i = 0; i < ev.capacity.total.size(); ++i) {
        acc += std::min(ev.capacity.total.values[i] * ev.epoch, ev.traffic.values[i]);
    }
    return acc / ev.p_tot;
}

double smoothed_utility(const Evaluation& ev) {
    if (!(ev.c_tot > 0.0) || !(ev.d_tot > 0.0)) {
        throw EmptyFieldError("smoothed utility needs positive capacity and traffic totals");
    }
    const double lo = std::min(ev.c_tot, ev.d_tot);
    const double hi = std::max(ev.c_tot, ev.d_tot);
    const double scale_c = ev.c_tot <= ev.d_tot ? lo / hi : 1.0;
    const double scale_d = ev.d_tot < ev.c_tot ? lo / hi : 1.0;

    double acc = 0.0;
    for (std::size_t i = 0; i < ev.f_c.values.size(); ++i) {
        const double fc = ev.f_c.values[i] * scale_c;
        const double fd = ev.f_d.values[i] * scale_d;
        if (fc > 0.0) {
            acc += 0.5 * fc * std::log2(1.0 + fd / fc);
        }
        if (fd > 0.0) {
            acc += 0.5 * fd * std::log2(1.0 + fc / fd);
        }
    }
    return hi * acc;
}

double iree(const Evaluation& ev, XiMode mode) {
    require_positive_power(ev);
    if (!(ev.c_tot > 0.0) || !(ev.d_tot > 0.0)) {
        throw DegenerateScenarioError("IREE needs positive capacity and traffic totals");
    }
    const double xi = mode == XiMode::Numeric ? xi_numeric(ev) : xi_closed(ev).value;
    return std::min(ev.c_tot, ev.d_tot) * (1.0 - xi) / ev.p_tot;
}

double se(const Evaluation& ev) {
    if (!(ev.b_tot > 0.0)) {
        throw DegenerateScenarioError("no station bandwidth");
    }
    return ev.c_tot / (ev.epoch * ev.b_tot);
}

double se_iree(double se_value, double b_tot_hz, double d_tot_bits, double p_tot_j, double xi,
               double epoch_s) {
    if (!(p_tot_j > 0.0)) {
        throw DegenerateScenarioError("total energy is zero");
    }
    return std::min(b_tot_hz * se_value * epoch_s, d_tot_bits) * (1.0 - xi) / p_tot_j;
}

double de(const Evaluation& ev, const CostModel& cost) {
    cost.validate();
    const double w_tot = cost.capex_total + cost.opex_factor * ev.p_tot;
    if (!(w_tot > 0.0)) {
        throw DegenerateScenarioError("total cost is zero");
    }
    return ev.c_tot / w_tot;
}

double de_iree(double de_value, const CostModel& cost, double d_tot_bits, double p_tot_j, double xi) {
    if (!(p_tot_j > 0.0)) {
        throw DegenerateScenarioError("total energy is zero");
    }
    const double w_tot = cost.capex_total + cost.opex_factor * p_tot_j;
    return std::min(w_tot * de_value, d_tot_bits) * (1.0 - xi) / p_tot_j;
}

MetricsReport metrics_report(const Evaluation& ev, const CostModel& cost, XiMode mode) {
    MetricsReport r;
    r.mode = mode;
    if (mode == XiMode::Numeric) {
        r.xi = xi_numeric(ev);
        r.xi_clamped = false;
    } else {
        const DivergenceResult d = xi_closed(ev);
        r.xi = d.value;
        r.xi_clamped = d.clamped;
    }
    r.c_tot = ev.c_tot;
    r.d_tot = ev.d_tot;
    r.p_tot = ev.p_tot;
    r.ee = ee(ev);
    r.aee = aee(ev);
    r.iee = iee_numeric(ev);
    r.se = se(ev);
    r.de = de(ev, cost);
    require_positive_power(ev);
    r.iree = std::min(ev.c_tot, ev.d_tot) * (1.0 - r.xi) / ev.p_tot;
    return r;
}

double ris_iree(const Evaluation& base, const RisElement& ris) {
    if (base.ris) {
        throw std::invalid_argument("base evaluation already carries a RIS increment");
    }
    if (!(ris.dc_total_bits >= 0.0) || !(ris.delta_power_w >= 0.0)) {
        throw std::invalid_argument("RIS increment and power must be >= 0");
    }
    require_positive_power(base);
    const SpatialGMM r_gmm({{1.0, Gaussian3(ris.position, ris.footprint_cov)}});
    const double xi =
        js_ris_mixture(base.capacity_gmm, r_gmm, base.traffic_gmm, base.c_tot, ris.dc_total_bits)
            .value;
    const double p_tot = base.p_tot + ris.delta_power_w * base.epoch;
    return std::min(base.c_tot + ris.dc_total_bits, base.d_tot) * (1.0 - xi) / p_tot;
}

double sagin_iree_bound(double xi_t, double c_t_bits, double p_t_j, double xi_as, double dc_bits,
                        double dp_j, double d_tot_bits) {
    if (!(c_t_bits >= 0.0) || !(dc_bits >= 0.0) || !(d_tot_bits >= 0.0)) {
        throw std::invalid_argument("totals must be >= 0");
    }
    if (!(xi_t >= 0.0 && xi_t <= 1.0) || !(xi_as >= 0.0 && xi_as <= 1.0)) {
        throw std::invalid_argument("divergences must be within [0, 1]");
    }
    if (!(p_t_j + dp_j > 0.0)) {
        throw DegenerateScenarioError("total energy is zero");
    }
    const double pooled = c_t_bits + dc_bits;
    const double cap_factor = pooled > 0.0 ? std::min(1.0, d_tot_bits / pooled) : 1.0;
    return cap_factor * (c_t_bits * (1.0 - xi_t) + dc_bits * (1.0 - xi_as)) / (p_t_j + dp_j);
}

} // namespace iree
