#include "iree/divergence.hpp"

#include "iree/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace iree {

namespace {

void require_density(const GridField& f, const char* name) {
    if (std::abs(f.total() - 1.0) > 1e-6) {
        throw std::invalid_argument(std::string(name) + " must sum to 1 (got " +
                                    std::to_string(f.total()) + ")");
    }
}

DivergenceResult clamp01(double raw, DivergenceMethod method) {
    DivergenceResult r;
    r.method = method;
    r.clamped = raw < 0.0 || raw > 1.0;
    r.value = std::min(std::max(raw, 0.0), 1.0);
    return r;
}

// cross[i] = sum_k w_other[k] I(own_i | other_k), self[i] = sum_j w_own[j] I(own_i | own_j)
double family_term(const SpatialGMM& own, const SpatialGMM& other) {
    double acc = 0.0;
    for (const auto& oi : own.components()) {
        if (oi.weight == 0.0) {
            continue;
        }
        double cross = 0.0;
        for (const auto& ok : other.components()) {
            cross += ok.weight * exp_mutual_divergence(oi.gaussian, ok.gaussian);
        }
        double self = 0.0;
        for (const auto& oj : own.components()) {
            self += oj.weight * exp_mutual_divergence(oi.gaussian, oj.gaussian);
        }
        acc += oi.weight * std::log2(1.0 + cross / self);
    }
    return acc;
}

} // namespace

DivergenceResult js_numeric(const GridField& p, const GridField& q) {
    if (!p.same_grid(q)) {
        throw GridMismatchError("densities live on different grids");
    }
    require_density(p, "p");
    require_density(q, "q");

    double acc = 0.0;
    for (std::size_t c = 0; c < p.values.size(); ++c) {
        const double pv = p.values[c];
        const double qv = q.values[c];
        // Single expression per cell so swapping p and q sums identical doubles.
        const double contrib = (pv > 0.0 ? pv * std::log2(2.0 * pv / (pv + qv)) : 0.0) +
                               (qv > 0.0 ? qv * std::log2(2.0 * qv / (pv + qv)) : 0.0);
        acc += contrib;
    }
    return clamp01(0.5 * acc, DivergenceMethod::NumericGrid);
}

DivergenceResult js_closed_form(const SpatialGMM& c, const SpatialGMM& d) {
    const double raw = 1.0 - 0.5 * (family_term(c, d) + family_term(d, c));
    return clamp01(raw, DivergenceMethod::ClosedFormVariational);
}

DivergenceResult js_ris_mixture(const SpatialGMM& c, const SpatialGMM& r, const SpatialGMM& d,
                                double c_tot, double dc_ris_tot) {
    if (!(c_tot >= 0.0) || !(dc_ris_tot >= 0.0)) {
        throw std::invalid_argument("capacity totals must be >= 0");
    }
    if (c_tot + dc_ris_tot <= 0.0) {
        throw DegenerateMixtureError("base and increment capacity totals are both zero");
    }
    const double alpha = c_tot / (c_tot + dc_ris_tot);
    const double beta = dc_ris_tot / (c_tot + dc_ris_tot);

    // iota_cd and iota_rd: each capacity family against traffic, own-family
    // denominators (the pooled mixture is never formed).
    const double term_c = alpha == 0.0 ? 0.0 : alpha * family_term(c, d);
    const double term_r = beta == 0.0 ? 0.0 : beta * family_term(r, d);

    // Traffic side: iota_dc and iota_dr mixed by the capacity split.
    double term_d = 0.0;
    for (const auto& dk : d.components()) {
        if (dk.weight == 0.0) {
            continue;
        }
        double self = 0.0;
        for (const auto& dj : d.components()) {
            self += dj.weight * exp_mutual_divergence(dk.gaussian, dj.gaussian);
        }
        double cross_c = 0.0;
        for (const auto& cl : c.components()) {
            cross_c += cl.weight * exp_mutual_divergence(dk.gaussian, cl.gaussian);
        }
        double cross_r = 0.0;
        for (const auto& rn : r.components()) {
            cross_r += rn.weight * exp_mutual_divergence(dk.gaussian, rn.gaussian);
        }
        const double iota_dc = cross_c / self;
        const double iota_dr = cross_r / self;
        term_d += dk.weight * std::log2(1.0 + alpha * iota_dc + beta * iota_dr);
    }

    const double raw = 1.0 - 0.5 * (term_c + term_r + term_d);
    return clamp01(raw, DivergenceMethod::ClosedFormVariational);
}

double js_jensen_upper(const SpatialGMM& base, const SpatialGMM& added, const SpatialGMM& d,
                       double base_tot, double added_tot) {
    if (!(base_tot + added_tot > 0.0)) {
        throw std::invalid_argument("totals must not both be zero");
    }
    const double wb = base_tot / (base_tot + added_tot);
    const double wa = added_tot / (base_tot + added_tot);
    return wb * js_closed_form(base, d).value + wa * js_closed_form(added, d).value;
}

} // namespace iree
