#pragma once

#include "iree/field.hpp"
#include "iree/gmm.hpp"

namespace iree {

enum class DivergenceMethod { NumericGrid, ClosedFormVariational, JensenUpper };

struct DivergenceResult {
    double value = 0.0; // in [0, 1]
    DivergenceMethod method = DivergenceMethod::NumericGrid;
    bool clamped = false;
};

// Base-2 Jensen-Shannon divergence of two normalized grid densities,
// midpoint-rule sum with 0*log(.) := 0. Exactly symmetric in (p, q).
DivergenceResult js_numeric(const GridField& p, const GridField& q);

// Variational closed form over mixture components:
//   1 - 1/2 [ sum_l w^c_l log2(1 + cross_l/self_l) + sum_k w^d_k log2(1 + cross_k/self_k) ]
// with every pairwise term an exp_mutual_divergence. The raw value can leave
// [0, 1]; it is clamped with the flag set.
DivergenceResult js_closed_form(const SpatialGMM& c, const SpatialGMM& d);

// Closed form for a capacity mixture split into a base family c (total c_tot)
// and an increment family r (total dc_ris_tot) against traffic d. Collapses
// exactly to js_closed_form(c, d) at dc_ris_tot = 0 and to js_closed_form(r, d)
// at c_tot = 0.
DivergenceResult js_ris_mixture(const SpatialGMM& c, const SpatialGMM& r, const SpatialGMM& d,
                                double c_tot, double dc_ris_tot);

// Capacity-weighted average of the two per-family closed forms; upper bound on
// the closed-form divergence of the pooled mixture by convexity.
double js_jensen_upper(const SpatialGMM& base, const SpatialGMM& added, const SpatialGMM& d,
                       double base_tot, double added_tot);

} // namespace iree
