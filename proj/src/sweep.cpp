#include "iree/sweep.hpp"

#include "iree/errors.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace iree {

namespace {

double halton(int index, int base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

double roster_capex(const std::vector<BaseStation>& stations) {
    double total = 0.0;
    for (const BaseStation& s : stations) {
        total += s.capex_rate;
    }
    return total;
}

struct PointContext {
    const Scenario& base;
    const CostModel& base_cost;
    const SweepSpec& spec;
    std::vector<BaseStation> roster; // base.stations + spec.added_stations
};

SweepRow eval_point(const PointContext& ctx, double axis) {
    SweepRow row;
    row.axis = axis;
    try {
        Scenario variant = ctx.base;
        variant.stations = ctx.roster;
        CostModel cost = ctx.base_cost;
        std::optional<RisElement> ris = ctx.spec.ris;

        switch (ctx.spec.kind) {
        case SweepKind::SePower:
            for (BaseStation& s : variant.stations) {
                s.tx_power_w = dbm_to_watts(axis);
            }
            break;
        case SweepKind::DeStationCount: {
            const auto count = static_cast<std::size_t>(std::llround(axis));
            if (count < 1) {
                throw std::invalid_argument("station count must be >= 1");
            }
            const BaseStation tmpl = ctx.roster.front();
            if (count <= variant.stations.size()) {
                variant.stations.resize(count);
            } else {
                const Vec3 lo = variant.region.lo;
                const Vec3 span = variant.region.hi - variant.region.lo;
                for (std::size_t i = variant.stations.size(); i < count; ++i) {
                    BaseStation extra = tmpl;
                    const int h = static_cast<int>(i);
                    extra.position.x() = lo.x() + (0.1 + 0.8 * halton(h, 2)) * span.x();
                    extra.position.y() = lo.y() + (0.1 + 0.8 * halton(h, 3)) * span.y();
                    variant.stations.push_back(std::move(extra));
                }
            }
            cost.capex_total += roster_capex(variant.stations) - roster_capex(ctx.roster);
            break;
        }
        case SweepKind::Placement:
            if (ctx.spec.moving == MovingAsset::Station) {
                variant.stations.at(ctx.spec.moving_station).position[ctx.spec.axis] = axis;
            } else {
                ris->position[ctx.spec.axis] = axis;
            }
            break;
        case SweepKind::TrafficSigma: {
            std::vector<WeightedGaussian> comps;
            comps.reserve(ctx.base.traffic_gmm.components().size());
            for (const WeightedGaussian& c : ctx.base.traffic_gmm.components()) {
                comps.push_back({c.weight, Gaussian3(c.gaussian.mean(), axis * Mat3::Identity())});
            }
            variant.traffic_gmm = SpatialGMM(std::move(comps));
            break;
        }
        }

        const Evaluation ev = ris ? evaluate(variant, *ris) : evaluate(variant);
        row.numeric = metrics_report(ev, cost, XiMode::Numeric);
        row.closed = metrics_report(ev, cost, XiMode::ClosedForm);
        row.ok = true;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

} // namespace

void SweepSpec::validate() const {
    if (steps < 2) {
        throw std::invalid_argument("sweep steps must be >= 2");
    }
    if (!(start < stop)) {
        throw std::invalid_argument("sweep range must have start < stop");
    }
    if (axis < 0 || axis > 2) {
        throw std::invalid_argument("sweep axis must be 0, 1, or 2");
    }
    if (workers < 1) {
        throw std::invalid_argument("sweep workers must be >= 1");
    }
    if (kind == SweepKind::Placement) {
        if (moving == MovingAsset::None) {
            throw std::invalid_argument("placement sweep needs a moving asset");
        }
        if (moving == MovingAsset::Ris && !ris) {
            throw std::invalid_argument("placement sweep moving a RIS needs a RIS element");
        }
    }
    if (kind == SweepKind::DeStationCount && start < 1.0) {
        throw std::invalid_argument("station-count sweep must start at >= 1");
    }
}

std::vector<double> sweep_axis_values(const SweepSpec& spec) {
    std::vector<double> values(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        double v = spec.start + (spec.stop - spec.start) * i / (spec.steps - 1);
        if (spec.kind == SweepKind::DeStationCount) {
            v = static_cast<double>(std::llround(v));
        }
        values[static_cast<std::size_t>(i)] = v;
    }
    return values;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, const CostModel& cost,
                                const SweepSpec& spec) {
    spec.validate();
    PointContext ctx{scenario, cost, spec, scenario.stations};
    ctx.roster.insert(ctx.roster.end(), spec.added_stations.begin(), spec.added_stations.end());
    if (spec.kind == SweepKind::Placement && spec.moving == MovingAsset::Station &&
        spec.moving_station >= ctx.roster.size()) {
        throw std::invalid_argument("moving station index is outside the combined roster");
    }
    if (ctx.roster.empty()) {
        throw std::invalid_argument("sweep needs at least one station");
    }

    const std::vector<double> values = sweep_axis_values(spec);
    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < values.size();) {
            rows[i] = eval_point(ctx, values[i]);
        }
    };

    const int workers = std::min<int>(spec.workers, static_cast<int>(values.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int i = 1; i < workers; ++i) {
        pool.emplace_back(work);
    }
    work();
    for (std::thread& t : pool) {
        t.join();
    }
    return rows;
}

bool unimodal(const std::vector<double>& values, double rel_plateau_tol) {
    if (values.size() < 3) {
        return false;
    }
    double scale = 0.0;
    for (double v : values) {
        scale = std::max(scale, std::abs(v));
    }
    const double eps = rel_plateau_tol * scale;
    bool seen_up = false;
    bool seen_down = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        if (std::abs(d) <= eps) {
            continue;
        }
        if (d > 0.0) {
            if (seen_down) {
                return false;
            }
            seen_up = true;
        } else {
            seen_down = true;
        }
    }
    return seen_up && seen_down;
}

} // namespace iree
