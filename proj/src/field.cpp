#include "iree/field.hpp"

#include "iree/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace iree {

GridField GridField::zeros(const Box& region, const GridDims& dims) {
    if (!region.valid()) {
        throw std::invalid_argument("region must have positive volume");
    }
    for (int n : dims) {
        if (n <= 0) {
            throw std::invalid_argument("grid dims must be positive");
        }
    }
    GridField f;
    f.region = region;
    f.dims = dims;
    const std::size_t count =
        static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(dims[2]);
    f.values.assign(count, 0.0);
    f.cell_volume = region.volume() / static_cast<double>(count);
    return f;
}

double GridField::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

Vec3 GridField::cell_center(int i, int j, int k) const {
    const Vec3 step = (region.hi - region.lo).cwiseQuotient(Vec3(dims[0], dims[1], dims[2]));
    return region.lo + Vec3((i + 0.5) * step.x(), (j + 0.5) * step.y(), (k + 0.5) * step.z());
}

Vec3 GridField::cell_center(std::size_t flat) const {
    const auto nz = static_cast<std::size_t>(dims[2]);
    const auto ny = static_cast<std::size_t>(dims[1]);
    const int k = static_cast<int>(flat % nz);
    const int j = static_cast<int>((flat / nz) % ny);
    const int i = static_cast<int>(flat / (nz * ny));
    return cell_center(i, j, k);
}

bool GridField::same_grid(const GridField& other) const {
    return dims == other.dims && region.lo == other.region.lo && region.hi == other.region.hi;
}

void GridField::validate() const {
    const std::size_t count =
        static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(dims[2]);
    if (values.size() != count) {
        throw std::invalid_argument("field value count does not match grid dims");
    }
    for (double v : values) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("field values must be >= 0");
        }
    }
}

CapacityField build_capacity_field(const Scenario& scenario) {
    CapacityField out;
    out.total = GridField::zeros(scenario.region, scenario.grid);
    out.per_station.assign(scenario.stations.size(), out.total);

    const std::size_t cells = out.total.size();
    if (scenario.stations.empty() || cells == 0) {
        return out;
    }
    // Field totals are volume averages of the rate, so each cell carries
    // 1/cell-count of the rate at its center.
    const double cell_weight = 1.0 / static_cast<double>(cells);
    const bool co_channel = scenario.interference == InterferenceMode::CoChannelSum;

    std::vector<double> received(scenario.stations.size());
    for (std::size_t c = 0; c < cells; ++c) {
        const Vec3 loc = out.total.cell_center(c);
        double received_sum = 0.0;
        if (co_channel) {
            for (std::size_t s = 0; s < scenario.stations.size(); ++s) {
                const BaseStation& st = scenario.stations[s];
                received[s] = st.tx_power_w * db_to_linear(st.antenna_gain_dbi) /
                              db_to_linear(pathloss_db(st.pathloss, st.position, loc));
                received_sum += received[s];
            }
        }
        for (std::size_t s = 0; s < scenario.stations.size(); ++s) {
            const double interference = co_channel ? received_sum - received[s] : 0.0;
            const double rate =
                link_capacity(scenario.stations[s], loc, scenario.noise_psd_w_per_hz, interference);
            out.per_station[s].values[c] = rate * cell_weight;
            out.total.values[c] += rate * cell_weight;
        }
    }
    return out;
}

GridField sample_gmm_on_grid(const SpatialGMM& gmm, const Box& region, const GridDims& dims) {
    GridField f = GridField::zeros(region, dims);
    for (std::size_t c = 0; c < f.size(); ++c) {
        f.values[c] = gmm.pdf(f.cell_center(c)) * f.cell_volume;
    }
    return f;
}

GridField build_traffic_field(const Scenario& scenario) {
    GridField f = sample_gmm_on_grid(scenario.traffic_gmm, scenario.region, scenario.grid);
    const double mass = f.total();
    if (!(mass > 0.0)) {
        throw EmptyTrafficError("traffic mixture has no mass inside the region");
    }
    const double scale = scenario.traffic_total_bits / mass;
    for (double& v : f.values) {
        v *= scale;
    }
    return f;
}

GridField normalize_field(const GridField& field) {
    const double mass = field.total();
    if (!(mass > 0.0)) {
        throw EmptyFieldError("cannot normalize a field with zero total mass");
    }
    GridField out = field;
    for (double& v : out.values) {
        v /= mass;
    }
    return out;
}

void write_field_csv(const GridField& field, std::ostream& out) {
    out << "x,y,z,value\n";
    char buf[128];
    for (std::size_t c = 0; c < field.size(); ++c) {
        const Vec3 p = field.cell_center(c);
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g\n", p.x(), p.y(), p.z(), field.values[c]);
        out << buf;
    }
    if (!out) {
        throw IoError("failed writing field CSV");
    }
}

} // namespace iree
