#pragma once

#include "iree/geometry.hpp"
#include "iree/gmm.hpp"
#include "iree/radio.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace iree {

// Dense scalar field over a regular grid. values[(i*ny + j)*nz + k] belongs to
// the cell with index (i, j, k); all values >= 0.
struct GridField {
    Box region;
    GridDims dims{0, 0, 0};
    std::vector<double> values;
    double cell_volume = 0.0;

    static GridField zeros(const Box& region, const GridDims& dims);

    std::size_t size() const { return values.size(); }
    double total() const;
    Vec3 cell_center(int i, int j, int k) const;
    Vec3 cell_center(std::size_t flat) const;
    bool same_grid(const GridField& other) const;
    void validate() const;
};

struct CapacityField {
    GridField total;
    std::vector<GridField> per_station; // one sub-field per roster entry, same order
};

// Rate-to-a-receiver at each cell center, summed over stations (bit/s scaled
// by cell_volume/region_volume so the field total is the volume-averaged
// rate). Co-channel mode counts every other station's received power as
// interference.
CapacityField build_capacity_field(const Scenario& scenario);

// Traffic mass per cell in bits: GMM sampled at cell centers, renormalized
// over the region, scaled by traffic_total_bits.
GridField build_traffic_field(const Scenario& scenario);

// GMM pdf * cell_volume per cell, not renormalized.
GridField sample_gmm_on_grid(const SpatialGMM& gmm, const Box& region, const GridDims& dims);

// Cells divided by the field total; output sums to 1 within 1e-12.
GridField normalize_field(const GridField& field);

// "x,y,z,value" rows for external plotting.
void write_field_csv(const GridField& field, std::ostream& out);

} // namespace iree
