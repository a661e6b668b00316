#pragma once

#include <Eigen/Dense>
#include <array>

namespace iree {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Axis-aligned box, corners in meters.
struct Box {
    Vec3 lo{0.0, 0.0, 0.0};
    Vec3 hi{0.0, 0.0, 0.0};

    double volume() const { return (hi - lo).prod(); }
    double max_edge() const { return (hi - lo).maxCoeff(); }
    Vec3 center() const { return 0.5 * (lo + hi); }
    bool valid() const { return (hi.array() > lo.array()).all(); }
};

using GridDims = std::array<int, 3>;

} // namespace iree
