#include "iree/gmm.hpp"

#include "iree/errors.hpp"
#include "iree/field.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace iree {

namespace {

constexpr double kLog2PiCubed = 3.0 * 1.8378770664093453; // 3 ln(2*pi)

Mat3 validated_symmetric(const Mat3& cov) {
    if (!cov.allFinite()) {
        throw InvalidCovarianceError("covariance has non-finite entries");
    }
    const double scale = cov.cwiseAbs().maxCoeff();
    const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * std::max(scale, 1.0)) {
        throw InvalidCovarianceError("covariance is not symmetric (relative asymmetry " +
                                     std::to_string(asym / std::max(scale, 1.0)) + ")");
    }
    return 0.5 * (cov + cov.transpose());
}

} // namespace

Gaussian3::Gaussian3(const Vec3& mean, const Mat3& cov) : mean_(mean), cov_(validated_symmetric(cov)) {
    Eigen::LLT<Mat3> llt(cov_);
    if (llt.info() != Eigen::Success) {
        throw InvalidCovarianceError("covariance is not positive definite");
    }
    precision_ = llt.solve(Mat3::Identity());
    const Mat3 L = llt.matrixL();
    log_det_cov_ = 2.0 * L.diagonal().array().log().sum();
    log_norm_ = -0.5 * (kLog2PiCubed + log_det_cov_);
}

double Gaussian3::log_pdf(const Vec3& loc) const {
    const Vec3 d = loc - mean_;
    return log_norm_ - 0.5 * d.dot(precision_ * d);
}

double Gaussian3::pdf(const Vec3& loc) const { return std::exp(log_pdf(loc)); }

SpatialGMM::SpatialGMM(std::vector<WeightedGaussian> components) : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("mixture needs at least one component");
    }
    double sum = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight >= 0.0)) {
            throw std::invalid_argument("mixture weights must be nonnegative");
        }
        sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("mixture weights sum to " + std::to_string(sum) + ", expected 1");
    }
}

double SpatialGMM::pdf(const Vec3& loc) const {
    double acc = 0.0;
    for (const auto& c : components_) {
        acc += c.weight * c.gaussian.pdf(loc);
    }
    return acc;
}

double exp_mutual_divergence(const Gaussian3& g, const Gaussian3& h) {
    // Bitwise-equal parameters: KL is exactly 0; avoids FP noise in the trace
    // term nudging the result above 1.
    if (g.mean() == h.mean() && g.cov() == h.cov()) {
        return 1.0;
    }
    const Vec3 d = h.mean() - g.mean();
    const double log_det_ratio = h.log_det_cov() - g.log_det_cov();
    const double trace = (h.precision() * g.cov()).trace();
    const double mahal = d.dot(h.precision() * d);
    return std::exp(-0.5 * (log_det_ratio + trace + mahal - 3.0));
}

SpatialGMM fit_gmm_moment_match(const GridField& total, std::span<const GridField> parts) {
    const double total_mass = total.total();
    if (!(total_mass > 0.0)) {
        throw EmptyFieldError("cannot fit a mixture to a field with zero total mass");
    }

    const double eps = 1e-6 * total.region.max_edge() * total.region.max_edge();

    struct Moment {
        double mass;
        Vec3 mean;
        Mat3 cov;
    };
    std::vector<Moment> moments;
    double kept_mass = 0.0;
    for (const GridField& part : parts) {
        if (!part.same_grid(total)) {
            throw GridMismatchError("sub-field grid differs from the total field grid");
        }
        const double mass = part.total();
        if (!(mass > 0.0)) {
            continue; // zero-mass sub-field: dropped, weights renormalized below
        }
        Vec3 mean = Vec3::Zero();
        for (std::size_t i = 0; i < part.values.size(); ++i) {
            mean += part.values[i] * part.cell_center(i);
        }
        mean /= mass;
        Mat3 cov = Mat3::Zero();
        for (std::size_t i = 0; i < part.values.size(); ++i) {
            const Vec3 d = part.cell_center(i) - mean;
            cov += part.values[i] * (d * d.transpose());
        }
        cov /= mass;

        Eigen::SelfAdjointEigenSolver<Mat3> es(cov);
        if (es.eigenvalues().minCoeff() < eps) {
            cov += eps * Mat3::Identity();
        }
        moments.push_back({mass, mean, cov});
        kept_mass += mass;
    }
    if (moments.empty()) {
        throw EmptyFieldError("every sub-field has zero mass");
    }

    std::vector<WeightedGaussian> comps;
    comps.reserve(moments.size());
    for (const Moment& m : moments) {
        comps.push_back({m.mass / kept_mass, Gaussian3(m.mean, m.cov)});
    }
    return SpatialGMM(std::move(comps));
}

} // namespace iree
