#pragma once

#include "iree/geometry.hpp"

#include <span>
#include <vector>

namespace iree {

struct GridField;

// Immutable 3D Gaussian. The covariance is validated (symmetric to 1e-9
// relative, positive definite via Cholesky) and the precision matrix and
// log-determinant are cached at construction.
class Gaussian3 {
  public:
    Gaussian3(const Vec3& mean, const Mat3& cov);

    const Vec3& mean() const { return mean_; }
    const Mat3& cov() const { return cov_; }
    const Mat3& precision() const { return precision_; }
    double log_det_cov() const { return log_det_cov_; }

    double pdf(const Vec3& loc) const;
    double log_pdf(const Vec3& loc) const;

  private:
    Vec3 mean_;
    Mat3 cov_;
    Mat3 precision_;
    double log_det_cov_;
    double log_norm_; // log of the (2pi)^{-3/2} |cov|^{-1/2} prefactor
};

struct WeightedGaussian {
    double weight;
    Gaussian3 gaussian;
};

// Weighted mixture of 3D Gaussians. Weights must be nonnegative and sum to 1
// within 1e-9; at least one component.
class SpatialGMM {
  public:
    explicit SpatialGMM(std::vector<WeightedGaussian> components);

    const std::vector<WeightedGaussian>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }

    double pdf(const Vec3& loc) const;

  private:
    std::vector<WeightedGaussian> components_;
};

// exp(-KL(g||h)) for 3D Gaussians:
//   exp{-1/2 [ ln(|Sh|/|Sg|) + Tr(Sh^-1 Sg) + (mh-mg)^T Sh^-1 (mh-mg) - 3 ]}
// Always in (0, 1], and exactly 1 iff g and h have identical parameters.
double exp_mutual_divergence(const Gaussian3& g, const Gaussian3& h);

// Deterministic moment matching: one component per sub-field, weighted by its
// share of the total mass, mean/covariance from the mass distribution over
// cell centers. Covariances are floored to eps*I with
// eps = 1e-6 * (max region edge)^2. Zero-mass sub-fields are dropped and the
// remaining weights renormalized; an all-zero field is an EmptyFieldError.
SpatialGMM fit_gmm_moment_match(const GridField& total, std::span<const GridField> parts);

} // namespace iree
