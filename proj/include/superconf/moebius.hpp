#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include <superconf/geometry.hpp>

namespace superconf {

/// Inversion q -> p0 + R^2 (q - p0) / |q - p0|^2 in the sphere of radius R
/// centered at p0.
struct InversionSpec {
    Eigen::VectorXd center;
    double radius = 1.0;

    /// Throws ConfigError for a non-positive radius.
    void validate() const;
};

inline constexpr double kPoleExclusion = 1e-9;

Eigen::VectorXd invert_point(const Eigen::VectorXd &q, const InversionSpec &inv);

/// Inversion applied in jet arithmetic. Throws PoleProximity when the base
/// point lies within 1e-9 R of the center.
JetVec invert_jets(const JetVec &q, const InversionSpec &inv);

SurfaceEvaluator invert_evaluator(const SurfaceEvaluator &s, InversionSpec inv);

/// The normal bundle isometry mu -> mu - 2 <g - p0, mu> / |g - p0|^2 (g - p0).
Eigen::VectorXd normal_isometry(const Eigen::VectorXd &g, const Eigen::VectorXd &mu, const InversionSpec &inv);

/// Shape operators and mean curvature of the inverted surface, both from
/// the closed transformation rules and directly from the inverted jets.
struct InvertedShapeAndMean {
    /// Orthonormal normal basis mu_k of g at the point.
    std::vector<Eigen::VectorXd> normals;
    /// Matrices of A~_{P mu_k} in corresponding tangent frames.
    std::vector<Eigen::Matrix2d> shape_formula;
    std::vector<Eigen::Matrix2d> shape_direct;
    Eigen::VectorXd H_formula;
    Eigen::VectorXd H_direct;
};

InvertedShapeAndMean inverted_shape_and_mean(const SurfaceEvaluator &g, Point p, const InversionSpec &inv);

/// Numerical rank of span{alpha11, alpha12, alpha22}: singular values above
/// rel_tol times the largest.
int first_normal_rank(const SurfaceEvaluator &s, Point p, double rel_tol = 1e-7);
int first_normal_rank(const SecondFundamental &sf, double rel_tol = 1e-7);

} // namespace superconf
