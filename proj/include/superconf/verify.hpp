#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include <superconf/config.hpp>
#include <superconf/moebius.hpp>
#include <superconf/pedal.hpp>

namespace superconf {

enum class Bound {
    /// Pass when defect <= threshold.
    Upper,
    /// Pass when defect >= threshold (refutation checks).
    Lower,
};

struct CheckRecord {
    std::string id;
    std::string anchor;
    std::size_t grid = 0;
    std::size_t excluded = 0;
    double defect = 0.0;
    double threshold = 0.0;
    Bound bound = Bound::Upper;
    /// "pass", "fail" or "skipped".
    std::string status = "skipped";
    std::string note;

    bool pass() const { return status == "pass"; }
    bool failed() const { return status == "fail"; }
    /// Sets status from defect and threshold.
    void decide();
};

struct VerificationReport {
    std::string version = "1.0";
    int jet_order = 4;
    Tolerances tol;
    std::uint64_t spec_hash = 0;
    std::size_t grid_points = 0;
    /// Grid points of f that survived every exclusion.
    std::size_t active_points = 0;
    std::vector<CheckRecord> checks;

    /// "pass", "fail" or "inconclusive" (no active points or nothing run).
    std::string status() const;
    const CheckRecord *find(const std::string &id) const;
    nlohmann::json to_json() const;
};

/// Everything the pedal checks need at one grid point of a 1-isotropic f.
/// Quantities that need more jet order than available are NaN.
struct PedalPoint {
    Point point;
    bool excluded = false;
    std::string reason;

    // Base surface.
    double K = 0.0;
    double f_mean_ratio = 0.0;
    double lambda = 0.0;
    std::array<double, 2> hodge{};

    // Pedal decomposition.
    PedalSample pedal;
    Eigen::VectorXd JZ_delta;
    std::vector<Eigen::VectorXd> n1_basis;

    // Pedal surface.
    double conformal = 0.0;
    double factor = 0.0;
    double normal_bundle = 0.0;
    double circle = 0.0;
    double wintgen = 0.0;
    int rank = 0;
    double mean_curvature = 0.0;
    double laplacian = 0.0;
    double structure_a = 0.0;
    double structure_b = 0.0;
    /// Structure (c) under the conventions +1 and -1.
    std::array<double, 2> structure_c{};
    double swillmore = 0.0;
    double swillmore_scalar = 0.0;
    double kappa_theta = 0.0;
    Eigen::VectorXd H_g;
    Eigen::VectorXd g_t1, g_t2;
};

/// alpha(d, d) with d = (d_x - i d_y) / 2 for a conformal parametrization.
Eigen::VectorXcd twozero_part(const LocalSurface &s);

/// |D_d H ^ alpha(d,d)| / (|D_d H| |alpha(d,d)|) over C, with D the normal
/// connection. Zero where the surface satisfies the S-Willmore condition.
/// Needs jets of order 3.
double swillmore_defect(const LocalSurface &s);

PedalPoint pedal_point(const SurfaceEvaluator &f, Point p, int jet_order);
std::vector<PedalPoint> pedal_points(const SurfaceEvaluator &f, const Grid &grid, int jet_order);

/// Normalized residuals of the system whose simultaneous vanishing at a
/// point is equivalent to H = 0 for the inversion of g centered at p0,
/// and the error of the underlying decomposition of
/// (1/2)|g - p0|^2 H_g + (g - p0)^perp.
struct MinimalityResiduals {
    std::array<double, 3> r{};
    double identity = 0.0;
};
MinimalityResiduals minimality_residuals(const PedalPoint &pt, const Eigen::VectorXd &p0);

/// Deterministic centers: per_axis^3 points around the centroid of g in a
/// random 3-dimensional subspace.
std::vector<Eigen::VectorXd> inversion_lattice(const std::vector<PedalPoint> &pts, const LatticeSpec &spec,
                                               std::uint64_t seed);

/// Runs every selected check. Throws ConfigError for an invalid config.
VerificationReport run_all(const RunConfig &config);

/// Ids known to run_all, in report order.
std::vector<std::string> check_ids();

} // namespace superconf
