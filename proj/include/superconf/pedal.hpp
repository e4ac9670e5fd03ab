#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <superconf/geometry.hpp>

namespace superconf {

/// Decomposition f = Z + g of the position vector at a point, with
/// g = delta + eta split along N_1 of f and its orthogonal complement.
struct PedalSample {
    Point point;
    Eigen::VectorXd Z;
    /// Z in the tangent frame (e1, e2) of f.
    Eigen::Vector2d Z_frame = Eigen::Vector2d::Zero();
    Eigen::VectorXd g;
    Eigen::VectorXd delta;
    Eigen::VectorXd eta;
    double theta = 0.0;
    bool z_nonzero = false;
    bool delta_nonzero = false;
    bool immersion = false;
};

inline constexpr double kPedalRegularityEps = 1e-6;

/// Jets of (c f + v) projected onto the normal spaces of f. Consumes one
/// order: the result has order f_jets.order() - 1.
JetVec pedal_jets(const JetVec &f_jets, double c = 1.0, const Eigen::VectorXd *v = nullptr);

/// Throws NotImmersion when f is not immersed at p.
PedalSample pedal_decompose(const SurfaceEvaluator &f, Point p, double eps_reg = kPedalRegularityEps);

/// Evaluator of g_{c,v} = (c f + v)^perp. The defaults give the pedal
/// surface of f with respect to the origin.
SurfaceEvaluator pedal_surface(const SurfaceEvaluator &f, double c = 1.0,
                               std::optional<Eigen::VectorXd> v = std::nullopt);

struct PedalExclusion {
    Point point;
    std::string reason;
};

struct PedalRegularityReport {
    std::size_t total = 0;
    std::vector<PedalExclusion> excluded;
};

PedalRegularityReport pedal_regularity(const SurfaceEvaluator &f, const Grid &grid,
                                       double eps_reg = kPedalRegularityEps);

/// Joint local data of a 1-isotropic surface f and its pedal g at one
/// point: f's frames up to N_2, connection forms, and g's local jets.
struct PedalAnalysis {
    Point point;
    int order = 0;
    std::optional<LocalSurface> f;
    NormalFlag f_flag;
    SecondFundamental f_sf;
    double K = 0.0;
    std::optional<ConnectionSample> conn;
    PedalSample pedal;
    std::optional<LocalSurface> g;

    /// J on T M: e1 -> e2, e2 -> -e1.
    Eigen::VectorXd J_tangent(const Eigen::VectorXd &v) const;
    /// The complex structure of N_1 (+ N_2 when available): rotates each
    /// oriented plane by +90 degrees, zero elsewhere.
    Eigen::VectorXd J_normal(const Eigen::VectorXd &v) const;
    /// Orthonormal basis of the orthogonal complement of T + N_1 + ... + N_levels.
    std::vector<Eigen::VectorXd> complement_basis(int levels) const;
    /// Frame vector e_(k+1) of f (k = 0, 1 tangent; 2.. normal flag order).
    Eigen::VectorXd frame_vector(int k) const;
};

/// f must be immersed with order >= 2; the pedal gets order - 1. Flags and
/// connection forms are filled as far as the order allows.
PedalAnalysis analyze_pedal(const SurfaceEvaluator &f, Point p, int order);

} // namespace superconf
