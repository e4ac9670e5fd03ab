#pragma once

// Local invariants of a parametrized surface in R^n, computed from jets at
// one parameter point: frames, fundamental forms of every order, curvatures,
// curvature ellipses, the normal flag and normal connection forms.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <superconf/jet.hpp>
#include <superconf/surface.hpp>

namespace superconf {

/// Jet-level local data of a surface at one point. The tangent frame is
/// e1 = d_x f / |d_x f| and e2 the Gram-Schmidt completion with d_y f,
/// optionally rotated by a jet-valued angle.
class LocalSurface {
public:
    /// Throws GeometryError(NotImmersion) when df has rank < 2.
    explicit LocalSurface(JetVec position);

    int order() const { return order_; }
    int ambient_dim() const { return position_.dim(); }
    const JetVec &position() const { return position_; }

    /// Coordinate partial d_x^i d_y^j of the position, order d - i - j.
    const JetVec &partial(int i, int j) const;

    const JetVec &e1() const { return e1_; }
    const JetVec &e2() const { return e2_; }
    const JetVec &frame(int i) const { return i == 0 ? e1_ : e2_; }

    /// e_i = A(i,0) d_x + A(i,1) d_y.
    const Jet &frame_coeff(int i, int k) const { return a_[static_cast<std::size_t>(2 * i + k)]; }

    /// Rotates the tangent frame by the angle whose cosine and sine are
    /// given (jets of order >= d - 1 recommended).
    void rotate_frame(const Jet &cos_t, const Jet &sin_t);

    /// Derivative of a jet field along e_i.
    Jet along(int i, const Jet &u) const;
    JetVec along(int i, const JetVec &u) const;

    /// Coordinate derivative tensor of order p + q contracted with e1 p
    /// times and e2 q times. Differs from the covariant tensor only by terms
    /// in the osculating space of order p + q - 1.
    JetVec frame_tensor(int p, int q) const;

    JetVec tangent_part(const JetVec &v) const;
    JetVec normal_part(const JetVec &v) const;

    /// Metric coefficients E, F, G as jets of order d - 1.
    std::array<Jet, 3> metric_jets() const;

private:
    int order_;
    JetVec position_;
    std::vector<JetVec> partials_;
    JetVec e1_, e2_;
    std::array<Jet, 4> a_;
};

struct FirstFundamental {
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;
    Eigen::VectorXd e1, e2;
};

struct SecondFundamental {
    Eigen::VectorXd alpha11, alpha12, alpha22;
    Eigen::VectorXd H, xi1, xi2;
};

struct Curvatures {
    double K = 0.0;
    double K_N = 0.0;
    double H_norm_sq = 0.0;
    double wintgen_defect = 0.0;
};

struct EllipseData {
    int order = 1;
    double a = 0.0;
    double b = 0.0;
    double circle_defect = 0.0;
    double lambda = 0.0;
};

/// Oriented orthonormal jet frames of T, N_1, N_2, ... at a point.
struct NormalFlag {
    std::vector<JetVec> tangent;
    std::vector<std::vector<JetVec>> bundles;

    std::vector<int> ranks() const;
    /// Normal frame vectors e_3, e_4, ... in flag order.
    std::vector<JetVec> normal_frame() const;
    int dimension() const;
};

struct ConnectionSample {
    /// psi(e_i) = <D_{e_i} e1, e2>.
    std::array<double, 2> psi{};
    /// omega(a, b, i) = <D_{e_i} e_a, e_b> over normal frame indices
    /// (0 = e_3). NaN where the jets are too short.
    std::vector<std::array<double, 2>> omega_table;
    int normal_dim = 0;
    /// omega_35 on e_1, e_2.
    std::array<double, 2> omega{};
    double lambda = 0.0;

    double omega_ab(int a, int b, int i) const
    {
        return omega_table[static_cast<std::size_t>(a * normal_dim + b)][static_cast<std::size_t>(i)];
    }
};

/// Residuals of the N_1 / N_2 connection-form relations
/// omega_45 = -*omega, omega_46 = -*omega_36, omega_36 = lambda *omega,
/// omega_46 = lambda *omega_45 under one Hodge convention.
struct HodgeResiduals {
    /// +1: *w(X) = w(JX); -1: *w(X) = -w(JX).
    int convention = 1;
    double max_residual = 0.0;
};

struct GeometrySample {
    Point point;
    FirstFundamental first;
    SecondFundamental second;
    Curvatures curv;
    double K_intrinsic = 0.0;
    double alpha_scale = 0.0;
    std::vector<EllipseData> ellipses;
    std::vector<int> flag_ranks;
    double iso_kappa = 0.0;
    bool excluded = false;
    std::string exclusion_reason;
};

// Pointwise operations on local jets.

FirstFundamental first_fundamental(const LocalSurface &ls);
SecondFundamental second_fundamental(const LocalSurface &ls);
/// alpha(e_i, e_j) as jets of order d - 2: {a11, a12, a22}.
std::array<JetVec, 3> second_fundamental_jets(const LocalSurface &ls);
Curvatures curvatures(const LocalSurface &ls);
Curvatures curvatures(const LocalSurface &ls, const SecondFundamental &sf);
/// Largest singular value of the 3 x n matrix {a11, a12, a22}.
double alpha_scale(const SecondFundamental &sf);
/// Gauss curvature from the metric alone (Brioschi formula). Needs d >= 3.
double intrinsic_gauss_curvature(const LocalSurface &ls);

/// Normal flag up to N_up_to. Stops early when the ambient space is
/// exhausted. Throws InsufficientOrder or NotRegular.
NormalFlag normal_flag(const LocalSurface &ls, int up_to);

/// alpha^s(e1^(s-j), e2^j), j = 0..s, at the base point. Needs the flag up
/// to N_(s-2).
std::vector<Eigen::VectorXd> higher_fundamental(const LocalSurface &ls, const NormalFlag &flag, int s);

/// alpha^3 through the recursive normal-derivative definition, for the
/// cross-check against the osculating projection. Returns j = 0..3.
std::vector<Eigen::VectorXd> third_fundamental_recursive(const LocalSurface &ls, const NormalFlag &flag);

/// Ellipse of order s (s = 1 is the ordinary curvature ellipse).
EllipseData ellipse_test(const LocalSurface &ls, const NormalFlag &flag, int s);
/// Ellipse data from two conjugate semi-diameters.
EllipseData ellipse_from_semidiameters(const Eigen::VectorXd &u, const Eigen::VectorXd &v, int order, double raw_scale);

ConnectionSample connection_forms(const LocalSurface &ls, const NormalFlag &flag);
std::array<HodgeResiduals, 2> hodge_residuals(const ConnectionSample &c);

/// |<alpha(d,d), alpha(d,d)>| / scale^2 with d = (e1 - i e2)/2.
double twozero_isotropy_defect(const SecondFundamental &sf);

// Evaluator-level wrappers.

FirstFundamental first_fundamental(const SurfaceEvaluator &s, Point p);
SecondFundamental second_fundamental(const SurfaceEvaluator &s, Point p);
Curvatures curvatures(const SurfaceEvaluator &s, Point p);
EllipseData ellipse_test(const SurfaceEvaluator &s, Point p, int order_s);
std::vector<Eigen::VectorXd> higher_fundamental(const SurfaceEvaluator &s, Point p, int order_s);
NormalFlag normal_flag(const SurfaceEvaluator &s, Point p, int up_to, int jet_order);
ConnectionSample connection_forms(const SurfaceEvaluator &s, Point p, int jet_order);

struct SampleOptions {
    int jet_order = 4;
    /// Largest ellipse order attempted; clipped by jet order and dimension.
    int max_ellipse_order = 8;
};

/// Every invariant available at the point. Geometric failures are recorded
/// as an exclusion rather than thrown.
GeometrySample sample_geometry(const SurfaceEvaluator &s, Point p, const SampleOptions &opt = {});

struct IsotropyOrderReport {
    int r_max = 0;
    /// Max circle defect over the grid for s = 1, 2, ...
    std::vector<double> max_defects;
    std::size_t excluded = 0;
};

/// Largest r such that the s-th ellipse is a circle (defect <= tol) for all
/// s <= r at every non-excluded grid point.
IsotropyOrderReport isotropy_order(const SurfaceEvaluator &s, const Grid &grid, double tol = 1e-8,
                                   int jet_order = 4);

} // namespace superconf
