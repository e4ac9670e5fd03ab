#pragma once

#include <random>

#include <Eigen/Dense>

#include <superconf/config.hpp>
#include <superconf/pedal.hpp>
#include <superconf/weierstrass.hpp>

namespace testing {

using namespace superconf;

inline double max_abs_coeff(const Jet &j)
{
    double m = 0.0;
    for (int i = 0; i <= j.order(); ++i) {
        for (int k = 0; i + k <= j.order(); ++k) {
            m = std::max(m, std::abs(j.coeff(i, k)));
        }
    }
    return m;
}

inline SurfaceEvaluator preset_surface(const std::string &name) { return surface_evaluator(preset_seed(name).build()); }

/// phi_3 = (z, iz, z^2, iz^2, (2/3) z^3, (2/3) i z^3) written out by hand.
inline CVecPoly phi3_by_hand()
{
    const complex i{0.0, 1.0};
    return CVecPoly{CPoly::monomial(1),        CPoly::monomial(1, i),        CPoly::monomial(2),
                    CPoly::monomial(2, i),     CPoly::monomial(3, 2.0 / 3.0), CPoly::monomial(3, 2.0 / 3.0 * i)};
}

/// Plane (x, -y, 0, 0) in R^4.
inline SurfaceEvaluator plane_r4() { return surface_evaluator(holomorphic_curve(CVecPoly{CPoly::monomial(1), CPoly{}})); }

/// Enneper's surface in R^3: minimal, with a segment as curvature ellipse.
inline SurfaceEvaluator enneper()
{
    const complex i{0.0, 1.0};
    const CVecPoly dphi{CPoly{1.0, 0.0, -1.0}, CPoly{i, 0.0, i}, CPoly::monomial(1, 2.0)};
    return surface_evaluator(IsotropicCurve{dphi.integral(), {dphi.integral()}, std::nullopt});
}

/// Graph of (x^2 + y^2) / 2 as a raw evaluator.
inline SurfaceEvaluator paraboloid()
{
    return SurfaceEvaluator(
        [](Point p, int order) {
            const Jet x = Jet::variable_x(order, p.x);
            const Jet y = Jet::variable_y(order, p.y);
            return JetVec(std::vector<Jet>{x, y, (x * x + y * y) * 0.5});
        },
        3, Provenance::Composite);
}

inline Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = nd(rng);
        }
    }
    return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
}

} // namespace testing
