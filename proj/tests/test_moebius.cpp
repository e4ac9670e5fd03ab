#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "support.hpp"

using namespace superconf;
using doctest::Approx;

namespace {

InversionSpec at(Eigen::VectorXd c, double r = 1.0) { return InversionSpec{std::move(c), r}; }

double circle_defect(const SecondFundamental &sf)
{
    return ellipse_from_semidiameters(sf.xi1, sf.xi2, 1, alpha_scale(sf)).circle_defect;
}

Grid grid6()
{
    Grid g;
    g.nx = g.ny = 6;
    return g;
}

} // namespace

TEST_SUITE("moebius")
{
    TEST_CASE("point inversion")
    {
        Eigen::VectorXd q = Eigen::VectorXd::Zero(5);
        q[0] = 2.0;
        const Eigen::VectorXd r = invert_point(q, at(Eigen::VectorXd::Zero(5)));
        CHECK(r[0] == Approx(0.5));
        CHECK(r.tail(4).norm() == 0.0);

        std::mt19937_64 rng(3);
        std::normal_distribution<double> nd;
        for (int t = 0; t < 20; ++t) {
            Eigen::VectorXd x(6), c(6);
            for (int k = 0; k < 6; ++k) {
                x[k] = nd(rng);
                c[k] = nd(rng);
            }
            const InversionSpec inv = at(c, 0.5 + t * 0.1);
            CHECK((invert_point(invert_point(x, inv), inv) - x).norm() <= 1e-12 * (1.0 + x.norm()));
        }
    }

    TEST_CASE("pole and radius guards")
    {
        const auto g = pedal_surface(testing::preset_surface("holo3"));
        const Eigen::VectorXd c = g({0.7, 0.7}, 0).value();
        const auto gi = invert_evaluator(g, at(c));
        CHECK_THROWS_AS(gi({0.7, 0.7}, 2), GeometryError);
        CHECK_NOTHROW(gi({0.9, 0.7}, 2));
        CHECK_THROWS_AS(at(c, 0.0).validate(), ConfigError);
        CHECK_THROWS_AS(invert_evaluator(g, at(Eigen::VectorXd::Zero(3))), ConfigError);
    }

    TEST_CASE("normal isometry")
    {
        Eigen::VectorXd g(4), p0 = Eigen::VectorXd::Zero(4), mu(4);
        g << 1, 2, 0, 0;
        mu << 0, 0, 3, -1;
        CHECK((normal_isometry(g, mu, at(p0)) - mu).norm() < 1e-15);
        CHECK((normal_isometry(g, 2.5 * g, at(p0)) + 2.5 * g).norm() < 1e-14);
        std::mt19937_64 rng(11);
        std::normal_distribution<double> nd;
        for (int t = 0; t < 20; ++t) {
            for (int k = 0; k < 4; ++k) {
                mu[k] = nd(rng);
            }
            CHECK(normal_isometry(g, mu, at(p0)).norm() == Approx(mu.norm()).epsilon(1e-14));
        }
    }

    TEST_CASE("transformation rules match the inverted jets")
    {
        const auto g = pedal_surface(testing::preset_surface("holo3"));
        Eigen::VectorXd c(6);
        c << 0.3, -0.2, 0.5, 0.1, -0.4, 0.2;
        const InversionSpec inv = at(c, 0.8);
        for (const Point &p : grid6().points()) {
            const InvertedShapeAndMean r = inverted_shape_and_mean(g, p, inv);
            CHECK((r.H_formula - r.H_direct).norm() <= 1e-7 * r.H_direct.norm());
            for (std::size_t k = 0; k < r.shape_formula.size(); ++k) {
                CHECK((r.shape_formula[k] - r.shape_direct[k]).norm() <= 1e-7 * (1.0 + r.shape_direct[k].norm()));
            }
        }
    }

    TEST_CASE("distant inversion is nearly rigid")
    {
        const auto g = pedal_surface(testing::preset_surface("holo3"));
        Eigen::VectorXd dir(6);
        dir << 1, 2, -1, 0.5, 0, 3;
        const double dist = 1e4;
        const Eigen::VectorXd c = dist * dir.normalized();
        // R = |p0| keeps the scale near 1 close to the origin.
        const InversionSpec inv = at(c, dist);
        for (const Point &p : {Point{0.5, 0.5}, Point{1.1, 0.4}}) {
            const double h = second_fundamental(g, p).H.norm();
            const double ht = inverted_shape_and_mean(g, p, inv).H_direct.norm();
            CHECK(std::abs(ht - h) <= 0.05 * h);
        }
    }

    TEST_CASE("inversion preserves the circle defect")
    {
        const auto g = pedal_surface(testing::preset_surface("noniso"));
        Eigen::VectorXd c(6);
        c << 1.0, 0.5, -0.5, 0.2, 0.3, -0.1;
        const auto gi = invert_evaluator(g, at(c, 1.3));
        double largest = 0.0;
        for (const Point &p : grid6().points()) {
            const double a = circle_defect(second_fundamental(g, p));
            const double b = circle_defect(second_fundamental(gi, p));
            largest = std::max(largest, a);
            CHECK(std::abs(a - b) <= 1e-7);
        }
        CHECK(largest > 1e-3);
    }

    TEST_CASE("first normal rank")
    {
        const auto f = testing::preset_surface("holo3");
        const auto g = pedal_surface(f);
        Eigen::VectorXd c(6);
        c << 0.3, 0.3, -0.2, 0.1, 0.6, 0.0;
        const auto gi = invert_evaluator(g, at(c, 0.7));
        for (const Point &p : grid6().points()) {
            CHECK(first_normal_rank(f, p) == 2);
            CHECK(first_normal_rank(g, p) == 3);
            CHECK(first_normal_rank(gi, p) == 3);
        }
    }
}
