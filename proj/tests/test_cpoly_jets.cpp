#include <doctest.h>

#include <array>

#include "support.hpp"

using namespace superconf;
using doctest::Approx;

namespace {

const complex kI{0.0, 1.0};

bool near(complex a, complex b, double tol = 1e-14) { return std::abs(a - b) <= tol; }

} // namespace

TEST_SUITE("cpoly")
{
    TEST_CASE("arithmetic")
    {
        const CPoly a{1.0, 1.0};
        const CPoly b{1.0, -1.0};
        CHECK(a * b == CPoly{1.0, 0.0, -1.0});
        CHECK((CPoly::monomial(2) + CPoly::monomial(2, -1.0)).is_zero());
        CHECK((CPoly::monomial(2) + CPoly::monomial(2, -1.0)).degree() == -1);
        CHECK(CPoly::monomial(1) * kI == CPoly::monomial(1, kI));
        CHECK(CPoly{0.0, 0.0, 0.0}.coeffs().empty());
    }

    TEST_CASE("calculus")
    {
        CHECK(CPoly::monomial(1, 2.0).integral() == CPoly::monomial(2));
        CHECK(CPoly::monomial(3).derivative() == CPoly::monomial(2, 3.0));
        CHECK(CPoly{}.integral().is_zero());
        CHECK(CPoly{5.0}.derivative().is_zero());
    }

    TEST_CASE("evaluation")
    {
        CHECK(near(CPoly::monomial(2)(complex{1.0, 1.0}), 2.0 * kI));
        CHECK(near(CPoly{5.0}(complex{-3.0, 7.0}), 5.0));
        CHECK(near(CPoly{1.0, 0.0, -1.0}(1.0), 0.0));
    }

    TEST_CASE("taylor coefficients at a shifted point")
    {
        const CPoly p{2.0, -1.0, 0.5, kI};
        const complex z0{0.3, -0.8};
        const auto t = p.taylor_at(z0, 3);
        const complex h{0.01, 0.02};
        complex sum = 0.0;
        complex hk = 1.0;
        for (const complex &c : t) {
            sum += c * hk;
            hk *= h;
        }
        CHECK(near(sum, p(z0 + h), 1e-13));
    }

    TEST_CASE("bilinear dot")
    {
        const CVecPoly iso{CPoly{1.0}, CPoly{kI}};
        CHECK(dot(iso, iso).is_zero());
        const CVecPoly zz{CPoly::monomial(1), CPoly::monomial(1, kI)};
        CHECK(dot(zz, zz).is_zero());
        const CVecPoly one_z{CPoly{1.0}, CPoly::monomial(1)};
        CHECK(dot(one_z, one_z) == CPoly{1.0, 0.0, 1.0});
        CHECK_THROWS_AS(dot(iso, CVecPoly{CPoly{1.0}}), std::invalid_argument);
    }
}

TEST_SUITE("jets")
{
    TEST_CASE("lift of z^2 at (1, 0)")
    {
        const JetVec re = jet_lift(CVecPoly{CPoly::monomial(2)}, {1.0, 0.0}, 2);
        CHECK(re[0].value() == Approx(1.0));
        CHECK(re[0].derivative(1, 0) == Approx(2.0));
        CHECK(re[0].derivative(0, 1) == Approx(0.0));
        CHECK(re[0].derivative(2, 0) == Approx(2.0));
        CHECK(re[0].derivative(1, 1) == Approx(0.0));
        CHECK(re[0].derivative(0, 2) == Approx(-2.0));
        // Im z^2 = Re(-i z^2).
        const JetVec im = jet_lift(CVecPoly{CPoly::monomial(2, -kI)}, {1.0, 0.0}, 2);
        CHECK(im[0].value() == Approx(0.0));
        CHECK(im[0].derivative(1, 0) == Approx(0.0));
        CHECK(im[0].derivative(0, 1) == Approx(2.0));
        CHECK(im[0].derivative(1, 1) == Approx(2.0));
    }

    TEST_CASE("lift of z is the coordinate jet")
    {
        const JetVec j = jet_lift(CVecPoly{CPoly::monomial(1), CPoly::monomial(1, -kI)}, {0.4, -1.7}, 3);
        CHECK(j[0].value() == Approx(0.4));
        CHECK(j[0].derivative(1, 0) == Approx(1.0));
        CHECK(j[0].derivative(0, 1) == Approx(0.0));
        CHECK(j[1].value() == Approx(-1.7));
        CHECK(j[1].derivative(0, 1) == Approx(1.0));
        CHECK(j[0].derivative(2, 0) == Approx(0.0));
    }

    TEST_CASE("lift of phi_3 at (1, 0)")
    {
        const JetVec f = jet_lift(testing::phi3_by_hand(), {1.0, 0.0}, 2);
        const std::array<double, 6> v{1, 0, 1, 0, 2.0 / 3.0, 0};
        const std::array<double, 6> fx{1, 0, 2, 0, 2, 0};
        const std::array<double, 6> fy{0, -1, 0, -2, 0, -2};
        for (int k = 0; k < 6; ++k) {
            CHECK(f[k].value() == Approx(v[k]));
            CHECK(f[k].derivative(1, 0) == Approx(fx[k]));
            CHECK(f[k].derivative(0, 1) == Approx(fy[k]));
        }
    }

    TEST_CASE("lift agrees with central differences")
    {
        const CVecPoly c = testing::phi3_by_hand();
        const Point p{0.7, -0.4};
        const JetVec j = jet_lift(c, p, 2);
        const double h = 1e-5;
        auto re = [&](double x, double y) {
            Eigen::VectorXd out(c.dim());
            const Eigen::VectorXcd z = c(complex{x, y});
            for (int k = 0; k < c.dim(); ++k) {
                out[k] = z[k].real();
            }
            return out;
        };
        const Eigen::VectorXd fx = (re(p.x + h, p.y) - re(p.x - h, p.y)) / (2 * h);
        const Eigen::VectorXd fyy = (re(p.x, p.y + h) - 2 * re(p.x, p.y) + re(p.x, p.y - h)) / (h * h);
        CHECK((j.derivative(1, 0) - fx).norm() < 1e-8);
        CHECK((j.derivative(0, 2) - fyy).norm() < 1e-4);
    }

    TEST_CASE("arithmetic")
    {
        CHECK(sqrt(Jet(3, 4.0)).value() == Approx(2.0));
        CHECK(sqrt(Jet(3, 4.0)).derivative(1, 0) == Approx(0.0));
        const Jet x = Jet::variable_x(2, 0.0);
        const Jet r = recip(1.0 + x);
        CHECK(r.coeff(0, 0) == Approx(1.0));
        CHECK(r.coeff(1, 0) == Approx(-1.0));
        CHECK(r.coeff(2, 0) == Approx(1.0));
        CHECK(r.coeff(0, 1) == Approx(0.0));
        const Jet y = Jet::variable_y(3, 0.5);
        const Jet q = (y * y) / (1.0 + y);
        CHECK(q.derivative(0, 1) == Approx((0.5 * 2.5) / (1.5 * 1.5)));
        CHECK_THROWS_AS(recip(Jet(2, 0.0)), GeometryError);
    }

    TEST_CASE("dot products")
    {
        const JetVec f = jet_lift(CVecPoly{CPoly::monomial(1), CPoly::monomial(1, -kI)}, {1.0, 0.0}, 2);
        const Jet n = dot(f, f);
        CHECK(n.value() == Approx(1.0));
        CHECK(n.derivative(1, 0) == Approx(2.0));
        CHECK(n.derivative(0, 2) == Approx(2.0));

        Eigen::VectorXd a(3), b(3);
        a << 1, 0, 0;
        b << 0, 2, 0;
        const Jet z = dot(JetVec::constant(a, 2), JetVec::constant(b, 2));
        CHECK(testing::max_abs_coeff(z) == 0.0);

        const JetVec g = jet_lift(testing::phi3_by_hand(), {1.0, 0.0}, 3);
        CHECK(dot(g.dx(), g.dy()).value() == Approx(0.0));
    }

    TEST_CASE("gram schmidt")
    {
        Eigen::VectorXd a(3), b(3);
        a << 1, 0, 0;
        b << 1, 1, 0;
        const std::vector<JetVec> in{JetVec::constant(a, 2), JetVec::constant(b, 2)};
        const auto out = gram_schmidt(in);
        REQUIRE(out.size() == 2);
        CHECK((out[0].value() - a).norm() < 1e-15);
        CHECK((out[1].value() - Eigen::Vector3d(0, 1, 0)).norm() < 1e-15);
        const auto again = gram_schmidt(out);
        CHECK((again[1].value() - out[1].value()).norm() < 1e-15);

        const JetVec f = jet_lift(testing::phi3_by_hand(), {1.0, 0.0}, 3);
        const std::vector<JetVec> t{f.dx(), f.dy()};
        const auto e = gram_schmidt(t);
        Eigen::VectorXd e1(6), e2(6);
        e1 << 1, 0, 2, 0, 2, 0;
        e2 << 0, -1, 0, -2, 0, -2;
        CHECK((e[0].value() - e1 / 3.0).norm() < 1e-14);
        CHECK((e[1].value() - e2 / 3.0).norm() < 1e-14);
        // Orthonormal as jets, not only at the base point.
        const Jet c = dot(e[0], e[1]);
        const Jet n = dot(e[1], e[1]);
        CHECK(testing::max_abs_coeff(c) < 1e-12);
        CHECK(n.derivative(1, 0) == Approx(0.0).epsilon(1e-12));
        CHECK(n.derivative(1, 1) == Approx(0.0).epsilon(1e-12));
    }
}
