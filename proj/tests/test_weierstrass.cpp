#include <doctest.h>

#include "support.hpp"

using namespace superconf;
using doctest::Approx;

namespace {

const complex kI{0.0, 1.0};

IsotropicSpec spec(int n, int m, CVecPoly alpha0 = {})
{
    IsotropicSpec s;
    s.ambient_dim = n;
    s.isotropy_order = m;
    s.alpha0 = std::move(alpha0);
    s.betas.assign(static_cast<std::size_t>(m + 1), CPoly{1.0});
    return s;
}

} // namespace

TEST_SUITE("weierstrass")
{
    TEST_CASE("single recursion steps")
    {
        CHECK(w_step(CVecPoly{}, CPoly{1.0}) == (CVecPoly{CPoly{1.0}, CPoly{kI}}));
        const CVecPoly a1{CPoly{1.0}, CPoly{kI}};
        CHECK(w_step(a1, CPoly{1.0})
              == (CVecPoly{CPoly{1.0}, CPoly{kI}, CPoly::monomial(1, 2.0), CPoly::monomial(1, 2.0 * kI)}));
        const CVecPoly a2 = w_step(a1, CPoly{1.0});
        CHECK(w_step(a2, CPoly{1.0})
              == (CVecPoly{CPoly{1.0}, CPoly{kI}, CPoly::monomial(1, 2.0), CPoly::monomial(1, 2.0 * kI),
                           CPoly::monomial(2, 2.0), CPoly::monomial(2, 2.0 * kI)}));
    }

    TEST_CASE("generated curves")
    {
        const IsotropicCurve c3 = w_generate(spec(6, 2));
        const CVecPoly expect = testing::phi3_by_hand();
        REQUIRE(c3.phi.dim() == 6);
        for (int k = 0; k < 6; ++k) {
            for (int j = 0; j <= 3; ++j) {
                CHECK(std::abs(c3.phi[k].coeff(j) - expect[k].coeff(j)) < 1e-15);
            }
        }
        const IsotropicCurve c2 = w_generate(spec(4, 1));
        CHECK(c2.phi
              == (CVecPoly{CPoly::monomial(1), CPoly::monomial(1, kI), CPoly::monomial(2), CPoly::monomial(2, kI)}));
    }

    TEST_CASE("level dimensions grow by two")
    {
        const IsotropicCurve c = w_generate(spec(10, 2, CVecPoly{CPoly{1.0}, CPoly::monomial(1), CPoly{0.5, kI}, CPoly::monomial(2)}));
        for (std::size_t k = 1; k < c.levels.size(); ++k) {
            CHECK(c.levels[k].dim() == c.levels[k - 1].dim() + 2);
        }
        CHECK(c.phi.dim() == 10);
    }

    TEST_CASE("random specs are exactly isotropic")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> co(-1.0, 1.0);
        for (int t = 0; t < 50; ++t) {
            const int m = 1 + t % 3;
            const int n = 2 * (m + 1) + t % 4;
            std::vector<CPoly> a0;
            for (int k = 0; k < n - 2 * (m + 1); ++k) {
                a0.push_back(CPoly{complex{co(rng), co(rng)}, complex{co(rng), co(rng)}});
            }
            IsotropicSpec s = spec(n, m, CVecPoly(a0));
            for (auto &b : s.betas) {
                b = CPoly{complex{1.0 + co(rng), co(rng)}, complex{co(rng), 0.0}};
            }
            const IsotropicCurve c = w_generate(s);
            CHECK(isotropy_residual(c.phi) <= 1e-12);
        }
    }

    TEST_CASE("spec validation")
    {
        CHECK_THROWS_AS(spec(5, 2).validate(), ConfigError);
        CHECK_NOTHROW(spec(5, 1, CVecPoly{CPoly::monomial(1)}).validate());
        CHECK_THROWS_AS(spec(6, 0).validate(), ConfigError);
        IsotropicSpec bad = spec(6, 2);
        bad.betas.pop_back();
        CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("betas"), ConfigError);
    }

    TEST_CASE("holomorphic curve matches the recursion")
    {
        const IsotropicCurve h = holomorphic_curve(CVecPoly{CPoly::monomial(1), CPoly::monomial(2), CPoly::monomial(3, 2.0 / 3.0)});
        const SurfaceEvaluator a = surface_evaluator(h);
        const SurfaceEvaluator b = surface_evaluator(w_generate(spec(6, 2)));
        for (double x = -1.0; x <= 1.0; x += 0.25) {
            for (double y = -1.0; y <= 1.0; y += 0.25) {
                CHECK((a({x, y}, 0).value() - b({x, y}, 0).value()).norm() <= 1e-12);
            }
        }
        CHECK(isotropy_residual(holomorphic_curve(CVecPoly{CPoly::monomial(1), CPoly::monomial(2)}).phi) == 0.0);
    }

    TEST_CASE("evaluator values")
    {
        const SurfaceEvaluator f = testing::preset_surface("holo3");
        Eigen::VectorXd v(6);
        v << 1, 0, 1, 0, 2.0 / 3.0, 0;
        CHECK((f({1.0, 0.0}, 2).value() - v).norm() < 1e-15);
        CHECK(f({0.0, 0.0}, 2).value().norm() == 0.0);
        CHECK(f.ambient_dim() == 6);
        CHECK(f.provenance() == Provenance::Weierstrass);
        CHECK_THROWS_AS(f({0.0, 0.0}, kMaxJetOrder + 1), GeometryError);
    }
}
