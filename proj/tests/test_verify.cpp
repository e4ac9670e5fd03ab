#include <doctest.h>

#include "support.hpp"

#include <superconf/verify.hpp>

using namespace superconf;
using doctest::Approx;

namespace {

RunConfig quick(std::vector<std::string> checks)
{
    RunConfig c;
    c.grid.nx = c.grid.ny = 7;
    c.lattice.per_axis = 2;
    c.checks = std::move(checks);
    return c;
}

} // namespace

TEST_SUITE("verify")
{
    TEST_CASE("reports are deterministic")
    {
        const RunConfig c = quick({"superconformal.positive", "nonminimal", "rank.inverted", "hygiene"});
        const auto a = run_all(c).to_json().dump();
        const auto b = run_all(c).to_json().dump();
        CHECK(a == b);
    }

    TEST_CASE("check filter")
    {
        const VerificationReport r = run_all(quick({"conformal"}));
        REQUIRE(r.checks.size() == 3);
        CHECK(r.find("conformal.pedal") != nullptr);
        CHECK(r.find("conformal.control") != nullptr);
        CHECK(r.find("structure.a") == nullptr);
        CHECK(r.status() == "pass");
    }

    TEST_CASE("low jet order is reported, not guessed")
    {
        RunConfig c = quick({"swillmore", "superconformal.positive", "conformal.pedal"});
        c.jet_order = 2;
        const VerificationReport r = run_all(c);
        for (const char *id : {"swillmore.parallel", "swillmore.agreement", "swillmore.kappa_theta",
                               "superconformal.positive"}) {
            const CheckRecord *rec = r.find(id);
            REQUIRE(rec != nullptr);
            CHECK(rec->status == "skipped");
            CHECK(rec->note.find("insufficient jet order") != std::string::npos);
        }
        CHECK(r.find("conformal.pedal")->pass());
    }

    TEST_CASE("empty grid is inconclusive")
    {
        RunConfig c = quick({"superconformal.positive", "mean_curvature"});
        c.grid.excluded_disks.push_back({0.8, 0.8, 5.0});
        const VerificationReport r = run_all(c);
        CHECK(r.active_points == 0);
        CHECK(r.status() == "inconclusive");
        CHECK(r.to_json()["status"] == "inconclusive");
    }

    TEST_CASE("one-isotropic seed fails the positive branch")
    {
        RunConfig c = quick({"superconformal.positive", "conformal.pedal", "structure.a", "structure.b"});
        c.seed = preset_seed("noniso");
        const VerificationReport r = run_all(c);
        CHECK(r.find("superconformal.positive")->failed());
        CHECK(r.find("conformal.pedal")->pass());
        CHECK(r.find("structure.a")->pass());
        CHECK(r.find("structure.b")->pass());
        CHECK(r.status() == "fail");
    }

    TEST_CASE("report json layout")
    {
        const auto j = run_all(quick({"conformal.pedal"})).to_json();
        CHECK(j["version"] == "1.0");
        CHECK(j["environment"]["jet_order"] == 4);
        CHECK(j["environment"]["spec_hash"].get<std::string>().size() == 16);
        const auto &c = j["checks"][0];
        for (const char *key : {"id", "anchor", "grid", "excluded", "defect", "threshold", "bound", "pass"}) {
            CHECK(c.contains(key));
        }
    }

    TEST_CASE("pedal quantities are invariant under rotations of f")
    {
        const IsotropicCurve curve = preset_seed("holo3").build();
        const Eigen::MatrixXd q = testing::random_orthogonal(6, 5);
        const SurfaceEvaluator f = surface_evaluator(curve);
        const SurfaceEvaluator fr = surface_evaluator(IsotropicCurve{curve.phi.transformed(q), {}, std::nullopt});
        for (const Point &p : {Point{0.5, 0.7}, Point{1.1, 0.4}}) {
            const PedalPoint a = pedal_point(f, p, 4);
            const PedalPoint b = pedal_point(fr, p, 4);
            CHECK((q * a.pedal.g - b.pedal.g).norm() < 1e-13);
            CHECK(b.K == Approx(a.K).epsilon(1e-12));
            CHECK(b.pedal.theta == Approx(a.pedal.theta).epsilon(1e-12));
            CHECK(b.circle <= 1e-9);
            CHECK(b.swillmore == Approx(a.swillmore).epsilon(1e-8));
            CHECK((q * a.H_g - b.H_g).norm() < 1e-10 * a.H_g.norm());
        }
    }

    TEST_CASE("scaling f halves the mean curvature of g")
    {
        const IsotropicCurve curve = preset_seed("holo3").build();
        const SurfaceEvaluator f = surface_evaluator(curve);
        const SurfaceEvaluator f2 = surface_evaluator(IsotropicCurve{curve.phi.scaled(CPoly{2.0}), {}, std::nullopt});
        const Point p{0.8, 0.9};
        const PedalPoint a = pedal_point(f, p, 4);
        const PedalPoint b = pedal_point(f2, p, 4);
        CHECK((b.H_g - 0.5 * a.H_g).norm() < 1e-12 * a.H_g.norm());
        CHECK((b.pedal.g - 2.0 * a.pedal.g).norm() < 1e-13);
        CHECK(b.circle <= 1e-9);
    }

    TEST_CASE("minimal superconformal surfaces are S-Willmore, also after inversion")
    {
        const SurfaceEvaluator f = testing::preset_surface("holo3");
        Eigen::VectorXd c(6);
        c << 0.4, -0.3, 0.9, 0.2, 0.1, -0.6;
        const SurfaceEvaluator fi = invert_evaluator(f, InversionSpec{c, 1.2});
        const SurfaceEvaluator g = pedal_surface(f);
        for (const Point &p : {Point{0.5, 0.5}, Point{1.0, 0.8}, Point{0.35, 1.2}}) {
            CHECK(swillmore_defect(LocalSurface(fi(p, 4))) <= 1e-7);
            CHECK(swillmore_defect(LocalSurface(g(p, 4))) >= 1e-3);
        }
        CHECK_THROWS_AS(swillmore_defect(LocalSurface(f({0.5, 0.5}, 2))), GeometryError);
    }

    TEST_CASE("minimality residuals track the inverted mean curvature")
    {
        const SurfaceEvaluator f = testing::preset_surface("holo3");
        const PedalPoint pt = pedal_point(f, {0.7, 0.9}, 4);
        Eigen::VectorXd p0(6);
        p0 << 0.2, 0.1, -0.3, 0.5, 0.0, 0.4;
        const MinimalityResiduals r = minimality_residuals(pt, p0);
        CHECK(r.identity < 1e-12);
        CHECK(std::max({std::abs(r.r[0]), std::abs(r.r[1]), std::abs(r.r[2])}) > 1e-3);
    }

    TEST_CASE("inversion lattice size")
    {
        Grid g;
        g.nx = g.ny = 4;
        const auto pts = pedal_points(testing::preset_surface("holo3"), g, 4);
        CHECK(inversion_lattice(pts, LatticeSpec{}, 1).size() == 125);
        CHECK(inversion_lattice(pts, LatticeSpec{3, 0.5}, 1).size() == 27);
    }
}
