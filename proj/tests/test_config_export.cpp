#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "support.hpp"

#include <superconf/export.hpp>

using namespace superconf;
using nlohmann::json;

namespace {

std::size_t count_prefix(const std::string &text, const std::string &prefix)
{
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        n += line.rfind(prefix, 0) == 0 ? 1 : 0;
    }
    return n;
}

} // namespace

TEST_SUITE("config")
{
    TEST_CASE("invalid grid names the field")
    {
        json j = json::parse(R"({"grid": {"nx": 1}})");
        CHECK_THROWS_WITH_AS(config_from_json(j).validate(), doctest::Contains("grid.nx"), ConfigError);
        RunConfig c;
        c.jet_order = 1;
        CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("jet_order"), ConfigError);
        c = RunConfig{};
        c.tol.circle = -1.0;
        CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("tolerances.circle"), ConfigError);
        CHECK_THROWS_AS(config_from_json(json::parse(R"({"seed": {"preset": "nope"}})")), ConfigError);
        CHECK_THROWS_AS(config_from_json(json::parse(R"({"c": "one"})")), ConfigError);
    }

    TEST_CASE("json round trip keeps the hash")
    {
        RunConfig c;
        c.c = -0.5;
        c.v = Eigen::VectorXd::LinSpaced(6, -1.0, 1.0);
        c.grid.excluded_disks.push_back({0.8, 0.8, 0.05});
        c.tol.gauss = 2e-6;
        c.checks = {"pedal_general"};
        c.inversion = InversionSpec{Eigen::VectorXd::Ones(6), 2.0};
        const RunConfig back = config_from_json(to_json(c));
        CHECK(to_json(back) == to_json(c));
        CHECK(spec_hash(back) == spec_hash(c));
        RunConfig other = c;
        other.grid.nx = 11;
        CHECK(spec_hash(other) != spec_hash(c));
    }

    TEST_CASE("generated curve can be fed back in")
    {
        for (const std::string &name : preset_names()) {
            const IsotropicCurve curve = preset_seed(name).build();
            json j;
            j["seed"] = {{"phi", to_json(curve.phi)}};
            const RunConfig c = config_from_json(j);
            CHECK(c.seed.kind == Seed::Kind::Phi);
            CHECK(c.seed.build().phi == curve.phi);
        }
        json bad;
        bad["seed"] = {{"phi", to_json(CVecPoly{CPoly::monomial(1), CPoly::monomial(1)})}};
        CHECK_THROWS_AS(config_from_json(bad).seed.build(), GeometryError);
    }

    TEST_CASE("grid strings")
    {
        Grid g;
        apply_grid_string(g, "0,2,-1,1,5,7");
        CHECK(g.x1 == 2.0);
        CHECK(g.y0 == -1.0);
        CHECK(g.nx == 5);
        CHECK(g.ny == 7);
        CHECK_THROWS_AS(apply_grid_string(g, "0,1,0,1"), ConfigError);
        CHECK_THROWS_AS(apply_grid_string(g, "0,1,0,1,a,3"), ConfigError);
    }

    TEST_CASE("grid points and holes")
    {
        Grid g;
        g.excluded_disks.push_back({0.8, 0.8, 0.12});
        const auto pts = g.points();
        CHECK(pts.size() == 441);
        CHECK(pts[1].x > pts[0].x);
        CHECK(pts[1].y == pts[0].y);
        CHECK(g.is_excluded({0.8, 0.8}));
        CHECK_FALSE(g.is_excluded({0.3, 0.3}));
    }
}

TEST_SUITE("export")
{
    TEST_CASE("obj mesh counts")
    {
        std::ostringstream out;
        const ExportStats st = write_obj(out, testing::preset_surface("holo3"), Grid{});
        CHECK(st.vertices == 441);
        CHECK(st.triangles == 800);
        CHECK(st.failed == 0);
        CHECK(count_prefix(out.str(), "v ") == 441);
        CHECK(count_prefix(out.str(), "f ") == 800);
    }

    TEST_CASE("projection checks")
    {
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 6);
        p(0, 0) = p(1, 1) = p(2, 2) = 1.0;
        CHECK_FALSE(projection_warning(p).has_value());
        p(2, 0) = 0.5;
        CHECK(projection_warning(p).has_value());
        std::ostringstream out;
        const ExportStats st = write_obj(out, testing::preset_surface("holo3"), Grid{}, p);
        CHECK(st.warnings.size() == 1);
        CHECK(st.vertices == 441);
        CHECK_THROWS_AS(write_obj(out, testing::preset_surface("holo3"), Grid{}, Eigen::MatrixXd::Identity(3, 4)),
                        ConfigError);
    }

    TEST_CASE("geometry csv columns")
    {
        Grid g;
        g.nx = g.ny = 3;
        std::ostringstream out;
        const ExportStats st = write_geometry_csv(out, testing::preset_surface("holo3"), g);
        std::istringstream in(out.str());
        std::string header;
        std::getline(in, header);
        CHECK(header == "x,y,K,K_N,Hnorm2,wintgen_defect,circle_defect_1,circle_defect_2,lambda_2,excluded_flag");
        CHECK(st.vertices == 9);
        std::size_t rows = 0;
        for (std::string line; std::getline(in, line);) {
            ++rows;
            CHECK(std::count(line.begin(), line.end(), ',') == 9);
        }
        CHECK(rows == 9);
    }

    TEST_CASE("pedal csv")
    {
        Grid g;
        g.nx = g.ny = 2;
        std::ostringstream out;
        write_pedal_csv(out, testing::preset_surface("holo3"), g);
        std::istringstream in(out.str());
        std::string header;
        std::getline(in, header);
        CHECK(header.rfind("x,y,Z_1", 0) == 0);
        CHECK(header.find("g_6,delta_norm,eta_norm,theta,z_nonzero,delta_nonzero,immersion") != std::string::npos);
    }
}
