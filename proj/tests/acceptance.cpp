// Acceptance run: every criterion at its stated tolerance, one line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <superconf/config.hpp>
#include <superconf/verify.hpp>

using namespace superconf;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> checks;
};

Tolerances stated()
{
    Tolerances t;
    t.isotropy = 1e-10;
    t.minimal_f = 1e-9;
    t.gauss = 1e-6;
    t.circle = 1e-8;
    t.wintgen = 1e-7;
    t.refute = 1e-3;
    t.refute_fraction = 0.9;
    t.conformal = 1e-8;
    t.factor = 1e-7;
    t.normal_bundle = 1e-8;
    t.connection = 1e-8;
    t.mean_curvature = 1e-7;
    t.laplacian = 1e-6;
    t.structure = 1e-7;
    t.structure_c = 1e-6;
    t.nonminimal = 1e-3;
    t.agreement = 0.99;
    t.inverted_minimal = 1e-7;
    t.finite_difference = 1e-5;
    return t;
}

} // namespace

int main()
{
    RunConfig cfg;
    cfg.tol = stated();
    cfg.lattice.per_axis = 5;
    cfg.validate();

    const auto t0 = std::chrono::steady_clock::now();
    const VerificationReport rep = run_all(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool deterministic = run_all(cfg).to_json().dump() == rep.to_json().dump();

    const double k00 = curvatures(surface_evaluator(preset_seed("holo3").build()), {0.0, 0.0}).K;
    const bool origin_ok = std::abs(k00 + 8.0) <= 1e-6 * 8.0;

    const std::vector<Criterion> criteria{
        {1, "exact isotropy of presets and random specs", {"isotropy"}},
        {2, "generated surfaces are minimal", {"minimality"}},
        {3, "Gauss curvature closed form", {"gauss.closed_form", "gauss.intrinsic"}},
        {4, "pedal of the 2-isotropic preset is superconformal", {"superconformal.positive", "wintgen.positive"}},
        {5, "pedal of the 1-isotropic-only preset is not", {"superconformal.negative"}},
        {6, "pedal is conformal with the stated factor", {"conformal.pedal", "conformal.factor"}},
        {7, "normal bundle of the pedal", {"normal_bundle.pedal"}},
        {8, "mean curvature and Laplacian of the pedal", {"mean_curvature.pedal", "laplacian.pedal"}},
        {9, "structure of alpha_g(d,d)", {"connection.relations", "structure.a", "structure.b", "structure.c"}},
        {10, "no inversion of the pedal is minimal", {"nonminimal.inversion", "nonminimal.residual"}},
        {11, "the pedal is not S-Willmore",
         {"swillmore.parallel", "swillmore.agreement", "swillmore.kappa_theta"}},
        {12, "constant pedal and rank of the first normal bundle",
         {"constant_pedal.superconformal", "constant_pedal.inverted_minimal", "rank.pedal", "rank.inverted",
          "rank.holo4"}},
        {13, "jets against finite differences, determinism", {"hygiene.finite_difference"}},
    };

    int failures = 0;
    for (const Criterion &c : criteria) {
        bool ok = true;
        std::string detail;
        for (const std::string &id : c.checks) {
            const CheckRecord *r = rep.find(id);
            char buf[160];
            if (r == nullptr) {
                ok = false;
                std::snprintf(buf, sizeof buf, " %s=missing", id.c_str());
            } else {
                ok = ok && r->pass();
                std::snprintf(buf, sizeof buf, " %s=%.3g%s%.3g", id.c_str(), r->defect,
                              r->bound == Bound::Upper ? "<=" : ">=", r->threshold);
            }
            detail += buf;
        }
        if (c.number == 3) {
            ok = ok && origin_ok;
            char buf[64];
            std::snprintf(buf, sizeof buf, " K(0,0)=%.12g", k00);
            detail += buf;
        }
        if (c.number == 13) {
            ok = ok && deterministic && seconds <= 60.0;
            char buf[96];
            std::snprintf(buf, sizeof buf, " deterministic=%s run=%.2fs", deterministic ? "yes" : "no", seconds);
            detail += buf;
        }
        failures += ok ? 0 : 1;
        std::printf("criterion %2d %s  %s:%s\n", c.number, ok ? "PASS" : "FAIL", c.title.c_str(), detail.c_str());
    }
    std::printf("%d of %zu criteria passed (overall report status: %s)\n",
                static_cast<int>(criteria.size()) - failures, criteria.size(), rep.status().c_str());
    return failures == 0 ? 0 : 1;
}
