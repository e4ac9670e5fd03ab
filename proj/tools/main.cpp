#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include <superconf/config.hpp>
#include <superconf/export.hpp>
#include <superconf/pedal.hpp>
#include <superconf/verify.hpp>

namespace fs = std::filesystem;
using namespace superconf;

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kConfigError = 2, kExclusionOverflow = 3 };

struct Options {
    std::string config;
    std::string out = ".";
    std::vector<std::string> checks;
    int jet_order = 0;
    std::string grid;
    std::string preset;
    std::string projection;
    std::string what = "f";
    std::string format = "obj";
    std::string report;
};

RunConfig resolve(const Options &o)
{
    RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (!o.preset.empty()) {
        c.seed = preset_seed(o.preset);
        c.preset = o.preset;
    }
    if (!o.grid.empty()) {
        apply_grid_string(c.grid, o.grid);
    }
    if (o.jet_order != 0) {
        c.jet_order = o.jet_order;
    }
    if (!o.checks.empty()) {
        c.checks = o.checks;
    }
    if (!o.projection.empty()) {
        std::ifstream in(o.projection);
        if (!in) {
            throw ConfigError("cannot open projection file " + o.projection);
        }
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::parse_error &) {
            throw ConfigError("projection file is not valid JSON");
        }
        nlohmann::json wrap;
        wrap["projection"] = j;
        c.projection = config_from_json(wrap).projection;
    }
    c.validate();
    return c;
}

fs::path out_path(const Options &o, const std::string &name)
{
    fs::create_directories(o.out);
    return fs::path(o.out) / name;
}

std::ofstream open_out(const fs::path &p)
{
    std::ofstream out(p);
    if (!out) {
        throw std::runtime_error("cannot write " + p.string());
    }
    return out;
}

int cmd_generate(const Options &o)
{
    const RunConfig c = resolve(o);
    const IsotropicCurve curve = c.seed.build();
    nlohmann::json doc;
    doc["seed"] = {{"phi", to_json(curve.phi)}};
    doc["source"] = to_json(c.seed);
    const auto path = out_path(o, "phi.json");
    open_out(path) << doc.dump(2) << "\n";

    const int n = curve.phi.dim();
    std::cout << "ambient dimension N = " << n << "\n";
    if (curve.spec) {
        std::cout << "isotropy order m = " << curve.spec->isotropy_order << "\n";
        std::cout << "level dimensions:";
        for (const auto &l : curve.levels) {
            std::cout << " " << l.dim();
        }
        std::cout << "\n";
    }
    std::cout << "degree = " << curve.phi.degree() << "\n";
    std::cout << "isotropy residual = " << isotropy_residual(curve.phi) << "\n";
    const SurfaceEvaluator f = surface_evaluator(curve);
    const Point mid{0.5 * (c.grid.x0 + c.grid.x1), 0.5 * (c.grid.y0 + c.grid.y1)};
    try {
        const LocalSurface ls(f(mid, std::min(kMaxJetOrder, n)));
        const NormalFlag flag = normal_flag(ls, n);
        std::cout << "normal bundle ranks at (" << mid.x << ", " << mid.y << "):";
        for (int r : flag.ranks()) {
            std::cout << " " << r;
        }
        std::cout << "\n";
        if (n % 2 == 1 && !flag.ranks().empty() && flag.ranks().back() == 1) {
            std::cout << "odd ambient dimension: last normal bundle has rank 1\n";
        }
    } catch (const GeometryError &e) {
        std::cout << "normal bundle ranks unavailable: " << e.what() << "\n";
    }
    std::cout << "wrote " << path.string() << "\n";
    return kPass;
}

int cmd_pedal(const Options &o)
{
    const RunConfig c = resolve(o);
    const SurfaceEvaluator f = surface_evaluator(c.seed.build());
    const bool plain = c.c == 1.0 && !c.v;
    const SurfaceEvaluator g = pedal_surface(f, c.c, c.v);
    auto fo = open_out(out_path(o, "f.obj"));
    write_obj(fo, f, c.grid, c.projection, "base surface f");
    auto go = open_out(out_path(o, "g.obj"));
    const auto gs = write_obj(go, g, c.grid, c.projection, plain ? "pedal surface g" : "pedal surface of c f + v");
    for (const auto &w : gs.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    auto csv = open_out(out_path(o, "pedal.csv"));
    write_pedal_csv(csv, f, c.grid);

    // Regularity of the pedal actually exported.
    std::size_t excluded = 0;
    const auto pts = c.grid.points();
    for (const Point &p : pts) {
        if (c.grid.is_excluded(p)) {
            ++excluded;
            continue;
        }
        try {
            if (plain) {
                const PedalSample s = pedal_decompose(f, p);
                if (!s.z_nonzero || !s.delta_nonzero || !s.immersion) {
                    ++excluded;
                }
            } else {
                LocalSurface ls(g(p, 1));
            }
        } catch (const GeometryError &) {
            ++excluded;
        }
    }
    std::cout << "excluded " << excluded << " of " << pts.size() << " grid points\n";
    std::cout << "wrote f.obj, g.obj, pedal.csv to " << o.out << "\n";
    return 2 * excluded > pts.size() ? kExclusionOverflow : kPass;
}

void print_report(const VerificationReport &r)
{
    for (const auto &c : r.checks) {
        std::cout << std::left << std::setw(7) << c.status << std::setw(34) << c.id << " defect " << std::setw(13)
                  << c.defect << (c.bound == Bound::Upper ? " <= " : " >= ") << c.threshold;
        if (!c.note.empty()) {
            std::cout << "  (" << c.note << ")";
        }
        std::cout << "\n";
    }
    std::cout << "status: " << r.status() << "\n";
}

int exit_for(const VerificationReport &r)
{
    for (const auto &c : r.checks) {
        if (c.grid > 0 && 2 * c.excluded > c.grid) {
            return kExclusionOverflow;
        }
    }
    if (r.grid_points > 0 && 2 * r.active_points < r.grid_points) {
        return kExclusionOverflow;
    }
    return r.status() == "pass" ? kPass : kCheckFailure;
}

int cmd_verify(const Options &o)
{
    const RunConfig c = resolve(o);
    const VerificationReport r = run_all(c);
    const auto path = out_path(o, "report.json");
    open_out(path) << r.to_json().dump(2) << "\n";
    print_report(r);
    for (const auto &ch : r.checks) {
        if (ch.failed()) {
            std::cout << "failed check: " << ch.id << "\n";
        }
    }
    std::cout << "wrote " << path.string() << "\n";
    return exit_for(r);
}

int cmd_export(const Options &o)
{
    const RunConfig c = resolve(o);
    const SurfaceEvaluator f = surface_evaluator(c.seed.build());
    std::optional<SurfaceEvaluator> s;
    if (o.what == "f") {
        s = f;
    } else if (o.what == "g") {
        s = pedal_surface(f, c.c, c.v);
    } else if (o.what == "inverted") {
        if (!c.inversion) {
            throw ConfigError("inversion: export of the inverted surface needs an inversion in the config");
        }
        s = invert_evaluator(pedal_surface(f, c.c, c.v), *c.inversion);
    } else {
        throw ConfigError("--what must be f, g or inverted");
    }
    ExportStats st;
    fs::path path;
    if (o.format == "obj") {
        path = out_path(o, o.what + ".obj");
        auto out = open_out(path);
        st = write_obj(out, *s, c.grid, c.projection, o.what);
    } else if (o.format == "csv") {
        path = out_path(o, o.what + ".csv");
        auto out = open_out(path);
        st = write_geometry_csv(out, *s, c.grid, std::min(c.jet_order, s->max_order()));
    } else {
        throw ConfigError("--format must be obj or csv");
    }
    for (const auto &w : st.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    std::cout << "wrote " << path.string() << ": " << st.vertices << " vertices";
    if (o.format == "obj") {
        std::cout << ", " << st.triangles << " triangles";
    }
    std::cout << ", " << st.failed << " failed\n";
    return 2 * st.failed > st.vertices ? kExclusionOverflow : kPass;
}

int cmd_report(const Options &o)
{
    const std::string path = o.report.empty() ? (fs::path(o.out) / "report.json").string() : o.report;
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open report " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &) {
        throw ConfigError("report is not valid JSON");
    }
    std::size_t failed = 0;
    for (const auto &c : j.at("checks")) {
        const std::string status = c.at("status").get<std::string>();
        failed += status == "fail" ? 1 : 0;
        std::cout << std::left << std::setw(7) << status << std::setw(34) << c.at("id").get<std::string>() << " "
                  << c.at("anchor").get<std::string>() << "\n";
    }
    const std::string status = j.at("status").get<std::string>();
    std::cout << "status: " << status << " (" << failed << " failed)\n";
    return status == "pass" ? kPass : kCheckFailure;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Isotropic minimal surfaces, their pedal surfaces and numerical certificates"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", o.config, "JSON run configuration");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--jet-order", o.jet_order, "jet order of f");
        sub->add_option("--grid", o.grid, "x0,x1,y0,y1,nx,ny");
        sub->add_option("--seed-preset", o.preset, "holo3, holo4 or noniso");
        sub->add_option("--projection", o.projection, "JSON file with a 3 x n projection matrix");
    };
    auto *gen = app.add_subcommand("generate", "write the holomorphic curve phi");
    auto *ped = app.add_subcommand("pedal", "export f and its pedal surface");
    auto *ver = app.add_subcommand("verify", "run the verification checks");
    auto *exp = app.add_subcommand("export", "export one surface as OBJ or CSV");
    auto *rep = app.add_subcommand("report", "summarize a report file");
    for (auto *s : {gen, ped, ver, exp}) {
        common(s);
    }
    ver->add_option("--check", o.checks, "check ids or prefixes")->delimiter(',');
    exp->add_option("--what", o.what, "f, g or inverted");
    exp->add_option("--format", o.format, "obj or csv");
    rep->add_option("--out", o.out, "directory containing report.json");
    rep->add_option("report", o.report, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }
    try {
        if (*gen) {
            return cmd_generate(o);
        }
        if (*ped) {
            return cmd_pedal(o);
        }
        if (*ver) {
            return cmd_verify(o);
        }
        if (*exp) {
            return cmd_export(o);
        }
        return cmd_report(o);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const GeometryError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailure;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailure;
    }
}
