#include <superconf/config.hpp>

#include <fstream>
#include <sstream>

namespace superconf {

using nlohmann::json;

IsotropicCurve Seed::build() const
{
    switch (kind) {
    case Kind::Spec:
        return w_generate(spec);
    case Kind::Holomorphic:
        return holomorphic_curve(curve);
    case Kind::Phi: {
        const double res = isotropy_residual(curve);
        if (res > 1e-10) {
            throw GeometryError(ErrorKind::IsotropyViolation,
                                "phi' is not isotropic (residual " + std::to_string(res) + ")");
        }
        return IsotropicCurve{curve, {curve}, std::nullopt};
    }
    }
    throw ConfigError("seed.kind is invalid");
}

Seed preset_seed(const std::string &name)
{
    Seed s;
    if (name == "holo3") {
        s.kind = Seed::Kind::Spec;
        s.spec.ambient_dim = 6;
        s.spec.isotropy_order = 2;
        s.spec.betas = {CPoly{1.0}, CPoly{1.0}, CPoly{1.0}};
    } else if (name == "holo4") {
        s.kind = Seed::Kind::Holomorphic;
        s.curve = CVecPoly{CPoly::monomial(1), CPoly::monomial(2), CPoly::monomial(3), CPoly::monomial(4)};
    } else if (name == "noniso") {
        s.kind = Seed::Kind::Spec;
        s.spec.ambient_dim = 6;
        s.spec.isotropy_order = 1;
        s.spec.alpha0 = CVecPoly{CPoly{1.0}, CPoly::monomial(1)};
        s.spec.betas = {CPoly{1.0}, CPoly{1.0}};
    } else {
        throw ConfigError("seed.preset: unknown preset '" + name + "'");
    }
    return s;
}

std::vector<std::string> preset_names() { return {"holo3", "holo4", "noniso"}; }

std::map<std::string, double Tolerances::*> Tolerances::fields() const
{
    return {
        {"isotropy", &Tolerances::isotropy},
        {"minimal_f", &Tolerances::minimal_f},
        {"gauss", &Tolerances::gauss},
        {"circle", &Tolerances::circle},
        {"wintgen", &Tolerances::wintgen},
        {"refute", &Tolerances::refute},
        {"refute_fraction", &Tolerances::refute_fraction},
        {"conformal", &Tolerances::conformal},
        {"factor", &Tolerances::factor},
        {"normal_bundle", &Tolerances::normal_bundle},
        {"connection", &Tolerances::connection},
        {"mean_curvature", &Tolerances::mean_curvature},
        {"laplacian", &Tolerances::laplacian},
        {"structure", &Tolerances::structure},
        {"structure_c", &Tolerances::structure_c},
        {"nonminimal", &Tolerances::nonminimal},
        {"agreement", &Tolerances::agreement},
        {"inverted_minimal", &Tolerances::inverted_minimal},
        {"finite_difference", &Tolerances::finite_difference},
    };
}

void RunConfig::validate() const
{
    if (grid.nx < 2) {
        throw ConfigError("grid.nx must be >= 2");
    }
    if (grid.ny < 2) {
        throw ConfigError("grid.ny must be >= 2");
    }
    if (!(grid.x1 > grid.x0)) {
        throw ConfigError("grid.x1 must exceed grid.x0");
    }
    if (!(grid.y1 > grid.y0)) {
        throw ConfigError("grid.y1 must exceed grid.y0");
    }
    for (const Disk &d : grid.excluded_disks) {
        if (!(d.r > 0.0)) {
            throw ConfigError("grid.excluded radius must be positive");
        }
    }
    if (jet_order < 2 || jet_order > kMaxJetOrder) {
        throw ConfigError("jet_order must lie in [2, " + std::to_string(kMaxJetOrder) + "]");
    }
    for (const auto &[name, member] : tol.fields()) {
        if (!(tol.*member > 0.0)) {
            throw ConfigError("tolerances." + name + " must be positive");
        }
    }
    if (tol.refute_fraction > 1.0 || tol.agreement > 1.0) {
        throw ConfigError("tolerances fractions must not exceed 1");
    }
    if (lattice.per_axis < 1) {
        throw ConfigError("lattice.per_axis must be >= 1");
    }
    if (!(lattice.spacing > 0.0)) {
        throw ConfigError("lattice.spacing must be positive");
    }
    if (seed.kind == Seed::Kind::Spec) {
        seed.spec.validate();
    } else if (seed.curve.dim() == 0) {
        throw ConfigError("seed.curve must not be empty");
    }
    if (inversion) {
        inversion->validate();
    }
}

json to_json(const CPoly &p)
{
    json out = json::array();
    for (const complex &z : p.coeffs()) {
        out.push_back(json::array({z.real(), z.imag()}));
    }
    return out;
}

json to_json(const CVecPoly &v)
{
    json out = json::array();
    for (const CPoly &p : v.components()) {
        out.push_back(to_json(p));
    }
    return out;
}

namespace {

complex complex_from_json(const json &j, const std::string &field)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(field + ": complex numbers are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

double number(const json &j, const std::string &field)
{
    if (!j.is_number()) {
        throw ConfigError(field + " must be a number");
    }
    return j.get<double>();
}

int integer(const json &j, const std::string &field)
{
    if (!j.is_number_integer()) {
        throw ConfigError(field + " must be an integer");
    }
    return j.get<int>();
}

Eigen::VectorXd vector_from_json(const json &j, const std::string &field)
{
    if (!j.is_array()) {
        throw ConfigError(field + " must be an array of numbers");
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        v[static_cast<Eigen::Index>(k)] = number(j[k], field + "[" + std::to_string(k) + "]");
    }
    return v;
}

json vector_to_json(const Eigen::VectorXd &v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

} // namespace

CPoly cpoly_from_json(const json &j, const std::string &field)
{
    if (!j.is_array()) {
        throw ConfigError(field + " must be a list of [re, im] coefficients");
    }
    std::vector<complex> c;
    for (std::size_t k = 0; k < j.size(); ++k) {
        c.push_back(complex_from_json(j[k], field + "[" + std::to_string(k) + "]"));
    }
    return CPoly(std::move(c));
}

CVecPoly cvecpoly_from_json(const json &j, const std::string &field)
{
    if (!j.is_array()) {
        throw ConfigError(field + " must be a list of polynomials");
    }
    std::vector<CPoly> comps;
    for (std::size_t k = 0; k < j.size(); ++k) {
        comps.push_back(cpoly_from_json(j[k], field + "[" + std::to_string(k) + "]"));
    }
    return CVecPoly(std::move(comps));
}

json to_json(const Seed &s)
{
    json out;
    switch (s.kind) {
    case Seed::Kind::Spec: {
        out["ambient_dim"] = s.spec.ambient_dim;
        out["isotropy_order"] = s.spec.isotropy_order;
        out["alpha0"] = to_json(s.spec.alpha0);
        json b = json::array();
        for (const CPoly &p : s.spec.betas) {
            b.push_back(to_json(p));
        }
        out["betas"] = b;
        break;
    }
    case Seed::Kind::Holomorphic:
        out["holomorphic"] = to_json(s.curve);
        break;
    case Seed::Kind::Phi:
        out["phi"] = to_json(s.curve);
        break;
    }
    return out;
}

Seed seed_from_json(const json &j)
{
    if (!j.is_object()) {
        throw ConfigError("seed must be an object");
    }
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) {
            throw ConfigError("seed.preset must be a string");
        }
        return preset_seed(j["preset"].get<std::string>());
    }
    Seed s;
    if (j.contains("phi")) {
        s.kind = Seed::Kind::Phi;
        s.curve = cvecpoly_from_json(j["phi"], "seed.phi");
        return s;
    }
    if (j.contains("holomorphic")) {
        s.kind = Seed::Kind::Holomorphic;
        s.curve = cvecpoly_from_json(j["holomorphic"], "seed.holomorphic");
        return s;
    }
    s.kind = Seed::Kind::Spec;
    if (!j.contains("ambient_dim")) {
        throw ConfigError("seed.ambient_dim is required");
    }
    if (!j.contains("isotropy_order")) {
        throw ConfigError("seed.isotropy_order is required");
    }
    s.spec.ambient_dim = integer(j["ambient_dim"], "seed.ambient_dim");
    s.spec.isotropy_order = integer(j["isotropy_order"], "seed.isotropy_order");
    if (j.contains("alpha0")) {
        s.spec.alpha0 = cvecpoly_from_json(j["alpha0"], "seed.alpha0");
    }
    s.spec.betas.clear();
    if (j.contains("betas")) {
        if (!j["betas"].is_array()) {
            throw ConfigError("seed.betas must be a list of polynomials");
        }
        for (std::size_t k = 0; k < j["betas"].size(); ++k) {
            s.spec.betas.push_back(cpoly_from_json(j["betas"][k], "seed.betas[" + std::to_string(k) + "]"));
        }
    } else {
        s.spec.betas.assign(static_cast<std::size_t>(std::max(s.spec.isotropy_order + 1, 0)), CPoly{1.0});
    }
    s.spec.validate();
    return s;
}

json to_json(const RunConfig &c)
{
    json out;
    if (!c.preset.empty()) {
        out["seed"] = json{{"preset", c.preset}};
    } else {
        out["seed"] = to_json(c.seed);
    }
    out["c"] = c.c;
    if (c.v) {
        out["v"] = vector_to_json(*c.v);
    }
    json disks = json::array();
    for (const Disk &d : c.grid.excluded_disks) {
        disks.push_back(json::array({d.cx, d.cy, d.r}));
    }
    out["grid"] = json{{"x0", c.grid.x0}, {"x1", c.grid.x1}, {"y0", c.grid.y0}, {"y1", c.grid.y1},
                       {"nx", c.grid.nx}, {"ny", c.grid.ny}, {"excluded", disks}};
    out["jet_order"] = c.jet_order;
    json tol;
    for (const auto &[name, member] : c.tol.fields()) {
        tol[name] = c.tol.*member;
    }
    out["tolerances"] = tol;
    out["lattice"] = json{{"per_axis", c.lattice.per_axis}, {"spacing", c.lattice.spacing}};
    if (c.inversion) {
        out["inversion"] = json{{"center", vector_to_json(c.inversion->center)}, {"radius", c.inversion->radius}};
    }
    if (c.projection) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < c.projection->rows(); ++r) {
            rows.push_back(vector_to_json(c.projection->row(r).transpose()));
        }
        out["projection"] = rows;
    }
    out["checks"] = c.checks;
    out["rng_seed"] = c.rng_seed;
    return out;
}

RunConfig config_from_json(const json &j)
{
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    RunConfig c;
    if (j.contains("seed")) {
        const json &s = j["seed"];
        c.seed = seed_from_json(s);
        c.preset = (s.is_object() && s.contains("preset")) ? s["preset"].get<std::string>() : "";
    }
    if (j.contains("c")) {
        c.c = number(j["c"], "c");
    }
    if (j.contains("v")) {
        c.v = vector_from_json(j["v"], "v");
    }
    if (j.contains("grid")) {
        const json &g = j["grid"];
        if (!g.is_object()) {
            throw ConfigError("grid must be an object");
        }
        for (const char *k : {"x0", "x1", "y0", "y1"}) {
            if (g.contains(k)) {
                const double val = number(g[k], std::string("grid.") + k);
                const std::string key(k);
                (key == "x0" ? c.grid.x0 : key == "x1" ? c.grid.x1 : key == "y0" ? c.grid.y0 : c.grid.y1) = val;
            }
        }
        if (g.contains("nx")) {
            c.grid.nx = integer(g["nx"], "grid.nx");
        }
        if (g.contains("ny")) {
            c.grid.ny = integer(g["ny"], "grid.ny");
        }
        if (g.contains("excluded")) {
            if (!g["excluded"].is_array()) {
                throw ConfigError("grid.excluded must be a list of [cx, cy, r]");
            }
            for (const json &d : g["excluded"]) {
                const Eigen::VectorXd v = vector_from_json(d, "grid.excluded");
                if (v.size() != 3) {
                    throw ConfigError("grid.excluded entries are [cx, cy, r]");
                }
                c.grid.excluded_disks.push_back({v[0], v[1], v[2]});
            }
        }
    }
    if (j.contains("jet_order")) {
        c.jet_order = integer(j["jet_order"], "jet_order");
    }
    if (j.contains("tolerances")) {
        const json &t = j["tolerances"];
        if (!t.is_object()) {
            throw ConfigError("tolerances must be an object");
        }
        const auto fields = c.tol.fields();
        for (const auto &[name, val] : t.items()) {
            const auto it = fields.find(name);
            if (it == fields.end()) {
                throw ConfigError("tolerances." + name + " is not a known tolerance");
            }
            c.tol.*(it->second) = number(val, "tolerances." + name);
        }
    }
    if (j.contains("lattice")) {
        const json &l = j["lattice"];
        if (l.contains("per_axis")) {
            c.lattice.per_axis = integer(l["per_axis"], "lattice.per_axis");
        }
        if (l.contains("spacing")) {
            c.lattice.spacing = number(l["spacing"], "lattice.spacing");
        }
    }
    if (j.contains("inversion")) {
        const json &inv = j["inversion"];
        if (!inv.is_object() || !inv.contains("center") || !inv.contains("radius")) {
            throw ConfigError("inversion needs center and radius");
        }
        c.inversion = InversionSpec{vector_from_json(inv["center"], "inversion.center"),
                                    number(inv["radius"], "inversion.radius")};
    }
    if (j.contains("projection")) {
        const json &p = j["projection"];
        if (!p.is_array() || p.size() != 3) {
            throw ConfigError("projection must have 3 rows");
        }
        Eigen::MatrixXd m;
        for (std::size_t r = 0; r < 3; ++r) {
            const Eigen::VectorXd row = vector_from_json(p[r], "projection[" + std::to_string(r) + "]");
            if (r == 0) {
                m.resize(3, row.size());
            } else if (row.size() != m.cols()) {
                throw ConfigError("projection rows must have equal length");
            }
            m.row(static_cast<Eigen::Index>(r)) = row.transpose();
        }
        c.projection = m;
    }
    if (j.contains("checks")) {
        if (!j["checks"].is_array()) {
            throw ConfigError("checks must be a list of check ids");
        }
        for (const json &id : j["checks"]) {
            if (!id.is_string()) {
                throw ConfigError("checks entries must be strings");
            }
            c.checks.push_back(id.get<std::string>());
        }
    }
    if (j.contains("rng_seed")) {
        if (!j["rng_seed"].is_number_unsigned() && !j["rng_seed"].is_number_integer()) {
            throw ConfigError("rng_seed must be a non-negative integer");
        }
        c.rng_seed = j["rng_seed"].get<std::uint64_t>();
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return config_from_json(j);
}

void apply_grid_string(Grid &grid, const std::string &text)
{
    std::stringstream ss(text);
    std::string item;
    std::vector<std::string> parts;
    while (std::getline(ss, item, ',')) {
        parts.push_back(item);
    }
    if (parts.size() != 6) {
        throw ConfigError("grid: expected x0,x1,y0,y1,nx,ny");
    }
    try {
        grid.x0 = std::stod(parts[0]);
        grid.x1 = std::stod(parts[1]);
        grid.y0 = std::stod(parts[2]);
        grid.y1 = std::stod(parts[3]);
        grid.nx = std::stoi(parts[4]);
        grid.ny = std::stoi(parts[5]);
    } catch (const std::exception &) {
        throw ConfigError("grid: could not parse '" + text + "'");
    }
}

std::uint64_t spec_hash(const RunConfig &c)
{
    const std::string s = to_json(c).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace superconf
