#include <superconf/verify.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

namespace superconf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
const complex kI{0.0, 1.0};

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                fn(i);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

complex bdot(const CVec &a, const Vec &b) { return a.cwiseProduct(b.cast<complex>()).sum(); }

Vec project_off_plane(const Vec &v, const Vec &t1, const Vec &t2) { return v - v.dot(t1) * t1 - v.dot(t2) * t2; }

/// |a ^ b| / (|a| |b|) over C: zero iff a and b are complex multiples.
double complex_parallel_defect(const CVec &a, const CVec &b)
{
    const double na = a.squaredNorm();
    const double nb = b.squaredNorm();
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    const double c = std::norm(a.dot(b));
    return std::sqrt(std::max(na * nb - c, 0.0) / (na * nb));
}

double lower_quantile(std::vector<double> v, double fraction)
{
    if (v.empty()) {
        return kNaN;
    }
    std::sort(v.begin(), v.end(), [](double a, double b) {
        if (std::isnan(a) || std::isnan(b)) {
            return std::isnan(a) && !std::isnan(b);
        }
        return a < b;
    });
    const auto k = static_cast<std::size_t>(std::floor(static_cast<double>(v.size()) * (1.0 - fraction) + 1e-12));
    return v[std::min(k, v.size() - 1)];
}

double max_of(const std::vector<double> &v)
{
    double m = v.empty() ? kNaN : -std::numeric_limits<double>::infinity();
    for (double x : v) {
        if (std::isnan(x)) {
            return kNaN;
        }
        m = std::max(m, x);
    }
    return m;
}

double min_of(const std::vector<double> &v)
{
    double m = v.empty() ? kNaN : std::numeric_limits<double>::infinity();
    for (double x : v) {
        if (std::isnan(x)) {
            return kNaN;
        }
        m = std::min(m, x);
    }
    return m;
}

std::string hex64(std::uint64_t h)
{
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

/// Random orthonormal k-frame in R^n.
Eigen::MatrixXd random_frame(int n, int k, std::mt19937_64 &rng)
{
    std::normal_distribution<double> nd;
    Eigen::MatrixXd m(n, k);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) {
            m(i, j) = nd(rng);
        }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
}

IsotropicSpec random_spec(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> nd(4, 12);
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_real_distribution<double> co(-1.0, 1.0);
    auto poly = [&] {
        std::vector<complex> c(static_cast<std::size_t>(deg(rng) + 1));
        for (auto &z : c) {
            z = {co(rng), co(rng)};
        }
        return CPoly(std::move(c));
    };
    IsotropicSpec s;
    s.ambient_dim = nd(rng);
    std::uniform_int_distribution<int> md(1, s.ambient_dim / 2 - 1);
    s.isotropy_order = md(rng);
    std::vector<CPoly> a0;
    for (int k = 0; k < s.ambient_dim - 2 * (s.isotropy_order + 1); ++k) {
        a0.push_back(poly());
    }
    s.alpha0 = CVecPoly(std::move(a0));
    for (int k = 0; k <= s.isotropy_order; ++k) {
        s.betas.push_back(poly());
    }
    return s;
}

struct GridSummary {
    std::size_t total = 0;
    std::size_t excluded = 0;
};

GridSummary summarize(const std::vector<PedalPoint> &pts)
{
    GridSummary s;
    s.total = pts.size();
    for (const auto &p : pts) {
        s.excluded += p.excluded ? 1 : 0;
    }
    return s;
}

template <class F>
std::vector<double> collect(const std::vector<PedalPoint> &pts, F f)
{
    std::vector<double> out;
    for (const auto &p : pts) {
        if (!p.excluded) {
            out.push_back(f(p));
        }
    }
    return out;
}

/// Mean-curvature ratio and metric data of one point of a surface.
struct SurfacePoint {
    bool ok = false;
    double circle = kNaN;
    double conformal = kNaN;
    double mean_ratio = kNaN;
    int rank = -1;
};

SurfacePoint surface_point(const SurfaceEvaluator &s, Point p, int order)
{
    SurfacePoint out;
    try {
        const LocalSurface ls(s(p, order));
        const SecondFundamental sf = second_fundamental(ls);
        const double scale = alpha_scale(sf);
        const Vec fx = ls.partial(1, 0).value();
        const Vec fy = ls.partial(0, 1).value();
        out.conformal = std::max(std::abs(fx.dot(fy)), std::abs(fx.squaredNorm() - fy.squaredNorm())) / fx.squaredNorm();
        out.mean_ratio = scale > 0.0 ? sf.H.norm() / scale : 0.0;
        out.circle = ellipse_from_semidiameters(sf.xi1, sf.xi2, 1, scale).circle_defect;
        out.rank = first_normal_rank(sf);
        out.ok = true;
    } catch (const GeometryError &) {
        out.ok = false;
    }
    return out;
}

std::vector<SurfacePoint> surface_points(const SurfaceEvaluator &s, const Grid &grid, int order)
{
    const auto pts = grid.points();
    std::vector<SurfacePoint> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        if (!grid.is_excluded(pts[i])) {
            out[i] = surface_point(s, pts[i], order);
        }
    });
    return out;
}

} // namespace

CVec twozero_part(const LocalSurface &s)
{
    const Vec t1 = s.e1().value();
    const Vec t2 = s.e2().value();
    const Vec axx = project_off_plane(s.partial(2, 0).value(), t1, t2);
    const Vec axy = project_off_plane(s.partial(1, 1).value(), t1, t2);
    const Vec ayy = project_off_plane(s.partial(0, 2).value(), t1, t2);
    return (0.25 * (axx - ayy)).cast<complex>() - kI * (0.5 * axy).cast<complex>();
}

double swillmore_defect(const LocalSurface &s)
{
    if (s.order() < 3) {
        throw GeometryError(ErrorKind::InsufficientOrder, "S-Willmore defect needs jets of order 3");
    }
    const Vec t1 = s.e1().value();
    const Vec t2 = s.e2().value();
    const auto aj = second_fundamental_jets(s);
    const JetVec hj = (aj[0] + aj[2]) * 0.5;
    const Vec hx = project_off_plane(hj.derivative(1, 0), t1, t2);
    const Vec hy = project_off_plane(hj.derivative(0, 1), t1, t2);
    const CVec dh = (0.5 * hx).cast<complex>() - kI * (0.5 * hy).cast<complex>();
    return complex_parallel_defect(dh, twozero_part(s));
}

void CheckRecord::decide()
{
    if (std::isnan(defect)) {
        status = "fail";
        return;
    }
    status = (bound == Bound::Upper ? defect <= threshold : defect >= threshold) ? "pass" : "fail";
}

std::string VerificationReport::status() const
{
    if (active_points == 0) {
        return "inconclusive";
    }
    bool any = false;
    for (const auto &c : checks) {
        if (c.failed()) {
            return "fail";
        }
        any = any || c.pass();
    }
    return any ? "pass" : "inconclusive";
}

const CheckRecord *VerificationReport::find(const std::string &id) const
{
    for (const auto &c : checks) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json tj;
    for (const auto &[name, member] : tol.fields()) {
        tj[name] = tol.*member;
    }
    nlohmann::json out;
    out["version"] = version;
    out["environment"] = {{"jet_order", jet_order}, {"tolerances", tj}, {"spec_hash", hex64(spec_hash)},
                          {"grid_points", grid_points}, {"active_points", active_points}};
    out["status"] = status();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &c : checks) {
        nlohmann::json r;
        r["id"] = c.id;
        r["anchor"] = c.anchor;
        r["grid"] = c.grid;
        r["excluded"] = c.excluded;
        r["defect"] = c.defect;
        r["threshold"] = c.threshold;
        r["bound"] = c.bound == Bound::Upper ? "upper" : "lower";
        r["pass"] = c.pass();
        r["status"] = c.status;
        if (!c.note.empty()) {
            r["note"] = c.note;
        }
        arr.push_back(r);
    }
    out["checks"] = arr;
    return out;
}

PedalPoint pedal_point(const SurfaceEvaluator &f, Point p, int jet_order)
{
    PedalPoint pt;
    pt.point = p;
    pt.lambda = kNaN;
    pt.hodge = {kNaN, kNaN};
    pt.circle = pt.wintgen = pt.mean_curvature = pt.laplacian = kNaN;
    pt.structure_a = pt.structure_b = kNaN;
    pt.structure_c = {kNaN, kNaN};
    pt.swillmore = pt.swillmore_scalar = pt.kappa_theta = kNaN;
    pt.rank = -1;
    try {
        const PedalAnalysis a = analyze_pedal(f, p, jet_order);
        const LocalSurface &fl = *a.f;
        const LocalSurface &gl = *a.g;
        const PedalSample &ps = a.pedal;
        pt.pedal = ps;
        pt.K = a.K;
        const double fscale = alpha_scale(a.f_sf);
        pt.f_mean_ratio = fscale > 0.0 ? a.f_sf.H.norm() / fscale : 0.0;
        if (!ps.z_nonzero || !ps.delta_nonzero) {
            pt.excluded = true;
            pt.reason = !ps.z_nonzero ? "Z=0" : "delta=0";
            return pt;
        }
        if (a.f_flag.bundles.empty() || a.f_flag.bundles[0].size() != 2) {
            pt.excluded = true;
            pt.reason = "first normal space is not a plane";
            return pt;
        }

        const Vec fx = fl.partial(1, 0).value();
        const Vec fy = fl.partial(0, 1).value();
        const Vec gx = gl.partial(1, 0).value();
        const Vec gy = gl.partial(0, 1).value();
        const double gx2 = gx.squaredNorm();
        pt.conformal = std::max(std::abs(gx.dot(gy)), std::abs(gx2 - gy.squaredNorm())) / gx2;
        const double ratio = gx2 / fx.squaredNorm();
        pt.factor = std::abs(ratio + 0.5 * pt.K * ps.theta) / ratio;

        const Vec u = ps.Z - ps.delta;
        pt.JZ_delta = a.J_tangent(ps.Z) + a.J_normal(ps.delta);
        for (const auto &b : a.f_flag.bundles[0]) {
            pt.n1_basis.push_back(b.value());
        }
        std::vector<Vec> normals{u, pt.JZ_delta};
        for (const Vec &nu : a.complement_basis(1)) {
            normals.push_back(nu);
        }
        pt.normal_bundle = 0.0;
        for (const Vec &n : normals) {
            for (const Vec *t : {&gx, &gy}) {
                pt.normal_bundle = std::max(pt.normal_bundle, std::abs(t->dot(n)) / (t->norm() * n.norm()));
            }
        }

        if (gl.order() < 2) {
            return pt;
        }
        const SecondFundamental gsf = second_fundamental(gl);
        const double gscale = alpha_scale(gsf);
        const Curvatures gc = curvatures(gl, gsf);
        pt.circle = ellipse_from_semidiameters(gsf.xi1, gsf.xi2, 1, gscale).circle_defect;
        pt.wintgen = gc.wintgen_defect / (gscale * gscale);
        pt.rank = first_normal_rank(gsf);
        pt.H_g = gsf.H;
        pt.g_t1 = gl.e1().value();
        pt.g_t2 = gl.e2().value();
        pt.mean_curvature = (gsf.H - (2.0 / ps.theta) * u).norm() / gsf.H.norm();
        const Vec lap = (gl.partial(2, 0).value() + gl.partial(0, 2).value()) / fx.squaredNorm();
        const Vec lap_rhs = 2.0 * pt.K * (ps.delta - ps.Z);
        pt.laplacian = (lap - lap_rhs).norm() / lap_rhs.norm();

        const CVec b = twozero_part(gl);
        const double bn = b.norm();

        // f's tangent data in its frame: d = (bx - i by) / 2.
        const Vec e1 = fl.e1().value();
        const Vec e2 = fl.e2().value();
        const Eigen::Vector2cd d(0.5 * complex(fx.dot(e1), -fy.dot(e1)), 0.5 * complex(fx.dot(e2), -fy.dot(e2)));
        const std::array<const Vec *, 4> al{&a.f_sf.alpha11, &a.f_sf.alpha12, &a.f_sf.alpha12, &a.f_sf.alpha22};
        auto alpha_f = [&](const Eigen::Vector2cd &x, const Eigen::Vector2cd &y) {
            CVec out = CVec::Zero(fx.size());
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    out += (x[i] * y[j]) * al[static_cast<std::size_t>(2 * i + j)]->cast<complex>();
                }
            }
            return out;
        };
        const Eigen::Vector2cd zf = ps.Z_frame.cast<complex>();
        const CVec a_dz = alpha_f(d, zf);

        if (a.f_flag.bundles.size() >= 2) {
            double s2 = 0.0;
            for (const Vec &nu : a.complement_basis(2)) {
                s2 += std::norm(bdot(b, nu));
            }
            pt.structure_a = std::sqrt(s2) / bn;
            const complex lhs = bdot(b, pt.JZ_delta);
            const complex rhs = kI * bdot(b, u);
            pt.structure_b = std::abs(lhs - rhs) / (bn * u.norm());

            if (a.conn && a.f_flag.bundles[1].size() == 2) {
                const ConnectionSample &cs = *a.conn;
                pt.lambda = cs.lambda;
                const auto hr = hodge_residuals(cs);
                pt.hodge = {hr[0].max_residual, hr[1].max_residual};
                const auto nf = a.f_flag.normal_frame();
                const Vec e3 = nf[0].value(), e4 = nf[1].value(), e5 = nf[2].value(), e6 = nf[3].value();
                const complex w = d[0] * cs.omega[0] + d[1] * cs.omega[1];
                const complex t3 = bdot(a_dz, e3);
                const complex t4 = bdot(a_dz, e4);
                const complex m5 = bdot(b, e5);
                const complex m6 = bdot(b, e6);
                for (int k = 0; k < 2; ++k) {
                    const double s = k == 0 ? 1.0 : -1.0;
                    const complex p5 = -w * (t3 - s * kI * t4);
                    const complex p6 = -cs.lambda * w * (s * kI * t3 + t4);
                    pt.structure_c[static_cast<std::size_t>(k)] = std::max(std::abs(m5 - p5), std::abs(m6 - p6)) / bn;
                }
            }
        }

        const Vec e3p = ps.delta / ps.delta.norm();
        const Vec e4p = a.J_normal(e3p);
        pt.kappa_theta = a.f_sf.xi1.norm() * std::sqrt(ps.theta);
        const CVec a_dd = alpha_f(d, d);
        const complex dz = d.dot(zf.conjugate());
        const complex t = ps.delta.squaredNorm() * bdot(a_dd, e3p) + dz * (bdot(a_dz, e3p) + kI * bdot(a_dz, e4p));
        const double tscale = ps.delta.squaredNorm() * a_dd.norm() + std::abs(dz) * a_dz.norm();
        pt.swillmore_scalar = std::abs(t) / tscale;

        if (gl.order() < 3) {
            pt.swillmore = kNaN;
            return pt;
        }
        pt.swillmore = swillmore_defect(gl);
    } catch (const GeometryError &e) {
        pt.excluded = true;
        pt.reason = e.what();
    }
    return pt;
}

std::vector<PedalPoint> pedal_points(const SurfaceEvaluator &f, const Grid &grid, int jet_order)
{
    const auto pts = grid.points();
    std::vector<PedalPoint> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        if (grid.is_excluded(pts[i])) {
            out[i].point = pts[i];
            out[i].excluded = true;
            out[i].reason = "excluded disk";
        } else {
            out[i] = pedal_point(f, pts[i], jet_order);
        }
    });
    return out;
}

MinimalityResiduals minimality_residuals(const PedalPoint &pt, const Vec &p0)
{
    const PedalSample &ps = pt.pedal;
    const Vec d = ps.g - p0;
    const double d2 = d.squaredNorm();
    const double dn = std::sqrt(d2);
    const Vec u = ps.Z - ps.delta;
    const Vec &w = pt.JZ_delta;
    Vec p0_n1 = Vec::Zero(p0.size());
    for (const Vec &b : pt.n1_basis) {
        p0_n1 += p0.dot(b) * b;
    }
    const Vec &t1 = pt.g_t1;
    const Vec &t2 = pt.g_t2;
    // Tangent plane of f is span{Z, JZ}; JZ is JZ + J delta with its N_1 part removed.
    const Vec zt = ps.Z / ps.Z.norm();
    Vec jz = w;
    for (const Vec &b : pt.n1_basis) {
        jz -= jz.dot(b) * b;
    }
    jz.normalize();
    Vec p0_perp = p0 - p0_n1;
    p0_perp -= p0_perp.dot(zt) * zt + p0_perp.dot(jz) * jz;

    MinimalityResiduals out;
    const double r1 = d2 - ps.delta.squaredNorm() - p0.dot(u);
    const double r2 = p0.dot(w);
    const Vec r3 = ps.eta - p0_perp;
    const double st = std::sqrt(ps.theta);
    out.r = {std::abs(r1) / (st * dn), std::abs(r2) / (st * dn), r3.norm() / dn};

    const Vec lhs = 0.5 * d2 * pt.H_g + project_off_plane(d, t1, t2);
    const Vec rhs = (r1 / ps.theta) * u - (r2 / ps.theta) * w + r3;
    out.identity = (lhs - rhs).norm() / std::max(lhs.norm(), dn);
    return out;
}

std::vector<Vec> inversion_lattice(const std::vector<PedalPoint> &pts, const LatticeSpec &spec, std::uint64_t seed)
{
    std::vector<Vec> gs;
    for (const auto &p : pts) {
        if (!p.excluded) {
            gs.push_back(p.pedal.g);
        }
    }
    if (gs.empty()) {
        return {};
    }
    const int n = static_cast<int>(gs[0].size());
    Vec lo = gs[0], hi = gs[0], centroid = Vec::Zero(n);
    for (const Vec &g : gs) {
        lo = lo.cwiseMin(g);
        hi = hi.cwiseMax(g);
        centroid += g;
    }
    centroid /= static_cast<double>(gs.size());
    const double diam = (hi - lo).norm();
    std::mt19937_64 rng(seed);
    const Eigen::MatrixXd frame = random_frame(n, 3, rng);
    std::vector<Vec> out;
    const double h = spec.spacing * diam;
    const double mid = 0.5 * (spec.per_axis - 1);
    for (int i = 0; i < spec.per_axis; ++i) {
        for (int j = 0; j < spec.per_axis; ++j) {
            for (int k = 0; k < spec.per_axis; ++k) {
                out.push_back(centroid + h * ((i - mid) * frame.col(0) + (j - mid) * frame.col(1) + (k - mid) * frame.col(2)));
            }
        }
    }
    return out;
}

std::vector<std::string> check_ids()
{
    return {"isotropy",
            "minimality",
            "gauss.closed_form",
            "gauss.intrinsic",
            "superconformal.positive",
            "wintgen.positive",
            "superconformal.negative",
            "conformal.pedal",
            "conformal.factor",
            "conformal.control",
            "normal_bundle.pedal",
            "mean_curvature.pedal",
            "laplacian.pedal",
            "connection.relations",
            "structure.a",
            "structure.b",
            "structure.c",
            "inversion.formula",
            "nonminimal.inversion",
            "nonminimal.residual",
            "swillmore.parallel",
            "swillmore.agreement",
            "swillmore.kappa_theta",
            "pedal_general.superconformal",
            "pedal_general.conformal",
            "constant_pedal.superconformal",
            "constant_pedal.inverted_minimal",
            "rank.pedal",
            "rank.inverted",
            "rank.holo4",
            "hygiene.finite_difference"};
}

VerificationReport run_all(const RunConfig &cfg)
{
    cfg.validate();
    VerificationReport rep;
    rep.jet_order = cfg.jet_order;
    rep.tol = cfg.tol;
    rep.spec_hash = spec_hash(cfg);
    const Tolerances &tol = cfg.tol;
    const int d = cfg.jet_order;

    auto selected = [&](const std::string &id) {
        if (cfg.checks.empty()) {
            return true;
        }
        return std::any_of(cfg.checks.begin(), cfg.checks.end(), [&](const std::string &s) {
            return id == s || (id.size() > s.size() && id.compare(0, s.size(), s) == 0 && id[s.size()] == '.');
        });
    };
    auto any_selected = [&](std::initializer_list<const char *> ids) {
        return std::any_of(ids.begin(), ids.end(), [&](const char *s) { return selected(s); });
    };
    auto push = [&](CheckRecord r, int needs_order) {
        if (d < needs_order) {
            r.status = "skipped";
            r.note = "insufficient jet order (needs " + std::to_string(needs_order) + ")";
            r.defect = kNaN;
        } else if (r.grid > 0 && r.excluded >= r.grid) {
            r.status = "skipped";
            r.note = "no evaluable points";
            r.defect = kNaN;
        } else {
            r.decide();
        }
        rep.checks.push_back(std::move(r));
    };
    auto record = [](std::string id, std::string anchor, double defect, double threshold, Bound bound,
                     std::size_t grid, std::size_t excluded, std::string note = {}) {
        CheckRecord r;
        r.id = std::move(id);
        r.anchor = std::move(anchor);
        r.defect = defect;
        r.threshold = threshold;
        r.bound = bound;
        r.grid = grid;
        r.excluded = excluded;
        r.note = std::move(note);
        return r;
    };

    const IsotropicCurve curve = cfg.seed.build();
    const SurfaceEvaluator f = surface_evaluator(curve);
    const Grid &grid = cfg.grid;
    const auto gpts = grid.points();
    rep.grid_points = gpts.size();
    std::mt19937_64 rng(cfg.rng_seed);

    if (selected("isotropy")) {
        double worst = isotropy_residual(curve.phi);
        for (const auto &name : preset_names()) {
            worst = std::max(worst, isotropy_residual(preset_seed(name).build().phi));
        }
        std::mt19937_64 r2(cfg.rng_seed + 1);
        for (int k = 0; k < 200; ++k) {
            worst = std::max(worst, isotropy_residual(w_generate(random_spec(r2)).phi));
        }
        push(record("isotropy", "<phi', phi'> = 0 for the seed, the presets and 200 random specs", worst,
                    tol.isotropy, Bound::Upper, 0, 0),
             0);
    }

    if (selected("minimality")) {
        double worst = 0.0;
        std::size_t excl = 0;
        std::vector<SurfaceEvaluator> evs{f};
        for (const auto &name : preset_names()) {
            evs.push_back(surface_evaluator(preset_seed(name).build()));
        }
        for (const auto &ev : evs) {
            for (const auto &sp : surface_points(ev, grid, 2)) {
                if (!sp.ok) {
                    ++excl;
                    continue;
                }
                worst = std::max(worst, sp.mean_ratio);
            }
        }
        push(record("minimality", "|H_f| / |alpha_f| = 0 for generated surfaces", worst, tol.minimal_f,
                    Bound::Upper, gpts.size() * evs.size(), excl),
             2);
    }

    const bool is_holo3 = to_json(cfg.seed) == to_json(preset_seed("holo3"));
    if (selected("gauss.closed_form")) {
        if (!is_holo3) {
            CheckRecord r = record("gauss.closed_form", "K = -8 / (1 + 2|z|^2)^4", kNaN, tol.gauss, Bound::Upper,
                                   gpts.size(), 0, "closed form applies to the holo3 seed only");
            rep.checks.push_back(r);
        } else {
            std::vector<Point> pts;
            for (const Point &p : gpts) {
                if (!grid.is_excluded(p)) {
                    pts.push_back(p);
                }
            }
            pts.push_back({0.0, 0.0});
            std::vector<double> err(pts.size(), kNaN);
            parallel_for(pts.size(), [&](std::size_t i) {
                try {
                    const double k = curvatures(f, pts[i]).K;
                    const double r2 = pts[i].x * pts[i].x + pts[i].y * pts[i].y;
                    const double exact = -8.0 / std::pow(1.0 + 2.0 * r2, 4);
                    err[i] = std::abs(k - exact) / std::abs(exact);
                } catch (const GeometryError &) {
                }
            });
            push(record("gauss.closed_form", "K = -8 / (1 + 2|z|^2)^4", max_of(err), tol.gauss, Bound::Upper,
                        pts.size(), 0, "includes the origin, K(0,0) = -8"),
                 2);
        }
    }

    if (selected("gauss.intrinsic")) {
        std::vector<double> err(gpts.size(), 0.0);
        std::size_t excl = 0;
        if (d >= 3) {
            std::vector<char> bad(gpts.size(), 0);
            parallel_for(gpts.size(), [&](std::size_t i) {
                if (grid.is_excluded(gpts[i])) {
                    bad[i] = 1;
                    return;
                }
                try {
                    const LocalSurface ls(f(gpts[i], 3));
                    const double k = curvatures(ls).K;
                    err[i] = std::abs(k - intrinsic_gauss_curvature(ls)) / std::max(std::abs(k), 1e-300);
                } catch (const GeometryError &) {
                    bad[i] = 1;
                }
            });
            excl = static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
        }
        push(record("gauss.intrinsic", "Gauss equation K equals the metric (Brioschi) K", *std::max_element(err.begin(), err.end()),
                    tol.gauss, Bound::Upper, gpts.size(), excl),
             3);
    }

    // Pedal of f on the grid.
    std::vector<PedalPoint> pp;
    GridSummary ps;
    const bool need_pedal =
        any_selected({"superconformal.positive", "wintgen.positive", "conformal.pedal", "conformal.factor",
                      "normal_bundle.pedal", "mean_curvature.pedal", "laplacian.pedal", "connection.relations",
                      "structure.a", "structure.b", "structure.c", "inversion.formula", "nonminimal.inversion",
                      "nonminimal.residual", "swillmore.parallel", "swillmore.agreement", "swillmore.kappa_theta",
                      "rank.pedal", "rank.inverted"});
    if (need_pedal) {
        pp = pedal_points(f, grid, d);
        ps = summarize(pp);
        rep.active_points = ps.total - ps.excluded;
    } else {
        for (const Point &p : gpts) {
            rep.active_points += grid.is_excluded(p) ? 0 : 1;
        }
    }
    auto pedal_record = [&](std::string id, std::string anchor, const std::vector<double> &vals, double thr,
                            Bound bound, std::string note = {}) {
        double defect = kNaN;
        if (!vals.empty()) {
            defect = bound == Bound::Upper ? max_of(vals) : min_of(vals);
        }
        return record(std::move(id), std::move(anchor), defect, thr, bound, ps.total, ps.excluded, std::move(note));
    };

    if (selected("superconformal.positive")) {
        push(pedal_record("superconformal.positive", "curvature ellipse of the pedal is a circle",
                          collect(pp, [](const PedalPoint &p) { return p.circle; }), tol.circle, Bound::Upper),
             3);
    }
    if (selected("wintgen.positive")) {
        push(pedal_record("wintgen.positive", "|H_g|^2 - K_g - |K_N^g| = 0 on the pedal",
                          collect(pp, [](const PedalPoint &p) { return std::abs(p.wintgen); }), tol.wintgen,
                          Bound::Upper),
             3);
    }

    if (any_selected({"superconformal.negative", "conformal.control"})) {
        const SurfaceEvaluator fn = surface_evaluator(preset_seed("noniso").build());
        const auto np = pedal_points(fn, grid, std::min(d, 3));
        const GridSummary ns = summarize(np);
        if (selected("superconformal.negative")) {
            const auto vals = collect(np, [](const PedalPoint &p) { return p.circle; });
            const double q = lower_quantile(vals, tol.refute_fraction);
            std::size_t above = 0;
            for (double v : vals) {
                above += v >= tol.refute ? 1 : 0;
            }
            std::ostringstream note;
            note << "lower " << (1.0 - tol.refute_fraction) * 100 << "% quantile of the noniso pedal circle defect; "
                 << above << "/" << vals.size() << " points above threshold";
            push(record("superconformal.negative", "pedal of a 1-isotropic, not 2-isotropic surface is not superconformal",
                        q, tol.refute, Bound::Lower, ns.total, ns.excluded, note.str()),
                 3);
        }
        if (selected("conformal.control")) {
            const auto vals = collect(np, [](const PedalPoint &p) { return p.conformal; });
            push(record("conformal.control", "pedal of the noniso surface is still conformal", max_of(vals),
                        tol.conformal, Bound::Upper, ns.total, ns.excluded),
                 2);
        }
    }

    if (selected("conformal.pedal")) {
        push(pedal_record("conformal.pedal", "g is conformal: <g_x,g_y> = 0, |g_x| = |g_y|",
                          collect(pp, [](const PedalPoint &p) { return p.conformal; }), tol.conformal, Bound::Upper),
             2);
    }
    if (selected("conformal.factor")) {
        push(pedal_record("conformal.factor", "ds_g^2 = -(1/2) K theta ds_f^2",
                          collect(pp, [](const PedalPoint &p) { return p.factor; }), tol.factor, Bound::Upper),
             2);
    }
    if (selected("normal_bundle.pedal")) {
        push(pedal_record("normal_bundle.pedal", "N_g = span{Z - delta, JZ + J delta} + (N_1 f)^perp",
                          collect(pp, [](const PedalPoint &p) { return p.normal_bundle; }), tol.normal_bundle,
                          Bound::Upper),
             2);
    }
    if (selected("mean_curvature.pedal")) {
        push(pedal_record("mean_curvature.pedal", "H_g = (2 / theta)(Z - delta)",
                          collect(pp, [](const PedalPoint &p) { return p.mean_curvature; }), tol.mean_curvature,
                          Bound::Upper),
             3);
    }
    if (selected("laplacian.pedal")) {
        push(pedal_record("laplacian.pedal", "Laplacian of g = 2K(delta - Z)",
                          collect(pp, [](const PedalPoint &p) { return p.laplacian; }), tol.laplacian, Bound::Upper),
             3);
    }

    // Hodge convention: the one with the smaller worst residual over the grid.
    std::array<double, 2> hodge_worst{0.0, 0.0};
    for (const auto &p : pp) {
        if (!p.excluded) {
            for (std::size_t k = 0; k < 2; ++k) {
                hodge_worst[k] = std::isnan(p.hodge[k]) ? kNaN : std::max(hodge_worst[k], p.hodge[k]);
            }
        }
    }
    const std::size_t conv = (hodge_worst[1] < hodge_worst[0] || std::isnan(hodge_worst[0])) ? 1 : 0;
    const std::string conv_note = conv == 0 ? "convention *w(X) = w(JX)" : "convention *w(X) = -w(JX)";
    if (selected("connection.relations")) {
        double lam = 0.0;
        for (const auto &p : pp) {
            if (!p.excluded) {
                lam = std::max(lam, std::abs(1.0 - p.lambda));
            }
        }
        std::ostringstream note;
        note << conv_note << "; other convention residual " << hodge_worst[1 - conv] << "; max |1 - lambda| " << lam;
        push(record("connection.relations", "w45 = -*w, w46 = -*w36, w36 = lambda *w, w46 = lambda *w45",
                    hodge_worst[conv], tol.connection, Bound::Upper, ps.total, ps.excluded, note.str()),
             4);
    }
    if (selected("structure.a")) {
        push(pedal_record("structure.a", "alpha_g(d,d) has no component in (N_1 f + N_2 f)^perp",
                          collect(pp, [](const PedalPoint &p) { return p.structure_a; }), tol.structure, Bound::Upper),
             3);
    }
    if (selected("structure.b")) {
        push(pedal_record("structure.b", "<alpha_g(d,d), JZ + J delta> = i <alpha_g(d,d), Z - delta>",
                          collect(pp, [](const PedalPoint &p) { return p.structure_b; }), tol.structure, Bound::Upper),
             3);
    }
    if (selected("structure.c")) {
        push(pedal_record("structure.c", "N_2 f part of alpha_g(d,d) = -w(d)<alpha(d,Z), e3 + i e4>(e5 - i lambda e6)",
                          collect(pp, [&](const PedalPoint &p) { return p.structure_c[conv]; }), tol.structure_c,
                          Bound::Upper, conv_note),
             4);
    }

    // Inversions of g.
    std::vector<Vec> gvals;
    Vec glo, ghi, gcen;
    for (const auto &p : pp) {
        if (!p.excluded) {
            gvals.push_back(p.pedal.g);
        }
    }
    double gdiam = 0.0;
    if (!gvals.empty()) {
        glo = ghi = gvals[0];
        gcen = Vec::Zero(gvals[0].size());
        for (const Vec &g : gvals) {
            glo = glo.cwiseMin(g);
            ghi = ghi.cwiseMax(g);
            gcen += g;
        }
        gcen /= static_cast<double>(gvals.size());
        gdiam = (ghi - glo).norm();
    }
    const SurfaceEvaluator g = pedal_surface(f);
    std::vector<InversionSpec> random_inv;
    {
        std::mt19937_64 r3(cfg.rng_seed + 2);
        std::normal_distribution<double> nd;
        std::uniform_real_distribution<double> ud(0.5, 2.0);
        for (int k = 0; k < 10 && !gvals.empty(); ++k) {
            Vec c = gcen;
            for (Eigen::Index i = 0; i < c.size(); ++i) {
                c[i] += gdiam * nd(r3);
            }
            random_inv.push_back({c, ud(r3) * gdiam});
        }
    }

    if (selected("inversion.formula")) {
        std::vector<double> err;
        std::size_t excl = ps.excluded;
        if (!random_inv.empty() && d >= 3) {
            std::vector<double> e(pp.size(), -1.0);
            parallel_for(pp.size(), [&](std::size_t i) {
                if (pp[i].excluded) {
                    return;
                }
                try {
                    const auto r = inverted_shape_and_mean(g, pp[i].point, random_inv[0]);
                    double m = (r.H_direct - r.H_formula).norm() / r.H_direct.norm();
                    double sc = 0.0;
                    for (std::size_t k = 0; k < r.shape_direct.size(); ++k) {
                        sc = std::max(sc, r.shape_direct[k].norm());
                    }
                    for (std::size_t k = 0; k < r.shape_direct.size(); ++k) {
                        m = std::max(m, (r.shape_direct[k] - r.shape_formula[k]).norm() / sc);
                    }
                    e[i] = m;
                } catch (const GeometryError &) {
                }
            });
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!pp[i].excluded) {
                    if (e[i] < 0.0) {
                        ++excl;
                    } else {
                        err.push_back(e[i]);
                    }
                }
            }
        }
        push(record("inversion.formula", "inverted shape operators and H from the transformation rules",
                    max_of(err), tol.mean_curvature, Bound::Upper, ps.total, excl),
             3);
    }

    if (any_selected({"nonminimal.inversion", "nonminimal.residual"}) && d >= 3) {
        const auto centers = inversion_lattice(pp, cfg.lattice, cfg.rng_seed + 3);
        std::vector<double> hmin(centers.size(), kNaN), rmin(centers.size(), kNaN), ident(centers.size(), 0.0);
        parallel_for(centers.size(), [&](std::size_t ci) {
            const Vec &p0 = centers[ci];
            const double R = gdiam;
            std::vector<Vec> imgs;
            std::vector<double> hn;
            double rm = std::numeric_limits<double>::infinity();
            double id = 0.0;
            for (const auto &p : pp) {
                if (p.excluded) {
                    continue;
                }
                const Vec dv = p.pedal.g - p0;
                if (dv.norm() < kPoleExclusion * R) {
                    continue;
                }
                imgs.push_back(invert_point(p.pedal.g, {p0, R}));
                const Vec v = dv.squaredNorm() * p.H_g + 2.0 * project_off_plane(dv, p.g_t1, p.g_t2);
                hn.push_back(v.norm() / (R * R));
                const MinimalityResiduals mr = minimality_residuals(p, p0);
                rm = std::min(rm, std::max({mr.r[0], mr.r[1], mr.r[2]}));
                id = std::max(id, mr.identity);
            }
            if (imgs.empty()) {
                return;
            }
            Vec lo = imgs[0], hi = imgs[0];
            for (const Vec &q : imgs) {
                lo = lo.cwiseMin(q);
                hi = hi.cwiseMax(q);
            }
            const double diag = (hi - lo).norm();
            hmin[ci] = *std::min_element(hn.begin(), hn.end()) * diag;
            rmin[ci] = rm;
            ident[ci] = id;
        });
        std::ostringstream note;
        note << centers.size() << " centers";
        if (selected("nonminimal.inversion")) {
            push(record("nonminimal.inversion", "no inversion of g is minimal: min |H| times diameter of the image",
                        min_of(hmin), tol.nonminimal, Bound::Lower, ps.total, ps.excluded, note.str()),
                 3);
        }
        if (selected("nonminimal.residual")) {
            std::ostringstream n2;
            n2 << note.str() << "; decomposition error " << max_of(ident);
            push(record("nonminimal.residual", "the minimality system for inversions has no solution",
                        min_of(rmin), tol.nonminimal, Bound::Lower, ps.total, ps.excluded, n2.str()),
                 3);
        }
    } else {
        for (const char *id : {"nonminimal.inversion", "nonminimal.residual"}) {
            if (selected(id)) {
                push(record(id, "no inversion of g is minimal", kNaN, tol.nonminimal, Bound::Lower, ps.total,
                            ps.excluded),
                     3);
            }
        }
    }

    if (selected("swillmore.parallel")) {
        const auto vals = collect(pp, [](const PedalPoint &p) { return p.swillmore; });
        std::ostringstream note;
        note << "lower " << (1.0 - tol.refute_fraction) * 100 << "% quantile of the parallelism defect";
        push(record("swillmore.parallel", "d-derivative of H_g is not parallel to alpha_g(d,d)",
                    lower_quantile(vals, tol.refute_fraction), tol.refute, Bound::Lower, ps.total, ps.excluded,
                    note.str()),
             4);
    }
    if (selected("swillmore.agreement")) {
        std::size_t agree = 0, n = 0;
        for (const auto &p : pp) {
            if (p.excluded) {
                continue;
            }
            ++n;
            agree += ((p.swillmore >= tol.refute) == (p.swillmore_scalar >= tol.refute)) ? 1 : 0;
        }
        const double frac = n ? static_cast<double>(agree) / static_cast<double>(n) : kNaN;
        push(record("swillmore.agreement", "scalar criterion and direct defect vanish together", frac, tol.agreement,
                    Bound::Lower, ps.total, ps.excluded),
             4);
    }
    if (selected("swillmore.kappa_theta")) {
        push(pedal_record("swillmore.kappa_theta", "kappa theta != 0 (normalized kappa sqrt(theta))",
                          collect(pp, [](const PedalPoint &p) { return p.kappa_theta; }), tol.refute, Bound::Lower),
             3);
    }

    // Pedals with respect to other origins.
    const int n = f.ambient_dim();
    Vec v_generic(n);
    {
        std::mt19937_64 r4(cfg.rng_seed + 4);
        std::normal_distribution<double> nd;
        for (int i = 0; i < n; ++i) {
            v_generic[i] = nd(r4);
        }
        v_generic *= std::max(gdiam, 1.0) / v_generic.norm();
    }
    if (any_selected({"pedal_general.superconformal", "pedal_general.conformal"})) {
        std::vector<std::pair<double, Vec>> pairs{{2.0, v_generic}, {-0.5, -0.7 * v_generic.reverse()}};
        pairs.emplace_back(cfg.c, cfg.v ? *cfg.v : Vec(0.3 * v_generic));
        double circ = 0.0, conf = 0.0;
        std::size_t excl = 0;
        bool bad_dim = false;
        for (const auto &[c, v] : pairs) {
            if (v.size() != n) {
                bad_dim = true;
                continue;
            }
            for (const auto &sp : surface_points(pedal_surface(f, c, v), grid, 2)) {
                if (!sp.ok) {
                    ++excl;
                    continue;
                }
                circ = std::max(circ, sp.circle);
                conf = std::max(conf, sp.conformal);
            }
        }
        if (bad_dim) {
            throw ConfigError("v has dimension different from the ambient dimension");
        }
        const std::string note = "c in {2, -0.5, " + std::to_string(cfg.c) + "} with generic v";
        if (selected("pedal_general.superconformal")) {
            push(record("pedal_general.superconformal", "pedal of cf + v is superconformal", circ, tol.circle,
                        Bound::Upper, gpts.size() * pairs.size(), excl, note),
                 3);
        }
        if (selected("pedal_general.conformal")) {
            push(record("pedal_general.conformal", "pedal of cf + v is conformal to f", conf, tol.conformal,
                        Bound::Upper, gpts.size() * pairs.size(), excl, note),
                 3);
        }
    }
    if (any_selected({"constant_pedal.superconformal", "constant_pedal.inverted_minimal"})) {
        const Vec v = cfg.v && cfg.v->size() == n ? *cfg.v : v_generic;
        const SurfaceEvaluator g0 = pedal_surface(f, 0.0, v);
        const SurfaceEvaluator gi = invert_evaluator(g0, {v, 1.0});
        const auto s0 = surface_points(g0, grid, 2);
        const auto si = surface_points(gi, grid, 2);
        double circ = 0.0, hm = 0.0;
        std::size_t e0 = 0, ei = 0;
        for (std::size_t i = 0; i < s0.size(); ++i) {
            if (!s0[i].ok) {
                ++e0;
            } else {
                circ = std::max(circ, s0[i].circle);
            }
            if (!si[i].ok) {
                ++ei;
            } else {
                hm = std::max(hm, si[i].mean_ratio);
            }
        }
        if (selected("constant_pedal.superconformal")) {
            push(record("constant_pedal.superconformal", "g_{0,v} = v^perp is superconformal", circ, tol.circle,
                        Bound::Upper, s0.size(), e0),
                 3);
        }
        if (selected("constant_pedal.inverted_minimal")) {
            push(record("constant_pedal.inverted_minimal", "inversion of v^perp centered at v is minimal", hm,
                        tol.inverted_minimal, Bound::Upper, si.size(), ei, "|H| / |alpha|"),
                 3);
        }
    }

    auto rank_defect = [](const std::vector<SurfacePoint> &sps, std::size_t &excl) {
        double bad = 0.0;
        for (const auto &sp : sps) {
            if (!sp.ok) {
                ++excl;
            } else if (sp.rank != 3) {
                bad += 1.0;
            }
        }
        return bad;
    };
    if (selected("rank.pedal")) {
        double bad = 0.0;
        for (const auto &p : pp) {
            if (!p.excluded && p.rank != 3) {
                bad += 1.0;
            }
        }
        push(record("rank.pedal", "first normal bundle of g has rank 3", bad, 0.0, Bound::Upper, ps.total,
                    ps.excluded, "number of points with rank != 3"),
             3);
    }
    if (selected("rank.inverted")) {
        double bad = 0.0;
        std::size_t excl = 0;
        for (const auto &inv : random_inv) {
            bad += rank_defect(surface_points(invert_evaluator(g, inv), grid, 2), excl);
        }
        push(record("rank.inverted", "first normal bundle of 10 random inversions of g has rank 3", bad, 0.0,
                    Bound::Upper, gpts.size() * random_inv.size(), excl, "number of points with rank != 3"),
             3);
    }
    if (selected("rank.holo4")) {
        const SurfaceEvaluator f4 = surface_evaluator(preset_seed("holo4").build());
        const SurfaceEvaluator g4 = pedal_surface(f4);
        std::size_t excl = 0;
        const auto base = surface_points(g4, grid, 2);
        double bad = rank_defect(base, excl);
        Vec lo, hi, cen;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (!base[i].ok) {
                continue;
            }
            const Vec q = g4(gpts[i], 0).value();
            if (cnt++ == 0) {
                lo = hi = q;
                cen = Vec::Zero(q.size());
            }
            lo = lo.cwiseMin(q);
            hi = hi.cwiseMax(q);
            cen += q;
        }
        std::size_t ninv = 0;
        if (cnt > 0) {
            cen /= static_cast<double>(cnt);
            const double diam = (hi - lo).norm();
            std::mt19937_64 r5(cfg.rng_seed + 5);
            std::normal_distribution<double> nd;
            std::uniform_real_distribution<double> ud(0.5, 2.0);
            for (int k = 0; k < 10; ++k) {
                Vec c = cen;
                for (Eigen::Index i = 0; i < c.size(); ++i) {
                    c[i] += diam * nd(r5);
                }
                bad += rank_defect(surface_points(invert_evaluator(g4, {c, ud(r5) * diam}), grid, 2), excl);
                ++ninv;
            }
        }
        push(record("rank.holo4", "pedal of the 3-isotropic R^8 surface and 10 inversions: rank 3", bad, 0.0,
                    Bound::Upper, gpts.size() * (ninv + 1), excl, "number of points with rank != 3"),
             3);
    }

    if (selected("hygiene.finite_difference")) {
        std::mt19937_64 r6(cfg.rng_seed + 6);
        std::uniform_real_distribution<double> ux(grid.x0, grid.x1), uy(grid.y0, grid.y1);
        const InversionSpec inv = random_inv.empty()
                                      ? InversionSpec{Vec::Constant(n, 0.5), 1.0}
                                      : random_inv[0];
        const SurfaceEvaluator chain = invert_evaluator(g, inv);
        const double h = 1e-4;
        std::vector<double> err(100, kNaN);
        std::vector<Point> probes(100);
        for (auto &p : probes) {
            p = {ux(r6), uy(r6)};
        }
        parallel_for(probes.size(), [&](std::size_t k) {
            const Point p = probes[k];
            try {
                const JetVec j = chain(p, 2);
                auto at = [&](double dx, double dy) { return chain({p.x + dx, p.y + dy}, 0).value(); };
                const Vec c0 = at(0, 0);
                const Vec xp = at(h, 0), xm = at(-h, 0), yp = at(0, h), ym = at(0, -h);
                const Vec pp_ = at(h, h), pm = at(h, -h), mp = at(-h, h), mm = at(-h, -h);
                const std::array<Vec, 5> fd{(xp - xm) / (2 * h), (yp - ym) / (2 * h), (xp - 2 * c0 + xm) / (h * h),
                                            (pp_ - pm - mp + mm) / (4 * h * h), (yp - 2 * c0 + ym) / (h * h)};
                const std::array<Vec, 5> jv{j.derivative(1, 0), j.derivative(0, 1), j.derivative(2, 0),
                                            j.derivative(1, 1), j.derivative(0, 2)};
                double e = 0.0;
                for (std::size_t q = 0; q < 5; ++q) {
                    const double sc = q < 2 ? std::max(jv[0].norm(), jv[1].norm())
                                            : std::max({jv[2].norm(), jv[3].norm(), jv[4].norm()});
                    e = std::max(e, (jv[q] - fd[q]).norm() / sc);
                }
                err[k] = e;
            } catch (const GeometryError &) {
            }
        });
        push(record("hygiene.finite_difference", "jet derivatives agree with central differences (h = 1e-4)",
                    max_of(err), tol.finite_difference, Bound::Upper, probes.size(), 0,
                    "inverted pedal chain, first and second derivatives"),
             2);
    }

    return rep;
}

} // namespace superconf
