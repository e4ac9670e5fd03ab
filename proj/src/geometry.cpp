#include <superconf/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace superconf {

namespace {

constexpr double kImmersionTol = 1e-12;
constexpr double kRankTol = 1e-7;
constexpr double kVanishTol = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_norm(const std::vector<JetVec> &vs)
{
    double m = 0.0;
    for (const auto &v : vs) {
        m = std::max(m, v.value().norm());
    }
    return m;
}

JetVec project_off(JetVec v, const std::vector<JetVec> &basis)
{
    const JetVec orig = v;
    for (const auto &b : basis) {
        v -= dot(orig, b) * b;
    }
    return v;
}

Eigen::VectorXd project_off_value(Eigen::VectorXd v, const std::vector<Eigen::VectorXd> &basis)
{
    const Eigen::VectorXd orig = v;
    for (const auto &b : basis) {
        v -= orig.dot(b) * b;
    }
    return v;
}

std::vector<Eigen::VectorXd> values(const std::vector<JetVec> &vs)
{
    std::vector<Eigen::VectorXd> out;
    out.reserve(vs.size());
    for (const auto &v : vs) {
        out.push_back(v.value());
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// LocalSurface

LocalSurface::LocalSurface(JetVec position) : order_(position.order()), position_(std::move(position))
{
    if (order_ < 1) {
        throw GeometryError(ErrorKind::InsufficientOrder, "local surface needs jets of order >= 1");
    }
    partials_.resize(static_cast<std::size_t>(detail::jet_size(order_)));
    partials_[0] = position_;
    for (int k = 1; k <= order_; ++k) {
        for (int j = 0; j <= k; ++j) {
            const int i = k - j;
            auto &slot = partials_[static_cast<std::size_t>(detail::jet_index(i, j))];
            slot = i > 0 ? partial(i - 1, j).dx() : partial(i, j - 1).dy();
        }
    }

    const JetVec &fx = partial(1, 0);
    const JetVec &fy = partial(0, 1);
    const Jet E = norm_sq(fx);
    const Jet F = dot(fx, fy);
    const Jet G = norm_sq(fy);
    const double scale = std::max(E.value(), G.value());
    const double det = E.value() * G.value() - F.value() * F.value();
    if (!(scale > 0.0) || det <= kImmersionTol * scale * scale) {
        throw GeometryError(ErrorKind::NotImmersion, "df has rank < 2");
    }

    const Jet inv_len_x = recip(sqrt(E));
    e1_ = fx * inv_len_x;
    const Jet proj = dot(fy, e1_);
    JetVec w = fy - proj * e1_;
    const Jet inv_len_w = recip(sqrt(norm_sq(w)));
    e2_ = w * inv_len_w;

    a_[0] = inv_len_x;
    a_[1] = Jet(inv_len_x.order(), 0.0);
    a_[2] = -(proj * inv_len_x * inv_len_w);
    a_[3] = inv_len_w;
}

const JetVec &LocalSurface::partial(int i, int j) const
{
    if (i < 0 || j < 0 || i + j > order_) {
        throw GeometryError(ErrorKind::InsufficientOrder,
                            "partial derivative of order " + std::to_string(i + j) + " unavailable");
    }
    return partials_[static_cast<std::size_t>(detail::jet_index(i, j))];
}

void LocalSurface::rotate_frame(const Jet &cos_t, const Jet &sin_t)
{
    const JetVec n1 = cos_t * e1_ + sin_t * e2_;
    const JetVec n2 = cos_t * e2_ - sin_t * e1_;
    e1_ = n1;
    e2_ = n2;
    const std::array<Jet, 4> a = a_;
    a_[0] = cos_t * a[0] + sin_t * a[2];
    a_[1] = cos_t * a[1] + sin_t * a[3];
    a_[2] = cos_t * a[2] - sin_t * a[0];
    a_[3] = cos_t * a[3] - sin_t * a[1];
}

Jet LocalSurface::along(int i, const Jet &u) const
{
    return frame_coeff(i, 0) * u.dx() + frame_coeff(i, 1) * u.dy();
}

JetVec LocalSurface::along(int i, const JetVec &u) const
{
    return frame_coeff(i, 0) * u.dx() + frame_coeff(i, 1) * u.dy();
}

JetVec LocalSurface::frame_tensor(int p, int q) const
{
    const int k = p + q;
    if (k > order_) {
        throw GeometryError(ErrorKind::InsufficientOrder,
                            "derivative tensor of order " + std::to_string(k) + " unavailable");
    }
    // Expand (A00 X + A01 Y)^p (A10 X + A11 Y)^q; coefficient j multiplies X^(k-j) Y^j.
    std::vector<Jet> c{Jet(order_, 1.0)};
    auto multiply = [&c](const Jet &ax, const Jet &ay) {
        std::vector<Jet> next(c.size() + 1, Jet(std::min(c.front().order(), ax.order())));
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j] += c[j] * ax;
            next[j + 1] += c[j] * ay;
        }
        c = std::move(next);
    };
    for (int t = 0; t < p; ++t) {
        multiply(frame_coeff(0, 0), frame_coeff(0, 1));
    }
    for (int t = 0; t < q; ++t) {
        multiply(frame_coeff(1, 0), frame_coeff(1, 1));
    }
    JetVec out = c[0] * partial(k, 0);
    for (int j = 1; j <= k; ++j) {
        out += c[static_cast<std::size_t>(j)] * partial(k - j, j);
    }
    return out;
}

JetVec LocalSurface::tangent_part(const JetVec &v) const
{
    return dot(v, e1_) * e1_ + dot(v, e2_) * e2_;
}

JetVec LocalSurface::normal_part(const JetVec &v) const { return v - tangent_part(v); }

std::array<Jet, 3> LocalSurface::metric_jets() const
{
    const JetVec &fx = partial(1, 0);
    const JetVec &fy = partial(0, 1);
    return {norm_sq(fx), dot(fx, fy), norm_sq(fy)};
}

// ---------------------------------------------------------------------------
// Flag

std::vector<int> NormalFlag::ranks() const
{
    std::vector<int> r{static_cast<int>(tangent.size())};
    for (const auto &b : bundles) {
        r.push_back(static_cast<int>(b.size()));
    }
    return r;
}

std::vector<JetVec> NormalFlag::normal_frame() const
{
    std::vector<JetVec> out;
    for (const auto &b : bundles) {
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

int NormalFlag::dimension() const
{
    int d = static_cast<int>(tangent.size());
    for (const auto &b : bundles) {
        d += static_cast<int>(b.size());
    }
    return d;
}

NormalFlag normal_flag(const LocalSurface &ls, int up_to)
{
    const int n = ls.ambient_dim();
    NormalFlag flag;
    flag.tangent = {ls.e1(), ls.e2()};
    std::vector<JetVec> basis = flag.tangent;

    for (int r = 1; r <= up_to && static_cast<int>(basis.size()) < n; ++r) {
        const int s = r + 1;
        if (s > ls.order()) {
            throw GeometryError(ErrorKind::InsufficientOrder,
                                "normal bundle N_" + std::to_string(r) + " needs jets of order " + std::to_string(s));
        }
        // alpha^s(X,...,X) and alpha^s(JX,X,...,X) first: they fix the orientation.
        std::vector<JetVec> raw;
        raw.push_back(ls.frame_tensor(s, 0));
        raw.push_back(ls.frame_tensor(s - 1, 1));
        for (int j = 2; j <= s; ++j) {
            raw.push_back(ls.frame_tensor(s - j, j));
        }
        const double raw_scale = max_norm(raw);

        std::vector<JetVec> proj;
        proj.reserve(raw.size());
        for (const auto &v : raw) {
            proj.push_back(project_off(v, basis));
        }
        Eigen::MatrixXd m(n, static_cast<Eigen::Index>(proj.size()));
        for (std::size_t k = 0; k < proj.size(); ++k) {
            m.col(static_cast<Eigen::Index>(k)) = proj[k].value();
        }
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
        const double smax = sv.size() > 0 ? sv[0] : 0.0;
        int rank = 0;
        if (smax > kVanishTol * raw_scale && smax > 0.0) {
            for (Eigen::Index k = 0; k < sv.size(); ++k) {
                if (sv[k] > kRankTol * smax) {
                    ++rank;
                }
            }
        }
        rank = std::min(rank, n - static_cast<int>(basis.size()));
        if (rank == 0) {
            throw GeometryError(ErrorKind::NotRegular,
                                "osculating space stalls at N_" + std::to_string(r) + " before filling R^"
                                    + std::to_string(n));
        }

        std::vector<JetVec> bundle;
        for (double thresh : {1e-3, kRankTol}) {
            bundle.clear();
            for (const auto &c : proj) {
                if (static_cast<int>(bundle.size()) == rank) {
                    break;
                }
                JetVec w = project_off(c, bundle);
                const Jet n2 = norm_sq(w);
                if (std::sqrt(std::max(n2.value(), 0.0)) <= thresh * smax) {
                    continue;
                }
                bundle.push_back(w * recip(sqrt(n2)));
            }
            if (static_cast<int>(bundle.size()) == rank) {
                break;
            }
        }
        if (static_cast<int>(bundle.size()) != rank) {
            throw GeometryError(ErrorKind::NotRegular, "could not orthonormalize N_" + std::to_string(r));
        }
        basis.insert(basis.end(), bundle.begin(), bundle.end());
        flag.bundles.push_back(std::move(bundle));
    }
    return flag;
}

// ---------------------------------------------------------------------------
// Fundamental forms and curvatures

std::array<JetVec, 3> second_fundamental_jets(const LocalSurface &ls)
{
    return {ls.normal_part(ls.frame_tensor(2, 0)), ls.normal_part(ls.frame_tensor(1, 1)),
            ls.normal_part(ls.frame_tensor(0, 2))};
}

FirstFundamental first_fundamental(const LocalSurface &ls)
{
    const auto m = ls.metric_jets();
    return {m[0].value(), m[1].value(), m[2].value(), ls.e1().value(), ls.e2().value()};
}

SecondFundamental second_fundamental(const LocalSurface &ls)
{
    if (ls.order() < 2) {
        throw GeometryError(ErrorKind::InsufficientOrder, "second fundamental form needs order >= 2");
    }
    const auto a = second_fundamental_jets(ls);
    SecondFundamental sf;
    sf.alpha11 = a[0].value();
    sf.alpha12 = a[1].value();
    sf.alpha22 = a[2].value();
    sf.H = 0.5 * (sf.alpha11 + sf.alpha22);
    sf.xi1 = 0.5 * (sf.alpha11 - sf.alpha22);
    sf.xi2 = sf.alpha12;
    return sf;
}

double alpha_scale(const SecondFundamental &sf)
{
    Eigen::MatrixXd m(sf.alpha11.size(), 3);
    m.col(0) = sf.alpha11;
    m.col(1) = sf.alpha12;
    m.col(2) = sf.alpha22;
    const auto sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    return sv.size() > 0 ? sv[0] : 0.0;
}

Curvatures curvatures(const LocalSurface &ls, const SecondFundamental &sf)
{
    Curvatures c;
    c.K = sf.alpha11.dot(sf.alpha22) - sf.alpha12.squaredNorm();
    const double area2 = sf.xi1.squaredNorm() * sf.xi2.squaredNorm() - std::pow(sf.xi1.dot(sf.xi2), 2);
    c.K_N = 2.0 * std::sqrt(std::max(area2, 0.0));
    if (ls.ambient_dim() == 4) {
        Eigen::Matrix4d m;
        m.col(0) = ls.e1().value();
        m.col(1) = ls.e2().value();
        m.col(2) = sf.xi1;
        m.col(3) = sf.xi2;
        c.K_N = 2.0 * m.determinant();
    }
    c.H_norm_sq = sf.H.squaredNorm();
    c.wintgen_defect = c.H_norm_sq - c.K - std::abs(c.K_N);
    return c;
}

Curvatures curvatures(const LocalSurface &ls) { return curvatures(ls, second_fundamental(ls)); }

double intrinsic_gauss_curvature(const LocalSurface &ls)
{
    if (ls.order() < 3) {
        throw GeometryError(ErrorKind::InsufficientOrder, "intrinsic curvature needs order >= 3");
    }
    const auto [E, F, G] = ls.metric_jets();
    const double e = E.value(), f = F.value(), g = G.value();
    const double Eu = E.derivative(1, 0), Ev = E.derivative(0, 1);
    const double Fu = F.derivative(1, 0), Fv = F.derivative(0, 1);
    const double Gu = G.derivative(1, 0), Gv = G.derivative(0, 1);
    const double Evv = E.derivative(0, 2), Fuv = F.derivative(1, 1), Guu = G.derivative(2, 0);

    Eigen::Matrix3d m1;
    m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
          Fv - 0.5 * Gu, e, f,
          0.5 * Gv, f, g;
    Eigen::Matrix3d m2;
    m2 << 0.0, 0.5 * Ev, 0.5 * Gu,
          0.5 * Ev, e, f,
          0.5 * Gu, f, g;
    const double w = e * g - f * f;
    return (m1.determinant() - m2.determinant()) / (w * w);
}

std::vector<Eigen::VectorXd> higher_fundamental(const LocalSurface &ls, const NormalFlag &flag, int s)
{
    if (s < 2) {
        throw std::invalid_argument("higher_fundamental: order must be >= 2");
    }
    const int needed = s - 2;
    const int have = static_cast<int>(flag.bundles.size());
    if (have < needed && flag.dimension() < ls.ambient_dim()) {
        throw GeometryError(ErrorKind::NotRegular,
                            "normal flag too short for the fundamental form of order " + std::to_string(s));
    }
    std::vector<Eigen::VectorXd> basis = values(flag.tangent);
    for (int r = 0; r < std::min(needed, have); ++r) {
        for (const auto &v : flag.bundles[static_cast<std::size_t>(r)]) {
            basis.push_back(v.value());
        }
    }
    std::vector<Eigen::VectorXd> out;
    for (int j = 0; j <= s; ++j) {
        out.push_back(project_off_value(ls.frame_tensor(s - j, j).value(), basis));
    }
    return out;
}

std::vector<Eigen::VectorXd> third_fundamental_recursive(const LocalSurface &ls, const NormalFlag &flag)
{
    if (ls.order() < 3 || flag.bundles.empty()) {
        throw GeometryError(ErrorKind::InsufficientOrder, "recursive third fundamental form needs order >= 3");
    }
    const auto a = second_fundamental_jets(ls);
    std::vector<Eigen::VectorXd> basis = values(flag.tangent);
    for (const auto &v : flag.bundles[0]) {
        basis.push_back(v.value());
    }
    // alpha^3(e1^(3-j), e2^j): differentiate alpha(e1,e1) along e1 and e2,
    // then alpha(e1,e2) and alpha(e2,e2) along e2.
    const std::array<std::pair<int, int>, 4> plan{{{0, 0}, {0, 1}, {1, 1}, {2, 1}}};
    std::vector<Eigen::VectorXd> out;
    for (const auto &[form, dir] : plan) {
        out.push_back(project_off_value(ls.along(dir, a[static_cast<std::size_t>(form)]).value(), basis));
    }
    return out;
}

EllipseData ellipse_from_semidiameters(const Eigen::VectorXd &u, const Eigen::VectorXd &v, int order, double raw_scale)
{
    const double g11 = u.squaredNorm();
    const double g22 = v.squaredNorm();
    const double g12 = u.dot(v);
    const double mean = 0.5 * (g11 + g22);
    const double rad = std::hypot(0.5 * (g11 - g22), g12);
    EllipseData e;
    e.order = order;
    e.a = std::sqrt(mean + rad);
    e.b = std::sqrt(std::max(mean - rad, 0.0));
    if (!(e.a > kImmersionTol * raw_scale) || e.a == 0.0) {
        throw GeometryError(ErrorKind::DegenerateEllipse, "ellipse of order " + std::to_string(order) + " degenerate");
    }
    e.circle_defect = std::max(std::abs(g12) / (2.0 * e.a * e.a), std::abs(u.norm() - v.norm()) / e.a);
    e.lambda = e.b / e.a;
    return e;
}

EllipseData ellipse_test(const LocalSurface &ls, const NormalFlag &flag, int s)
{
    if (s == 1) {
        const SecondFundamental sf = second_fundamental(ls);
        const double raw = std::max({ls.frame_tensor(2, 0).value().norm(), ls.frame_tensor(1, 1).value().norm(),
                                     ls.frame_tensor(0, 2).value().norm()});
        return ellipse_from_semidiameters(sf.xi1, sf.xi2, 1, raw);
    }
    const auto hf = higher_fundamental(ls, flag, s + 1);
    const double raw = std::max(ls.frame_tensor(s + 1, 0).value().norm(), ls.frame_tensor(s, 1).value().norm());
    return ellipse_from_semidiameters(hf[0], hf[1], s, raw);
}

double twozero_isotropy_defect(const SecondFundamental &sf)
{
    const double x2 = sf.xi1.squaredNorm();
    const double y2 = sf.xi2.squaredNorm();
    const double c = sf.xi1.dot(sf.xi2);
    const double mean = 0.5 * (x2 + y2);
    const double a2 = mean + std::hypot(0.5 * (x2 - y2), c);
    if (a2 == 0.0) {
        return 0.0;
    }
    return std::hypot(x2 - y2, 2.0 * c) / (4.0 * a2);
}

// ---------------------------------------------------------------------------
// Connection forms

ConnectionSample connection_forms(const LocalSurface &ls, const NormalFlag &flag)
{
    if (ls.order() < 2) {
        throw GeometryError(ErrorKind::InsufficientOrder, "connection forms need order >= 2");
    }
    ConnectionSample c;
    for (int i = 0; i < 2; ++i) {
        c.psi[static_cast<std::size_t>(i)] = ls.along(i, ls.e1()).value().dot(ls.e2().value());
    }
    const auto nf = flag.normal_frame();
    const int m = static_cast<int>(nf.size());
    c.normal_dim = m;
    c.omega_table.assign(static_cast<std::size_t>(m * m), {0.0, 0.0});
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            for (int i = 0; i < 2; ++i) {
                double w = kNaN;
                if (nf[static_cast<std::size_t>(a)].order() >= 1) {
                    w = ls.along(i, nf[static_cast<std::size_t>(a)]).value().dot(nf[static_cast<std::size_t>(b)].value());
                } else if (nf[static_cast<std::size_t>(b)].order() >= 1) {
                    w = -ls.along(i, nf[static_cast<std::size_t>(b)]).value().dot(nf[static_cast<std::size_t>(a)].value());
                }
                c.omega_table[static_cast<std::size_t>(a * m + b)][static_cast<std::size_t>(i)] = w;
                c.omega_table[static_cast<std::size_t>(b * m + a)][static_cast<std::size_t>(i)] = -w;
            }
        }
    }
    if (m >= 3) {
        c.omega = {c.omega_ab(0, 2, 0), c.omega_ab(0, 2, 1)};
    } else {
        c.omega = {kNaN, kNaN};
    }
    c.lambda = kNaN;
    if (flag.bundles.size() >= 2 && flag.bundles[1].size() == 2 && ls.order() >= 3) {
        try {
            c.lambda = ellipse_test(ls, flag, 2).lambda;
        } catch (const GeometryError &) {
        }
    }
    return c;
}

std::array<HodgeResiduals, 2> hodge_residuals(const ConnectionSample &c)
{
    std::array<HodgeResiduals, 2> out{};
    if (c.normal_dim < 4) {
        out[0] = {1, kNaN};
        out[1] = {-1, kNaN};
        return out;
    }
    double scale = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 2; b < 4; ++b) {
            for (int i = 0; i < 2; ++i) {
                scale = std::max(scale, std::abs(c.omega_ab(a, b, i)));
            }
        }
    }
    const int conv[2] = {1, -1};
    for (int k = 0; k < 2; ++k) {
        const double sg = conv[k];
        // *w(e1) = sg w(e2), *w(e2) = -sg w(e1)
        auto star = [sg](double w1, double w2, int i) { return i == 0 ? sg * w2 : -sg * w1; };
        double worst = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double w35 = c.omega_ab(0, 2, i), w36 = c.omega_ab(0, 3, i);
            const double w45 = c.omega_ab(1, 2, i), w46 = c.omega_ab(1, 3, i);
            const double s35 = star(c.omega_ab(0, 2, 0), c.omega_ab(0, 2, 1), i);
            const double s36 = star(c.omega_ab(0, 3, 0), c.omega_ab(0, 3, 1), i);
            const double s45 = star(c.omega_ab(1, 2, 0), c.omega_ab(1, 2, 1), i);
            (void)w35;
            worst = std::max({worst, std::abs(w45 + s35), std::abs(w46 + s36), std::abs(w36 - c.lambda * s35),
                              std::abs(w46 - c.lambda * s45)});
        }
        out[static_cast<std::size_t>(k)] = {conv[k], scale > 0.0 ? worst / scale : worst};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluator wrappers

FirstFundamental first_fundamental(const SurfaceEvaluator &s, Point p) { return first_fundamental(LocalSurface(s(p, 1))); }

SecondFundamental second_fundamental(const SurfaceEvaluator &s, Point p)
{
    return second_fundamental(LocalSurface(s(p, 2)));
}

Curvatures curvatures(const SurfaceEvaluator &s, Point p) { return curvatures(LocalSurface(s(p, 2))); }

EllipseData ellipse_test(const SurfaceEvaluator &s, Point p, int order_s)
{
    const LocalSurface ls(s(p, order_s + 1));
    const NormalFlag flag = order_s >= 2 ? normal_flag(ls, order_s - 1) : NormalFlag{};
    return ellipse_test(ls, flag, order_s);
}

std::vector<Eigen::VectorXd> higher_fundamental(const SurfaceEvaluator &s, Point p, int order_s)
{
    const LocalSurface ls(s(p, order_s));
    return higher_fundamental(ls, normal_flag(ls, std::max(order_s - 2, 0)), order_s);
}

NormalFlag normal_flag(const SurfaceEvaluator &s, Point p, int up_to, int jet_order)
{
    return normal_flag(LocalSurface(s(p, jet_order)), up_to);
}

ConnectionSample connection_forms(const SurfaceEvaluator &s, Point p, int jet_order)
{
    const LocalSurface ls(s(p, jet_order));
    return connection_forms(ls, normal_flag(ls, std::min(jet_order - 1, 2)));
}

GeometrySample sample_geometry(const SurfaceEvaluator &s, Point p, const SampleOptions &opt)
{
    GeometrySample g;
    g.point = p;
    try {
        const LocalSurface ls(s(p, opt.jet_order));
        g.first = first_fundamental(ls);
        g.second = second_fundamental(ls);
        g.curv = curvatures(ls, g.second);
        g.alpha_scale = alpha_scale(g.second);
        g.iso_kappa = g.second.alpha11.norm();
        g.K_intrinsic = ls.order() >= 3 ? intrinsic_gauss_curvature(ls) : kNaN;
        try {
            g.ellipses.push_back(ellipse_test(ls, NormalFlag{}, 1));
        } catch (const GeometryError &) {
        }
        try {
            const NormalFlag flag = normal_flag(ls, ls.order() - 1);
            g.flag_ranks = flag.ranks();
            for (int sidx = 2; sidx <= opt.max_ellipse_order && sidx + 1 <= ls.order(); ++sidx) {
                if (static_cast<int>(flag.bundles.size()) < sidx || flag.bundles[static_cast<std::size_t>(sidx - 1)].size() != 2) {
                    break;
                }
                g.ellipses.push_back(ellipse_test(ls, flag, sidx));
            }
        } catch (const GeometryError &e) {
            g.exclusion_reason = e.what();
        }
    } catch (const GeometryError &e) {
        g.excluded = true;
        g.exclusion_reason = e.what();
    }
    return g;
}

IsotropyOrderReport isotropy_order(const SurfaceEvaluator &s, const Grid &grid, double tol, int jet_order)
{
    IsotropyOrderReport rep;
    std::size_t common = std::numeric_limits<std::size_t>::max();
    bool any = false;
    for (const Point &p : grid.points()) {
        if (grid.is_excluded(p)) {
            ++rep.excluded;
            continue;
        }
        const GeometrySample g = sample_geometry(s, p, {jet_order, 8});
        if (g.excluded || g.ellipses.empty()) {
            ++rep.excluded;
            continue;
        }
        any = true;
        common = std::min(common, g.ellipses.size());
        if (rep.max_defects.size() < g.ellipses.size()) {
            rep.max_defects.resize(g.ellipses.size(), 0.0);
        }
        for (std::size_t k = 0; k < g.ellipses.size(); ++k) {
            rep.max_defects[k] = std::max(rep.max_defects[k], g.ellipses[k].circle_defect);
        }
    }
    if (!any) {
        return rep;
    }
    rep.max_defects.resize(common);
    for (double d : rep.max_defects) {
        if (d > tol) {
            break;
        }
        ++rep.r_max;
    }
    return rep;
}

} // namespace superconf
