#include <superconf/moebius.hpp>

#include <cmath>

#include <Eigen/Dense>

namespace superconf {

void InversionSpec::validate() const
{
    if (!(radius > 0.0)) {
        throw ConfigError("inversion.radius must be positive");
    }
    if (center.size() == 0) {
        throw ConfigError("inversion.center must be given");
    }
}

Eigen::VectorXd invert_point(const Eigen::VectorXd &q, const InversionSpec &inv)
{
    const Eigen::VectorXd d = q - inv.center;
    const double n2 = d.squaredNorm();
    if (std::sqrt(n2) < kPoleExclusion * inv.radius) {
        throw GeometryError(ErrorKind::PoleProximity, "point coincides with the inversion center");
    }
    return inv.center + (inv.radius * inv.radius / n2) * d;
}

JetVec invert_jets(const JetVec &q, const InversionSpec &inv)
{
    if (q.dim() != inv.center.size()) {
        throw std::invalid_argument("invert_jets: dimension mismatch");
    }
    JetVec d = q;
    d.add_constant(-inv.center);
    const Jet n2 = norm_sq(d);
    if (std::sqrt(n2.value()) < kPoleExclusion * inv.radius) {
        throw GeometryError(ErrorKind::PoleProximity, "point coincides with the inversion center");
    }
    JetVec out = d * (recip(n2) * (inv.radius * inv.radius));
    out.add_constant(inv.center);
    return out;
}

SurfaceEvaluator invert_evaluator(const SurfaceEvaluator &s, InversionSpec inv)
{
    inv.validate();
    if (inv.center.size() != s.ambient_dim()) {
        throw ConfigError("inversion.center has wrong dimension");
    }
    return SurfaceEvaluator([s, inv](Point p, int order) { return invert_jets(s(p, order), inv); },
                            s.ambient_dim(), Provenance::Moebius, s.max_order());
}

Eigen::VectorXd normal_isometry(const Eigen::VectorXd &g, const Eigen::VectorXd &mu, const InversionSpec &inv)
{
    const Eigen::VectorXd d = g - inv.center;
    const double n2 = d.squaredNorm();
    if (std::sqrt(n2) < kPoleExclusion * inv.radius) {
        throw GeometryError(ErrorKind::PoleProximity, "point coincides with the inversion center");
    }
    return mu - (2.0 * d.dot(mu) / n2) * d;
}

InvertedShapeAndMean inverted_shape_and_mean(const SurfaceEvaluator &g, Point p, const InversionSpec &inv)
{
    const LocalSurface gl(g(p, 2));
    const LocalSurface tl(invert_jets(gl.position(), inv));
    const SecondFundamental gs = second_fundamental(gl);
    const SecondFundamental ts = second_fundamental(tl);

    const int n = gl.ambient_dim();
    const Eigen::VectorXd e1 = gl.e1().value();
    const Eigen::VectorXd e2 = gl.e2().value();
    Eigen::MatrixXd t(n, 2);
    t.col(0) = e1;
    t.col(1) = e2;
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(t);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);

    const Eigen::VectorXd gp = gl.position().value();
    const Eigen::VectorXd d = gp - inv.center;
    const double d2 = d.squaredNorm();
    const double r2 = inv.radius * inv.radius;

    InvertedShapeAndMean out;
    for (int k = 2; k < n; ++k) {
        const Eigen::VectorXd mu = q.col(k);
        const Eigen::VectorXd pmu = normal_isometry(gp, mu, inv);
        Eigen::Matrix2d a;
        a << gs.alpha11.dot(mu), gs.alpha12.dot(mu), gs.alpha12.dot(mu), gs.alpha22.dot(mu);
        out.normals.push_back(mu);
        out.shape_formula.push_back((d2 * a + 2.0 * d.dot(mu) * Eigen::Matrix2d::Identity()) / r2);
        Eigen::Matrix2d b;
        b << ts.alpha11.dot(pmu), ts.alpha12.dot(pmu), ts.alpha12.dot(pmu), ts.alpha22.dot(pmu);
        out.shape_direct.push_back(b);
    }
    const Eigen::VectorXd d_perp = d - d.dot(e1) * e1 - d.dot(e2) * e2;
    out.H_formula = normal_isometry(gp, d2 * gs.H + 2.0 * d_perp, inv) / r2;
    out.H_direct = ts.H;
    return out;
}

int first_normal_rank(const SecondFundamental &sf, double rel_tol)
{
    Eigen::MatrixXd m(sf.alpha11.size(), 3);
    m.col(0) = sf.alpha11;
    m.col(1) = sf.alpha12;
    m.col(2) = sf.alpha22;
    const auto sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) {
        return 0;
    }
    int r = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv[k] > rel_tol * sv[0]) {
            ++r;
        }
    }
    return r;
}

int first_normal_rank(const SurfaceEvaluator &s, Point p, double rel_tol)
{
    return first_normal_rank(second_fundamental(LocalSurface(s(p, 2))), rel_tol);
}

} // namespace superconf
