#include <superconf/pedal.hpp>

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace superconf {

namespace {

PedalSample decompose(const LocalSurface &f, const NormalFlag &flag, Point p, double eps_reg)
{
    PedalSample s;
    s.point = p;
    const Eigen::VectorXd pos = f.position().value();
    const Eigen::VectorXd e1 = f.e1().value();
    const Eigen::VectorXd e2 = f.e2().value();
    s.Z_frame = {pos.dot(e1), pos.dot(e2)};
    s.Z = s.Z_frame[0] * e1 + s.Z_frame[1] * e2;
    s.g = pos - s.Z;
    s.delta = Eigen::VectorXd::Zero(pos.size());
    if (!flag.bundles.empty()) {
        for (const auto &b : flag.bundles[0]) {
            const Eigen::VectorXd bv = b.value();
            s.delta += s.g.dot(bv) * bv;
        }
    }
    s.eta = s.g - s.delta;
    s.theta = s.Z.squaredNorm() + s.delta.squaredNorm();
    const double scale = pos.norm();
    s.z_nonzero = s.Z.norm() > eps_reg * scale;
    s.delta_nonzero = s.delta.norm() > eps_reg * scale;
    return s;
}

} // namespace

JetVec pedal_jets(const JetVec &f_jets, double c, const Eigen::VectorXd *v)
{
    const LocalSurface ls(f_jets);
    JetVec q = f_jets.truncated(ls.order() - 1) * c;
    if (v != nullptr) {
        q.add_constant(*v);
    }
    return ls.normal_part(q);
}

PedalSample pedal_decompose(const SurfaceEvaluator &f, Point p, double eps_reg)
{
    const LocalSurface ls(f(p, 2));
    NormalFlag flag;
    try {
        flag = normal_flag(ls, 1);
    } catch (const GeometryError &) {
        flag.tangent = {ls.e1(), ls.e2()};
    }
    PedalSample s = decompose(ls, flag, p, eps_reg);
    try {
        const LocalSurface g(ls.normal_part(ls.position().truncated(1)));
        s.immersion = true;
    } catch (const GeometryError &) {
        s.immersion = false;
    }
    return s;
}

SurfaceEvaluator pedal_surface(const SurfaceEvaluator &f, double c, std::optional<Eigen::VectorXd> v)
{
    if (v && v->size() != f.ambient_dim()) {
        throw std::invalid_argument("pedal_surface: translation has wrong dimension");
    }
    const Provenance tag = (c == 1.0 && !v) ? Provenance::Pedal : Provenance::Composite;
    return SurfaceEvaluator(
        [f, c, v](Point p, int order) {
            const JetVec fj = f(p, order + 1);
            return pedal_jets(fj, c, v ? &*v : nullptr);
        },
        f.ambient_dim(), tag, f.max_order() - 1);
}

PedalRegularityReport pedal_regularity(const SurfaceEvaluator &f, const Grid &grid, double eps_reg)
{
    PedalRegularityReport rep;
    for (const Point &p : grid.points()) {
        ++rep.total;
        if (grid.is_excluded(p)) {
            rep.excluded.push_back({p, "excluded disk"});
            continue;
        }
        try {
            const PedalSample s = pedal_decompose(f, p, eps_reg);
            std::string why;
            if (!s.z_nonzero) {
                why += "Z=0;";
            }
            if (!s.delta_nonzero) {
                why += "delta=0;";
            }
            if (!s.immersion) {
                why += "dg rank<2;";
            }
            if (!why.empty()) {
                rep.excluded.push_back({p, why});
            }
        } catch (const GeometryError &e) {
            rep.excluded.push_back({p, e.what()});
        }
    }
    return rep;
}

Eigen::VectorXd PedalAnalysis::J_tangent(const Eigen::VectorXd &v) const
{
    const Eigen::VectorXd e1 = f->e1().value();
    const Eigen::VectorXd e2 = f->e2().value();
    return v.dot(e1) * e2 - v.dot(e2) * e1;
}

Eigen::VectorXd PedalAnalysis::J_normal(const Eigen::VectorXd &v) const
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (std::size_t r = 0; r < std::min<std::size_t>(f_flag.bundles.size(), 2); ++r) {
        const auto &b = f_flag.bundles[r];
        if (b.size() != 2) {
            continue;
        }
        const Eigen::VectorXd a = b[0].value();
        const Eigen::VectorXd c = b[1].value();
        out += v.dot(a) * c - v.dot(c) * a;
    }
    return out;
}

std::vector<Eigen::VectorXd> PedalAnalysis::complement_basis(int levels) const
{
    const int n = f->ambient_dim();
    std::vector<Eigen::VectorXd> span{f->e1().value(), f->e2().value()};
    for (int r = 0; r < levels && r < static_cast<int>(f_flag.bundles.size()); ++r) {
        for (const auto &v : f_flag.bundles[static_cast<std::size_t>(r)]) {
            span.push_back(v.value());
        }
    }
    Eigen::MatrixXd m(n, static_cast<Eigen::Index>(span.size()));
    for (std::size_t k = 0; k < span.size(); ++k) {
        m.col(static_cast<Eigen::Index>(k)) = span[k];
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    std::vector<Eigen::VectorXd> out;
    for (Eigen::Index k = static_cast<Eigen::Index>(span.size()); k < n; ++k) {
        out.push_back(q.col(k));
    }
    return out;
}

Eigen::VectorXd PedalAnalysis::frame_vector(int k) const
{
    if (k == 0) {
        return f->e1().value();
    }
    if (k == 1) {
        return f->e2().value();
    }
    const auto nf = f_flag.normal_frame();
    return nf.at(static_cast<std::size_t>(k - 2)).value();
}

PedalAnalysis analyze_pedal(const SurfaceEvaluator &f, Point p, int order)
{
    if (order < 2) {
        throw GeometryError(ErrorKind::InsufficientOrder, "pedal analysis needs order >= 2");
    }
    PedalAnalysis a;
    a.point = p;
    a.order = order;
    a.f.emplace(f(p, order));
    a.f_flag = normal_flag(*a.f, std::min(order - 1, 2));
    a.f_sf = second_fundamental(*a.f);
    a.K = curvatures(*a.f, a.f_sf).K;
    if (order >= 3) {
        a.conn = connection_forms(*a.f, a.f_flag);
    }
    a.pedal = decompose(*a.f, a.f_flag, p, kPedalRegularityEps);
    try {
        a.g.emplace(a.f->normal_part(a.f->position().truncated(order - 1)));
        a.pedal.immersion = true;
    } catch (const GeometryError &e) {
        throw GeometryError(ErrorKind::PedalDegenerate, std::string("pedal is not immersed: ") + e.what());
    }
    return a;
}

} // namespace superconf
