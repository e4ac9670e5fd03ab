#include <superconf/export.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>

#include <superconf/pedal.hpp>

namespace superconf {

namespace {

std::string num(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

std::optional<std::string> projection_warning(const Eigen::MatrixXd &p)
{
    const Eigen::MatrixXd g = p * p.transpose();
    const double err = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    if (err > 1e-9) {
        return "projection rows are not orthonormal (max Gram error " + num(err) + ")";
    }
    return std::nullopt;
}

ExportStats write_obj(std::ostream &out, const SurfaceEvaluator &s, const Grid &grid,
                      const std::optional<Eigen::MatrixXd> &projection, const std::string &title)
{
    ExportStats st;
    const int n = s.ambient_dim();
    if (projection) {
        if (projection->rows() != 3 || projection->cols() != n) {
            throw ConfigError("projection must be 3 x " + std::to_string(n));
        }
        if (auto w = projection_warning(*projection)) {
            st.warnings.push_back(*w);
        }
    }
    out << "# " << title << "\n";
    out << "# grid " << grid.nx << " x " << grid.ny << " over [" << grid.x0 << ", " << grid.x1 << "] x ["
        << grid.y0 << ", " << grid.y1 << "]\n";
    out << "# projection " << (projection ? "user 3 x n matrix" : "first three coordinates") << " of R^" << n << "\n";
    for (const Point &p : grid.points()) {
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        try {
            const Eigen::VectorXd q = s(p, 0).value();
            if (projection) {
                v = *projection * q;
            } else {
                for (int k = 0; k < std::min(n, 3); ++k) {
                    v[k] = q[k];
                }
            }
        } catch (const GeometryError &) {
            ++st.failed;
        }
        out << "v " << num(v[0]) << " " << num(v[1]) << " " << num(v[2]) << "\n";
        ++st.vertices;
    }
    for (int j = 0; j + 1 < grid.ny; ++j) {
        for (int i = 0; i + 1 < grid.nx; ++i) {
            const int a = j * grid.nx + i + 1;
            const int b = a + 1;
            const int c = a + grid.nx;
            const int d = c + 1;
            out << "f " << a << " " << b << " " << d << "\n";
            out << "f " << a << " " << d << " " << c << "\n";
            st.triangles += 2;
        }
    }
    if (st.failed > 0) {
        out << "# " << st.failed << " vertices could not be evaluated and were placed at the origin\n";
    }
    return st;
}

ExportStats write_geometry_csv(std::ostream &out, const SurfaceEvaluator &s, const Grid &grid, int jet_order)
{
    ExportStats st;
    out << "x,y,K,K_N,Hnorm2,wintgen_defect,circle_defect_1,circle_defect_2,lambda_2,excluded_flag\n";
    SampleOptions opt;
    opt.jet_order = std::min(jet_order, s.max_order());
    opt.max_ellipse_order = 2;
    for (const Point &p : grid.points()) {
        GeometrySample g;
        if (grid.is_excluded(p)) {
            g.point = p;
            g.excluded = true;
        } else {
            g = sample_geometry(s, p, opt);
        }
        auto ell = [&](int k, int field) {
            for (const auto &e : g.ellipses) {
                if (e.order == k) {
                    return field == 0 ? e.circle_defect : e.lambda;
                }
            }
            return std::nan("");
        };
        out << num(p.x) << "," << num(p.y) << ",";
        if (g.excluded) {
            out << "nan,nan,nan,nan,nan,nan,nan,1\n";
            ++st.failed;
        } else {
            out << num(g.curv.K) << "," << num(g.curv.K_N) << "," << num(g.curv.H_norm_sq) << ","
                << num(g.curv.wintgen_defect) << "," << num(ell(1, 0)) << "," << num(ell(2, 0)) << ","
                << num(ell(2, 1)) << ",0\n";
        }
        ++st.vertices;
    }
    return st;
}

ExportStats write_pedal_csv(std::ostream &out, const SurfaceEvaluator &f, const Grid &grid)
{
    ExportStats st;
    const int n = f.ambient_dim();
    out << "x,y";
    for (int k = 1; k <= n; ++k) {
        out << ",Z_" << k;
    }
    for (int k = 1; k <= n; ++k) {
        out << ",g_" << k;
    }
    out << ",delta_norm,eta_norm,theta,z_nonzero,delta_nonzero,immersion\n";
    for (const Point &p : grid.points()) {
        out << num(p.x) << "," << num(p.y);
        bool ok = !grid.is_excluded(p);
        PedalSample s;
        if (ok) {
            try {
                s = pedal_decompose(f, p);
            } catch (const GeometryError &) {
                ok = false;
            }
        }
        if (!ok) {
            for (int k = 0; k < 2 * n + 3; ++k) {
                out << ",nan";
            }
            out << ",0,0,0\n";
            ++st.failed;
        } else {
            for (int k = 0; k < n; ++k) {
                out << "," << num(s.Z[k]);
            }
            for (int k = 0; k < n; ++k) {
                out << "," << num(s.g[k]);
            }
            out << "," << num(s.delta.norm()) << "," << num(s.eta.norm()) << "," << num(s.theta) << ","
                << s.z_nonzero << "," << s.delta_nonzero << "," << s.immersion << "\n";
            if (!(s.z_nonzero && s.delta_nonzero && s.immersion)) {
                ++st.failed;
            }
        }
        ++st.vertices;
    }
    return st;
}

} // namespace superconf
