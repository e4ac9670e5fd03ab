#include <superconf/weierstrass.hpp>

#include <string>

#include <superconf/errors.hpp>

namespace superconf {

namespace {

constexpr double kIsotropyTol = 1e-10;

void check_isotropy(const CVecPoly &phi)
{
    const double r = isotropy_residual(phi);
    if (r > kIsotropyTol) {
        throw GeometryError(ErrorKind::IsotropyViolation,
                            "<phi', phi'> has relative coefficient size " + std::to_string(r));
    }
}

} // namespace

void IsotropicSpec::validate() const
{
    if (isotropy_order < 1) {
        throw ConfigError("spec.m: isotropy order must be at least 1");
    }
    if (ambient_dim < 4) {
        throw ConfigError("spec.N: ambient dimension must be at least 4");
    }
    const int seed_dim = ambient_dim - 2 * (isotropy_order + 1);
    if (seed_dim < 0) {
        throw ConfigError("spec.N: N - 2(m+1) must be non-negative (N=" + std::to_string(ambient_dim)
                          + ", m=" + std::to_string(isotropy_order) + ")");
    }
    if (alpha0.dim() != seed_dim) {
        throw ConfigError("spec.alpha0: expected " + std::to_string(seed_dim) + " components, got "
                          + std::to_string(alpha0.dim()));
    }
    if (seed_dim > 0 && alpha0.is_zero()) {
        throw ConfigError("spec.alpha0: seed must be nonzero");
    }
    if (static_cast<int>(betas.size()) != isotropy_order + 1) {
        throw ConfigError("spec.betas: expected m+1 = " + std::to_string(isotropy_order + 1) + " multipliers");
    }
    for (std::size_t k = 0; k < betas.size(); ++k) {
        if (betas[k].is_zero()) {
            throw ConfigError("spec.betas[" + std::to_string(k) + "]: multiplier must be nonzero");
        }
    }
}

CVecPoly w_step(const CVecPoly &alpha, const CPoly &beta)
{
    const CVecPoly phi = alpha.integral();
    const CPoly phi2 = dot(phi, phi);
    const CPoly one = CPoly::constant(1.0);
    const complex i(0.0, 1.0);

    std::vector<CPoly> out;
    out.reserve(static_cast<std::size_t>(alpha.dim()) + 2);
    out.push_back(beta * (one - phi2));
    out.push_back(beta * (one + phi2) * i);
    for (int k = 0; k < phi.dim(); ++k) {
        out.push_back(beta * phi[k] * 2.0);
    }
    return CVecPoly(std::move(out));
}

IsotropicCurve w_generate(const IsotropicSpec &spec)
{
    spec.validate();
    IsotropicCurve out;
    CVecPoly alpha = spec.alpha0;
    out.levels.push_back(alpha.integral());
    for (const auto &beta : spec.betas) {
        alpha = w_step(alpha, beta);
        out.levels.push_back(alpha.integral());
    }
    out.phi = out.levels.back();
    out.spec = spec;
    check_isotropy(out.phi);
    return out;
}

IsotropicCurve holomorphic_curve(const CVecPoly &components)
{
    if (components.derivative().is_zero()) {
        throw ConfigError("holomorphic curve: components must not all be constant");
    }
    const complex i(0.0, 1.0);
    std::vector<CPoly> comps;
    comps.reserve(2 * static_cast<std::size_t>(components.dim()));
    for (int k = 0; k < components.dim(); ++k) {
        comps.push_back(components[k]);
        comps.push_back(components[k] * i);
    }
    IsotropicCurve out;
    out.phi = CVecPoly(std::move(comps));
    out.levels = {out.phi};
    check_isotropy(out.phi);
    return out;
}

double isotropy_residual(const CVecPoly &phi)
{
    const CVecPoly d = phi.derivative();
    const double scale = d.max_abs_coeff();
    if (scale == 0.0) {
        return 0.0;
    }
    return dot(d, d).max_abs_coeff() / (scale * scale);
}

JetVec jet_lift(const CVecPoly &curve, Point p, int order)
{
    const complex z0(p.x, p.y);
    const complex i(0.0, 1.0);

    // binom(n, j) i^j for the expansion of (dx + i dy)^n.
    std::vector<std::vector<complex>> expand(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        auto &row = expand[static_cast<std::size_t>(n)];
        row.resize(static_cast<std::size_t>(n) + 1);
        double binom = 1.0;
        complex ipow = 1.0;
        for (int j = 0; j <= n; ++j) {
            row[static_cast<std::size_t>(j)] = binom * ipow;
            binom = binom * (n - j) / (j + 1);
            ipow *= i;
        }
    }

    JetVec out(curve.dim(), order);
    for (int k = 0; k < curve.dim(); ++k) {
        const auto taylor = curve[k].taylor_at(z0, order);
        CJet cj(order);
        for (int n = 0; n <= order; ++n) {
            const complex b = taylor[static_cast<std::size_t>(n)];
            if (b == complex{}) {
                continue;
            }
            for (int j = 0; j <= n; ++j) {
                cj.add_coeff(n - j, j, b * expand[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)]);
            }
        }
        out[k] = real(cj);
    }
    return out;
}

SurfaceEvaluator surface_evaluator(const IsotropicCurve &curve)
{
    CVecPoly phi = curve.phi;
    return SurfaceEvaluator([phi](Point p, int order) { return jet_lift(phi, p, order); }, phi.dim(),
                            Provenance::Weierstrass);
}

} // namespace superconf
