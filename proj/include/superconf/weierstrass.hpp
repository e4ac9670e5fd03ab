#pragma once

#include <optional>
#include <vector>

#include <superconf/cpoly.hpp>
#include <superconf/surface.hpp>

namespace superconf {

/// Input of the isotropic Weierstrass recursion: a seed alpha0 in
/// C^(N - 2(m+1)) and multipliers beta_1 .. beta_(m+1).
struct IsotropicSpec {
    int ambient_dim = 6;
    int isotropy_order = 2;
    CVecPoly alpha0;
    std::vector<CPoly> betas;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct IsotropicCurve {
    /// The final holomorphic curve; the surface is Re(phi) componentwise.
    CVecPoly phi;
    /// phi_0 .. phi_(m+1) for generated curves; just {phi} otherwise.
    std::vector<CVecPoly> levels;
    std::optional<IsotropicSpec> spec;
};

/// One recursion step: beta (1 - phi^2, i(1 + phi^2), 2 phi) with phi the
/// antiderivative of alpha.
CVecPoly w_step(const CVecPoly &alpha, const CPoly &beta);

/// Runs the recursion m+1 times and integrates once more. Throws
/// GeometryError(IsotropyViolation) if phi' is not isotropic.
IsotropicCurve w_generate(const IsotropicSpec &spec);

/// Holomorphic curve (w_1, ..., w_k) in C^k written as the isotropic curve
/// (w_1, i w_1, ..., w_k, i w_k) in C^2k. Its real part is
/// (Re w_1, -Im w_1, ...), an isometric copy of the curve in R^2k.
IsotropicCurve holomorphic_curve(const CVecPoly &components);

/// max |coeff(<phi', phi'>)| / max |coeff(phi')|^2; 0 for a constant curve.
double isotropy_residual(const CVecPoly &phi);

/// Jet of (x, y) -> Re(curve(x + iy)) at p, exact for polynomial curves.
JetVec jet_lift(const CVecPoly &curve, Point p, int order);

SurfaceEvaluator surface_evaluator(const IsotropicCurve &curve);

} // namespace superconf
