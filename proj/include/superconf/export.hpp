#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <superconf/geometry.hpp>

namespace superconf {

struct ExportStats {
    std::size_t vertices = 0;
    std::size_t triangles = 0;
    /// Grid points whose evaluation failed; written as the origin.
    std::size_t failed = 0;
    std::vector<std::string> warnings;
};

/// Empty when the rows of p are orthonormal within 1e-9, else a warning.
std::optional<std::string> projection_warning(const Eigen::MatrixXd &p);

/// Grid mesh in row-major vertex order, each quad split into two
/// triangles. R^n is mapped to R^3 by the first three coordinates or by
/// the given 3 x n projection.
ExportStats write_obj(std::ostream &out, const SurfaceEvaluator &s, const Grid &grid,
                      const std::optional<Eigen::MatrixXd> &projection = std::nullopt,
                      const std::string &title = "surface");

/// Columns: x, y, K, K_N, Hnorm2, wintgen_defect, circle_defect_1,
/// circle_defect_2, lambda_2, excluded_flag.
ExportStats write_geometry_csv(std::ostream &out, const SurfaceEvaluator &s, const Grid &grid, int jet_order = 4);

/// Columns: x, y, Z_1..Z_n, g_1..g_n, delta_norm, eta_norm, theta,
/// z_nonzero, delta_nonzero, immersion.
ExportStats write_pedal_csv(std::ostream &out, const SurfaceEvaluator &f, const Grid &grid);

} // namespace superconf
