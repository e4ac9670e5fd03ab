#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include <superconf/jet.hpp>

namespace superconf {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

enum class Provenance { Weierstrass, Pedal, Moebius, Composite };

std::string_view to_string(Provenance p);

/// A parametrized surface (x, y) -> R^n that returns jets of any order up
/// to max_order(). Evaluators are immutable and cheap to copy.
class SurfaceEvaluator {
public:
    using Map = std::function<JetVec(Point, int)>;

    SurfaceEvaluator(Map map, int ambient_dim, Provenance tag, int max_order = kMaxJetOrder);

    /// Throws GeometryError(InsufficientOrder) when order > max_order().
    JetVec operator()(Point p, int order) const;

    int ambient_dim() const { return ambient_dim_; }
    Provenance provenance() const { return tag_; }
    int max_order() const { return max_order_; }

private:
    Map map_;
    int ambient_dim_;
    Provenance tag_;
    int max_order_;
};

/// Circular hole in the parameter domain.
struct Disk {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;
};

struct Grid {
    double x0 = 0.3;
    double x1 = 1.3;
    double y0 = 0.3;
    double y1 = 1.3;
    int nx = 21;
    int ny = 21;
    std::vector<Disk> excluded_disks;

    /// Grid nodes in row-major order (y outer, x inner). Nodes inside an
    /// excluded disk are kept; use is_excluded() to filter.
    std::vector<Point> points() const;
    bool is_excluded(Point p) const;
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

} // namespace superconf
