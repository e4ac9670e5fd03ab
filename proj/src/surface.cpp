#include <superconf/surface.hpp>

#include <string>

namespace superconf {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
        case ErrorKind::DegenerateJet:
            return "DegenerateJet";
        case ErrorKind::RankDeficient:
            return "RankDeficient";
        case ErrorKind::NotImmersion:
            return "NotImmersion";
        case ErrorKind::NotRegular:
            return "NotRegular";
        case ErrorKind::DegenerateEllipse:
            return "DegenerateEllipse";
        case ErrorKind::PedalDegenerate:
            return "PedalDegenerate";
        case ErrorKind::PoleProximity:
            return "PoleProximity";
        case ErrorKind::IsotropyViolation:
            return "IsotropyViolation";
        case ErrorKind::InsufficientOrder:
            return "InsufficientOrder";
    }
    return "Unknown";
}

std::string_view to_string(Provenance p)
{
    switch (p) {
        case Provenance::Weierstrass:
            return "weierstrass";
        case Provenance::Pedal:
            return "pedal";
        case Provenance::Moebius:
            return "moebius";
        case Provenance::Composite:
            return "composite";
    }
    return "unknown";
}

SurfaceEvaluator::SurfaceEvaluator(Map map, int ambient_dim, Provenance tag, int max_order)
    : map_(std::move(map)), ambient_dim_(ambient_dim), tag_(tag), max_order_(max_order)
{
}

JetVec SurfaceEvaluator::operator()(Point p, int order) const
{
    if (order > max_order_ || order < 0) {
        throw GeometryError(ErrorKind::InsufficientOrder,
                            "requested jet order " + std::to_string(order) + " exceeds evaluator limit "
                                + std::to_string(max_order_));
    }
    return map_(p, order);
}

std::vector<Point> Grid::points() const
{
    std::vector<Point> out;
    if (nx <= 0 || ny <= 0) {
        return out;
    }
    out.reserve(size());
    for (int iy = 0; iy < ny; ++iy) {
        const double y = ny == 1 ? y0 : y0 + (y1 - y0) * iy / (ny - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = nx == 1 ? x0 : x0 + (x1 - x0) * ix / (nx - 1);
            out.push_back({x, y});
        }
    }
    return out;
}

bool Grid::is_excluded(Point p) const
{
    for (const auto &d : excluded_disks) {
        const double dx = p.x - d.cx;
        const double dy = p.y - d.cy;
        if (dx * dx + dy * dy < d.r * d.r) {
            return true;
        }
    }
    return false;
}

} // namespace superconf
