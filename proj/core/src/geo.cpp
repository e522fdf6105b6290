#include "edgesim/geo.hpp"

#include <algorithm>
#include <cmath>

#include "edgesim/rng.hpp"

namespace edgesim {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}

bool is_valid(const GpsPoint& p) {
    return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
           p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

double haversine_km(const GpsPoint& a, const GpsPoint& b) {
    const double phi1 = a.lat * kDegToRad;
    const double phi2 = b.lat * kDegToRad;
    const double dphi = (b.lat - a.lat) * kDegToRad;
    const double dlambda = (b.lon - a.lon) * kDegToRad;

    const double sp = std::sin(dphi / 2.0);
    const double sl = std::sin(dlambda / 2.0);
    const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

LocalProjection::LocalProjection(GpsPoint origin) : origin_(origin) {
    m_per_deg_lat_ = kEarthRadiusKm * 1000.0 * kDegToRad;  // ~111194.93 m/deg
    m_per_deg_lon_ = m_per_deg_lat_ * std::cos(origin.lat * kDegToRad);
}

std::pair<double, double> LocalProjection::to_local(const GpsPoint& p) const {
    return {(p.lon - origin_.lon) * m_per_deg_lon_,
            (p.lat - origin_.lat) * m_per_deg_lat_};
}

GpsPoint LocalProjection::to_gps(double x_m, double y_m) const {
    return {origin_.lat + y_m / m_per_deg_lat_,
            origin_.lon + x_m / m_per_deg_lon_};
}

GpsPoint SquareArea::random_point(Rng& rng) const {
    // x drawn before y; callers rely on this order for reproducibility
    const double x = rng.uniform(-range_m, range_m);
    const double y = rng.uniform(-range_m, range_m);
    return proj.to_gps(x, y);
}

bool SquareArea::contains(const GpsPoint& p) const {
    const auto [x, y] = proj.to_local(p);
    const double slack = 1e-6;
    return x >= -range_m - slack && x <= range_m + slack &&
           y >= -range_m - slack && y <= range_m + slack;
}

}  // namespace edgesim
