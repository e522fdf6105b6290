#pragma once

#include <utility>

namespace edgesim {

class Rng;

inline constexpr double kEarthRadiusKm = 6371.0;

struct GpsPoint {
    double lat = 0.0;  // degrees, [-90, 90]
    double lon = 0.0;  // degrees, [-180, 180]

    bool operator==(const GpsPoint&) const = default;
};

bool is_valid(const GpsPoint& p);

// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(const GpsPoint& a, const GpsPoint& b);

// Equirectangular tangent plane anchored at an origin point: x east, y north,
// both in meters. Exact inverse of itself; adequate at city scale.
class LocalProjection {
public:
    explicit LocalProjection(GpsPoint origin);

    std::pair<double, double> to_local(const GpsPoint& p) const;
    GpsPoint to_gps(double x_m, double y_m) const;

    const GpsPoint& origin() const { return origin_; }

private:
    GpsPoint origin_;
    double m_per_deg_lat_;
    double m_per_deg_lon_;
};

// Square simulation area of half-side range_m centered on the projection origin.
struct SquareArea {
    LocalProjection proj;
    double range_m;

    SquareArea(GpsPoint origin, double range) : proj(origin), range_m(range) {}

    GpsPoint random_point(Rng& rng) const;
    bool contains(const GpsPoint& p) const;
};

}  // namespace edgesim
