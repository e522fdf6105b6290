#include <cmath>

#include <doctest.h>

#include "edgesim/geo.hpp"
#include "edgesim/rng.hpp"

using namespace edgesim;

namespace {

// independent high-precision oracle: atan2 form of the great-circle distance
// in long double, a different formulation than the haversine under test
long double oracle_km(const GpsPoint& a, const GpsPoint& b) {
    const long double deg = 3.141592653589793238462643383279502884L / 180.0L;
    const long double phi1 = a.lat * deg;
    const long double phi2 = b.lat * deg;
    const long double dl = (b.lon - a.lon) * deg;
    const long double y = std::sqrt(
        std::pow(std::cos(phi2) * std::sin(dl), 2.0L) +
        std::pow(std::cos(phi1) * std::sin(phi2) -
                     std::sin(phi1) * std::cos(phi2) * std::cos(dl),
                 2.0L));
    const long double x = std::sin(phi1) * std::sin(phi2) +
                          std::cos(phi1) * std::cos(phi2) * std::cos(dl);
    return 6371.0L * std::atan2(y, x);
}

GpsPoint random_global_point(Rng& rng) {
    return {rng.uniform(-90.0, 90.0), rng.uniform(-180.0, 180.0)};
}

}  // namespace

TEST_CASE("haversine: fixed points") {
    CHECK(haversine_km({0, 0}, {0, 0}) == 0.0);

    // quarter great circle, pole to equator
    const double quarter = 3.14159265358979323846 * kEarthRadiusKm / 2.0;
    CHECK(haversine_km({0, 0}, {90, 0}) == doctest::Approx(quarter).epsilon(1e-12));
    CHECK(haversine_km({0, 0}, {90, 0}) == doctest::Approx(10007.543).epsilon(1e-6));

    // one hundredth of a degree of latitude
    const double helsinki =
        static_cast<double>(oracle_km({60.17, 24.94}, {60.18, 24.94}));
    CHECK(haversine_km({60.17, 24.94}, {60.18, 24.94}) ==
          doctest::Approx(helsinki).epsilon(1e-9));
    CHECK(haversine_km({60.17, 24.94}, {60.18, 24.94}) ==
          doctest::Approx(1.11195).epsilon(1e-4));

    // antipodal pair is exactly pi*R
    CHECK(haversine_km({0, 0}, {0, 180}) ==
          3.14159265358979323846 * kEarthRadiusKm);
}

TEST_CASE("haversine: metric properties on random pairs") {
    Rng rng(42);
    const double pi_r = 3.14159265358979323846 * kEarthRadiusKm;
    for (int i = 0; i < 500; ++i) {
        const GpsPoint a = random_global_point(rng);
        const GpsPoint b = random_global_point(rng);
        const GpsPoint c = random_global_point(rng);
        const double ab = haversine_km(a, b);
        CHECK(ab == haversine_km(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= pi_r * (1.0 + 1e-12));
        CHECK(haversine_km(a, a) == 0.0);
        // triangle inequality of the great-circle metric
        CHECK(ab <= haversine_km(a, c) + haversine_km(c, b) + 1e-9);
    }
}

TEST_CASE("haversine: 1000 random pairs against the spherical-trig oracle") {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const GpsPoint a = random_global_point(rng);
        const GpsPoint b = random_global_point(rng);
        const double got = haversine_km(a, b);
        const double want = static_cast<double>(oracle_km(a, b));
        CHECK(std::abs(got - want) <= 1e-9 * std::max(want, 1e-12));
    }
}

TEST_CASE("local projection is its own inverse") {
    const LocalProjection proj({60.1699, 24.9384});
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(-5000.0, 5000.0);
        const double y = rng.uniform(-5000.0, 5000.0);
        const GpsPoint p = proj.to_gps(x, y);
        const auto [rx, ry] = proj.to_local(p);
        CHECK(rx == doctest::Approx(x).epsilon(1e-9));
        CHECK(ry == doctest::Approx(y).epsilon(1e-9));
    }
}

TEST_CASE("square area sampling stays inside") {
    const SquareArea area({60.1699, 24.9384}, 5000.0);
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        CHECK(area.contains(area.random_point(rng)));
    }
}
