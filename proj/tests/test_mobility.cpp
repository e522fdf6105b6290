#include <cmath>

#include <doctest.h>

#include "edgesim/mobility.hpp"
#include "edgesim/rng.hpp"

using namespace edgesim;

namespace {

Ue make_ue(const SquareArea& area, double x, double y, double wx, double wy,
           MobilityProfile profile) {
    Ue ue;
    ue.id = 0;
    ue.profile = profile;
    ue.speed_mps = profile_speed_mps(profile);
    ue.position = area.proj.to_gps(x, y);
    ue.waypoint = area.proj.to_gps(wx, wy);
    return ue;
}

double local_distance(const SquareArea& area, const GpsPoint& a, const GpsPoint& b) {
    const auto [ax, ay] = area.proj.to_local(a);
    const auto [bx, by] = area.proj.to_local(b);
    return std::hypot(ax - bx, ay - by);
}

}  // namespace

TEST_CASE("walking UE advances speed*dt toward the waypoint") {
    const SquareArea area({60.1699, 24.9384}, 5000.0);
    Rng rng(1);
    Ue ue = make_ue(area, 0, 0, 1000, 0, MobilityProfile::Walking);
    const GpsPoint start = ue.position;
    const bool fired = step_ue(ue, 10.0, area, 100.0, rng);
    CHECK_FALSE(fired);
    CHECK(local_distance(area, start, ue.position) == doctest::Approx(14.0).epsilon(1e-9));
    const auto [x, y] = area.proj.to_local(ue.position);
    CHECK(x == doctest::Approx(14.0).epsilon(1e-9));
    CHECK(y == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("accumulating exactly update_meters fires one trigger and resets") {
    const SquareArea area({60.1699, 24.9384}, 5000.0);
    Rng rng(1);
    Ue ue = make_ue(area, -4000, -4000, 4000, 4000, MobilityProfile::Walking);
    // 1.4 m/s; trigger expected on the step that crosses 100 m
    int triggers = 0;
    double traveled = 0.0;
    for (int t = 0; t < 72; ++t) {
        if (step_ue(ue, 1.0, area, 100.0, rng)) {
            ++triggers;
            // 72 steps x 1.4 = 100.8 m; the crossing happens at step 72
            CHECK(traveled + 1.4 >= 100.0);
        }
        traveled += 1.4;
    }
    CHECK(triggers == 1);
    CHECK(ue.distance_since_record == doctest::Approx(0.0));
}

TEST_CASE("waypoint reached mid-step spends the remainder on the next leg") {
    const SquareArea area({60.1699, 24.9384}, 5000.0);
    // waypoint 5 m away, driving at 11 m/s: 5 m to the waypoint, 6 m onward
    Rng rng(123);
    Ue ue = make_ue(area, 0, 0, 5, 0, MobilityProfile::Driving);
    const GpsPoint old_waypoint = ue.waypoint;
    step_ue(ue, 1.0, area, 100.0, rng);

    // two-segment oracle: replay the same rng draw for the fresh waypoint
    Rng rng2(123);
    const GpsPoint next_waypoint = area.random_point(rng2);
    CHECK(ue.waypoint == next_waypoint);
    const auto [wx, wy] = area.proj.to_local(next_waypoint);
    const double leg = std::hypot(wx - 5.0, wy - 0.0);
    const double expect_x = 5.0 + (wx - 5.0) / leg * 6.0;
    const double expect_y = 0.0 + (wy - 0.0) / leg * 6.0;
    const auto [x, y] = area.proj.to_local(ue.position);
    CHECK(x == doctest::Approx(expect_x).epsilon(1e-9));
    CHECK(y == doctest::Approx(expect_y).epsilon(1e-9));
    CHECK(local_distance(area, ue.position, old_waypoint) > 0.0);
}

TEST_CASE("record cadence: distance between triggers is in [update, update+step)") {
    const SquareArea area({60.1699, 24.9384}, 5000.0);
    Rng rng(77);
    Ue ue = make_ue(area, 0, 0, 4000, 3000, MobilityProfile::Biking);
    ue.waypoint = area.random_point(rng);
    double since_last = 0.0;
    bool seen_first = false;
    for (int t = 0; t < 5000; ++t) {
        const double step = ue.speed_mps * 1.0;
        const bool fired = step_ue(ue, 1.0, area, 100.0, rng);
        since_last += step;
        if (fired) {
            if (seen_first) {
                CHECK(since_last >= 100.0);
                CHECK(since_last < 100.0 + step + 1e-9);
            }
            seen_first = true;
            since_last = 0.0;
        }
    }
    CHECK(seen_first);
}
