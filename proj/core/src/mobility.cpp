#include "edgesim/mobility.hpp"

#include <cmath>

#include "edgesim/rng.hpp"

namespace edgesim {

double profile_speed_mps(MobilityProfile p) {
    switch (p) {
        case MobilityProfile::Walking: return 1.4;
        case MobilityProfile::Biking: return 4.0;
        case MobilityProfile::Driving: return 11.0;
    }
    return 1.4;
}

bool step_ue(Ue& ue, double dt_s, const SquareArea& area, double update_meters,
             Rng& rng) {
    auto [x, y] = area.proj.to_local(ue.position);
    auto [wx, wy] = area.proj.to_local(ue.waypoint);

    double travel = ue.speed_mps * dt_s;
    const double total = travel;
    int guard = 64;  // a zero-length waypoint draw has probability ~0
    while (travel > 0.0 && guard-- > 0) {
        const double dx = wx - x;
        const double dy = wy - y;
        const double dist = std::hypot(dx, dy);
        if (dist > travel) {
            x += dx / dist * travel;
            y += dy / dist * travel;
            travel = 0.0;
        } else {
            // waypoint reached mid-step: jump there, draw the next one
            x = wx;
            y = wy;
            travel -= dist;
            const GpsPoint next = area.random_point(rng);
            const auto [nx, ny] = area.proj.to_local(next);
            wx = nx;
            wy = ny;
        }
    }

    ue.position = area.proj.to_gps(x, y);
    ue.waypoint = area.proj.to_gps(wx, wy);

    ue.distance_since_record += total;
    if (ue.distance_since_record >= update_meters) {
        ue.distance_since_record = 0.0;
        return true;
    }
    return false;
}

}  // namespace edgesim
