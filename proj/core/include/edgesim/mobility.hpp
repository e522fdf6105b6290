#pragma once

#include "edgesim/geo.hpp"

namespace edgesim {

class Rng;

enum class MobilityProfile { Walking, Biking, Driving };

double profile_speed_mps(MobilityProfile p);  // 1.4 / 4.0 / 11.0

struct Ue {
    int id = 0;
    MobilityProfile profile = MobilityProfile::Walking;
    GpsPoint position;
    GpsPoint waypoint;
    double speed_mps = 0.0;
    double distance_since_record = 0.0;
    int active_session = -1;  // index into the session list, -1 while idle
};

// Random-waypoint step: advance speed*dt toward the waypoint; on arrival draw
// a new uniform waypoint and spend the remaining travel on it. Returns true
// when the accumulated distance crossed update_meters this step (accumulator
// then resets to zero; at most one trigger per step).
bool step_ue(Ue& ue, double dt_s, const SquareArea& area, double update_meters,
             Rng& rng);

}  // namespace edgesim
