#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edgesim/config.hpp"
#include "edgesim/mobility.hpp"
#include "edgesim/topology.hpp"
#include "edgesim/trace.hpp"

namespace edgesim {

class Rng;

// Drone availability bookkeeping. One drone is occupied per drone session;
// when every drone is busy the session degrades to zero flight time.
class DroneFleet {
public:
    DroneFleet(const Topology& topo, int drones_per_home);

    // nearest home with a free drone (ties by home index); nullopt when none
    struct Acquired {
        int home = 0;
        double flight_s = 0.0;
    };
    std::optional<Acquired> acquire(const GpsPoint& ue_pos);
    void release(int home);

    int free_count() const;

private:
    const Topology& topo_;
    std::vector<int> free_per_home_;
};

inline constexpr double kDroneSpeedMps = 15.0;

// Draws at most one new session for an idle UE at tick t_s. Consumes exactly
// one rng draw for the arrival test and more only when a session starts.
std::optional<ServiceSession> sample_service_session(Rng& rng, const SimConfig& cfg,
                                                     DroneFleet& fleet,
                                                     long long t_s, const Ue& ue);

struct TraceOutput {
    std::vector<TraceRecord> records;
    std::vector<ServiceSession> sessions;
    Topology topology;
};

// Full simulation sweep, 1 s ticks. Mobility (topology placement, UE starts,
// waypoints) is driven by mobility_seed; session usage by service_seed, so a
// fixed mobility pattern can be replayed under varying service seeds.
TraceOutput generate_trace(const SimConfig& cfg, std::uint64_t mobility_seed,
                           std::uint64_t service_seed);

inline TraceOutput generate_trace(const SimConfig& cfg) {
    return generate_trace(cfg, cfg.seed, cfg.seed);
}

}  // namespace edgesim
