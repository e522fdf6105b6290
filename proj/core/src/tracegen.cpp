#include "edgesim/tracegen.hpp"

#include <algorithm>
#include <cmath>

#include "edgesim/errors.hpp"
#include "edgesim/rng.hpp"

namespace edgesim {

namespace {
// stream tags for deriving independent generators from the two seeds
constexpr std::uint64_t kStreamTopology = 0x746f706f;  // "topo"
constexpr std::uint64_t kStreamMobility = 0x6d6f6265;  // "mobe"
constexpr std::uint64_t kStreamService = 0x73657276;   // "serv"
}  // namespace

DroneFleet::DroneFleet(const Topology& topo, int drones_per_home)
    : topo_(topo), free_per_home_(topo.drone_homes.size(), drones_per_home) {}

std::optional<DroneFleet::Acquired> DroneFleet::acquire(const GpsPoint& ue_pos) {
    int best = -1;
    double best_km = 0.0;
    for (std::size_t h = 0; h < free_per_home_.size(); ++h) {
        if (free_per_home_[h] <= 0) continue;
        const double d = haversine_km(topo_.drone_homes[h], ue_pos);
        if (best < 0 || d < best_km) {
            best = static_cast<int>(h);
            best_km = d;
        }
    }
    if (best < 0) return std::nullopt;
    --free_per_home_[best];
    return Acquired{best, best_km * 1000.0 / kDroneSpeedMps};
}

void DroneFleet::release(int home) { ++free_per_home_.at(home); }

int DroneFleet::free_count() const {
    int n = 0;
    for (int f : free_per_home_) n += f;
    return n;
}

namespace {

ServiceKind draw_kind(Rng& rng, const SimConfig& cfg) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (ServiceKind k : kAllServiceKinds) {
        acc += cfg.kind_probability(k);
        if (u < acc) return k;
    }
    return kAllServiceKinds.back();  // u landed in the 1e-9 rounding slack
}

long long draw_duration_s(Rng& rng, double mean_s) {
    const double raw = rng.exponential(mean_s);
    const double clamped = std::clamp(raw, 10.0, 2.0 * mean_s + 600.0);
    return std::max<long long>(1, std::llround(clamped));
}

std::optional<ServiceSession> sample_session_impl(Rng& rng, const SimConfig& cfg,
                                                  DroneFleet& fleet, long long t_s,
                                                  const Ue& ue, int* drone_home_out) {
    if (drone_home_out) *drone_home_out = -1;
    if (!rng.bernoulli(cfg.p_arrival)) return std::nullopt;

    const ServiceKind kind = draw_kind(rng, cfg);
    const SessionProfile& profile = cfg.profile(kind);

    double mean_s = profile.mean_duration_s;
    if (is_drone(kind)) {
        // flight from the nearest home with a free drone; all busy -> degraded
        // session with zero flight time
        if (auto acquired = fleet.acquire(ue.position)) {
            mean_s += acquired->flight_s;
            if (drone_home_out) *drone_home_out = acquired->home;
        }
    }

    ServiceSession s;
    s.ue_id = ue.id;
    s.service = kind;
    s.start_s = t_s;
    s.end_s = t_s + draw_duration_s(rng, mean_s);
    s.uplink_kbps = profile.uplink_kbps;
    s.downlink_kbps = profile.downlink_kbps;
    return s;
}

}  // namespace

std::optional<ServiceSession> sample_service_session(Rng& rng, const SimConfig& cfg,
                                                     DroneFleet& fleet,
                                                     long long t_s, const Ue& ue) {
    return sample_session_impl(rng, cfg, fleet, t_s, ue, nullptr);
}

TraceOutput generate_trace(const SimConfig& cfg, std::uint64_t mobility_seed,
                           std::uint64_t service_seed) {
    cfg.validate();

    Rng rng_topo(mix_seed(mobility_seed, kStreamTopology));
    Rng rng_mob(mix_seed(mobility_seed, kStreamMobility));
    Rng rng_svc(mix_seed(service_seed, kStreamService));

    TraceOutput out;
    out.topology = build_topology(cfg, rng_topo);
    const SquareArea area(cfg.origin, cfg.range_m);
    DroneFleet fleet(out.topology, cfg.drones_per_home);

    std::vector<Ue> ues(cfg.num_ues);
    for (int i = 0; i < cfg.num_ues; ++i) {
        Ue& ue = ues[i];
        ue.id = i;
        ue.profile = static_cast<MobilityProfile>(rng_mob.index(3));
        ue.speed_mps = profile_speed_mps(ue.profile);
        ue.position = area.random_point(rng_mob);
        ue.waypoint = area.random_point(rng_mob);
    }

    const long long duration = cfg.sim_duration_s;
    std::vector<std::vector<int>> ends(static_cast<std::size_t>(duration) + 1);
    std::vector<int> session_home;  // -1 for non-drone / degraded sessions

    auto emit = [&](long long t, const Ue& ue) {
        TraceRecord r;
        r.time_s = t;
        r.ue_id = ue.id;
        if (ue.active_session >= 0) {
            const ServiceSession& s = out.sessions[ue.active_session];
            r.service = s.service;
            r.datarate_uplink_kbps = s.uplink_kbps;
            r.datarate_downlink_kbps = s.downlink_kbps;
        }
        r.lat = ue.position.lat;
        r.lon = ue.position.lon;
        r.enodeb_id = nearest_enodeb(out.topology, ue.position);
        out.records.push_back(r);
    };

    for (long long t = 1; t <= duration; ++t) {
        // movement + distance-triggered records
        for (Ue& ue : ues) {
            if (step_ue(ue, 1.0, area, cfg.update_meters, rng_mob)) emit(t, ue);
        }

        // new sessions for idle UEs; ends are processed after sampling, so a
        // session ending at t cannot be replaced until t+1
        if (t < duration) {
            for (Ue& ue : ues) {
                if (ue.active_session >= 0) continue;
                int home = -1;
                auto s = sample_session_impl(rng_svc, cfg, fleet, t, ue, &home);
                if (!s) continue;
                s->end_s = std::min(s->end_s, duration);
                const int idx = static_cast<int>(out.sessions.size());
                out.sessions.push_back(*s);
                session_home.push_back(home);
                ends[static_cast<std::size_t>(s->end_s)].push_back(idx);
                ue.active_session = idx;
                emit(t, ue);  // forced record at session start
            }
        }

        // session ends; the closing record still carries the service fields
        for (int idx : ends[static_cast<std::size_t>(t)]) {
            Ue& ue = ues[out.sessions[idx].ue_id];
            emit(t, ue);
            ue.active_session = -1;
            if (session_home[idx] >= 0) fleet.release(session_home[idx]);
        }
    }

    return out;
}

}  // namespace edgesim
