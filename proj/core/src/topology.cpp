#include "edgesim/topology.hpp"

#include <array>
#include <cmath>

#include "edgesim/errors.hpp"
#include "edgesim/rng.hpp"

namespace edgesim {

const std::string& iot_device_kind_name(IotDeviceKind k) {
    static const std::array<std::string, 3> names = {"weather", "air_pollution",
                                                     "parking"};
    return names[static_cast<std::size_t>(k)];
}

Topology build_topology(const SimConfig& cfg, Rng& rng) {
    Topology topo;
    const SquareArea area(cfg.origin, cfg.range_m);
    const int n = cfg.num_ecs * cfg.enbs_per_ec;

    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const int rows = (n + cols - 1) / cols;
    for (int id = 0; id < n; ++id) {
        const int r = id / cols;
        const int c = id % cols;
        const double x = -cfg.range_m + 2.0 * cfg.range_m * (c + 0.5) / cols;
        const double y = -cfg.range_m + 2.0 * cfg.range_m * (r + 0.5) / rows;
        Enb enb;
        enb.id = id;
        enb.pos = area.proj.to_gps(x, y);
        enb.ec_id = id / cfg.enbs_per_ec;
        enb.ta_id = id / cfg.enbs_per_ta;
        topo.enbs.push_back(enb);
    }

    topo.ecs.resize(cfg.num_ecs);
    for (int e = 0; e < cfg.num_ecs; ++e) {
        EdgeCloudSite& ec = topo.ecs[e];
        ec.id = e;
        double lat = 0.0, lon = 0.0;
        for (int i = 0; i < cfg.enbs_per_ec; ++i) {
            const int enb_id = e * cfg.enbs_per_ec + i;
            ec.enb_ids.push_back(enb_id);
            lat += topo.enbs[enb_id].pos.lat;
            lon += topo.enbs[enb_id].pos.lon;
        }
        ec.centroid = {lat / cfg.enbs_per_ec, lon / cfg.enbs_per_ec};
    }

    for (int i = 0; i < cfg.num_drone_homes; ++i) {
        topo.drone_homes.push_back(area.random_point(rng));
    }
    const auto place_devices = [&](IotDeviceKind kind, int count) {
        for (int i = 0; i < count; ++i) {
            topo.iot_devices.push_back({kind, area.random_point(rng)});
        }
    };
    place_devices(IotDeviceKind::Weather, cfg.iot_device_counts.weather);
    place_devices(IotDeviceKind::AirPollution, cfg.iot_device_counts.air_pollution);
    place_devices(IotDeviceKind::Parking, cfg.iot_device_counts.parking);

    return topo;
}

int nearest_enodeb(const Topology& topo, const GpsPoint& p) {
    if (topo.enbs.empty()) throw InvariantError("nearest_enodeb: empty topology");
    int best = topo.enbs.front().id;
    double best_km = haversine_km(topo.enbs.front().pos, p);
    for (std::size_t i = 1; i < topo.enbs.size(); ++i) {
        const double d = haversine_km(topo.enbs[i].pos, p);
        if (d < best_km) {
            best_km = d;
            best = topo.enbs[i].id;
        }
    }
    return best;
}

}  // namespace edgesim
