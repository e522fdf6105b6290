#include "edgesim/config.hpp"

#include <cmath>

#include "edgesim/errors.hpp"

namespace edgesim {

std::array<SessionProfile, kServiceKindCount> SimConfig::default_session_profiles() {
    std::array<SessionProfile, kServiceKindCount> p{};
    p[static_cast<std::size_t>(ServiceKind::Mime)] = {60.0, 50, 50};
    p[static_cast<std::size_t>(ServiceKind::VideoStreaming)] = {300.0, 100, 5000};
    p[static_cast<std::size_t>(ServiceKind::SocialNetwork)] = {180.0, 200, 1500};
    p[static_cast<std::size_t>(ServiceKind::DroneDelivery)] = {120.0, 200, 500};
    p[static_cast<std::size_t>(ServiceKind::DroneTransportation)] = {120.0, 200, 500};
    p[static_cast<std::size_t>(ServiceKind::IotWeather)] = {30.0, 20, 20};
    p[static_cast<std::size_t>(ServiceKind::IotAirPollution)] = {30.0, 20, 20};
    p[static_cast<std::size_t>(ServiceKind::IotParking)] = {30.0, 20, 20};
    return p;
}

double SimConfig::kind_probability(ServiceKind k) const {
    const ServiceMix& m = service_probabilities;
    switch (k) {
        case ServiceKind::Mime: return m.mime;
        case ServiceKind::VideoStreaming: return m.video_streaming;
        case ServiceKind::SocialNetwork: return m.social_network;
        case ServiceKind::DroneDelivery: return m.drone_delivery;
        case ServiceKind::DroneTransportation: return m.drone_transportation;
        case ServiceKind::IotWeather:
        case ServiceKind::IotAirPollution:
        case ServiceKind::IotParking: return m.iot / 3.0;
    }
    return 0.0;
}

void SimConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ValidationError(msg);
    };
    require(num_ues >= 1, "num_ues must be >= 1");
    require(update_meters > 0.0, "update_meters must be > 0");
    require(enbs_per_ec >= 1, "enbs_per_ec must be >= 1");
    require(enbs_per_ta >= 1, "enbs_per_ta must be >= 1");
    require(num_ecs >= 1, "num_ecs must be >= 1");
    require(num_drone_homes >= 1, "num_drone_homes must be >= 1");
    require(drones_per_home >= 1, "drones_per_home must be >= 1");
    require(range_m > 0.0, "range_m must be > 0");
    require(iot_device_counts.weather >= 1, "iot_device_counts.weather must be >= 1");
    require(iot_device_counts.air_pollution >= 1,
            "iot_device_counts.air_pollution must be >= 1");
    require(iot_device_counts.parking >= 1, "iot_device_counts.parking must be >= 1");
    require(sim_duration_s > 0, "sim_duration_s must be > 0");
    require(is_valid(origin), "origin must be a valid GPS point");
    require(p_arrival >= 0.0 && p_arrival <= 1.0, "p_arrival must be in [0, 1]");

    const ServiceMix& m = service_probabilities;
    for (double v : {m.mime, m.video_streaming, m.social_network, m.drone_delivery,
                     m.drone_transportation, m.iot}) {
        require(v >= 0.0 && v <= 1.0,
                "service_probabilities entries must be in [0, 1]");
    }
    if (std::abs(m.sum() - 1.0) > 1e-9) {
        throw ValidationError("service_probabilities must sum to 1.0 (got " +
                              std::to_string(m.sum()) + ")");
    }
    for (const SessionProfile& p : session_profiles) {
        require(p.mean_duration_s > 0.0, "session mean_duration_s must be > 0");
        require(p.uplink_kbps > 0 && p.downlink_kbps > 0,
                "session datarates must be > 0");
    }
}

const std::string& placement_policy_name(PlacementPolicy p) {
    static const std::array<std::string, 3> names = {"FirstFit", "BestFit", "Random"};
    return names[static_cast<std::size_t>(p)];
}

void MecConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ValidationError(msg);
    };
    require(bandwidth_gbps > 0.0, "bandwidth_gbps must be > 0");
    require(vms_per_ec >= 1, "vms_per_ec must be >= 1");
    for (const ResourceTriple* r : {&host_resources, &vm_resources, &app_resources}) {
        require(r->ram_gb > 0.0 && r->cores > 0.0 && r->storage_gb > 0.0,
                "resource triples must be positive in all dimensions");
    }
    if (!(vm_resources * static_cast<double>(vms_per_ec)).fits_within(host_resources)) {
        throw ValidationError(
            "vms_per_ec x vm_resources exceeds host_resources in some dimension");
    }
    if (!app_resources.fits_within(vm_resources)) {
        throw ValidationError("app_resources exceed vm_resources in some dimension");
    }
}

}  // namespace edgesim
