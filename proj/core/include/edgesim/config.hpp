#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "edgesim/geo.hpp"
#include "edgesim/service.hpp"

namespace edgesim {

// Six probability rows; the single IoT share is split evenly across the
// three IoT kinds when drawing a session.
struct ServiceMix {
    double mime = 0.20;
    double video_streaming = 0.30;
    double social_network = 0.30;
    double drone_delivery = 0.05;
    double drone_transportation = 0.05;
    double iot = 0.10;

    double sum() const {
        return mime + video_streaming + social_network + drone_delivery +
               drone_transportation + iot;
    }
};

struct SessionProfile {
    double mean_duration_s = 60.0;  // for drone kinds: extra mean on top of flight time
    int uplink_kbps = 50;
    int downlink_kbps = 50;
};

struct IotDeviceCounts {
    int weather = 10;
    int air_pollution = 10;
    int parking = 10;
};

struct SimConfig {
    int num_ues = 500;
    double update_meters = 100.0;
    int enbs_per_ec = 3;
    int enbs_per_ta = 6;
    int num_ecs = 10;
    int num_drone_homes = 5;
    int drones_per_home = 2;
    double range_m = 5000.0;  // half-side of the square area
    IotDeviceCounts iot_device_counts{};
    ServiceMix service_probabilities{};
    long long sim_duration_s = 43200;  // 12 h
    std::uint64_t seed = 1;
    GpsPoint origin{60.1699, 24.9384};

    // per-UE Bernoulli arrival per tick while idle (mean one attempt / 10 min)
    double p_arrival = 1.0 / 600.0;
    std::array<SessionProfile, kServiceKindCount> session_profiles =
        default_session_profiles();

    static std::array<SessionProfile, kServiceKindCount> default_session_profiles();

    const SessionProfile& profile(ServiceKind k) const {
        return session_profiles[static_cast<std::size_t>(k)];
    }

    // probability of one of the eight kinds (IoT share split three ways)
    double kind_probability(ServiceKind k) const;

    void validate() const;  // throws ValidationError
};

struct ResourceTriple {
    double ram_gb = 0.0;
    double cores = 0.0;
    double storage_gb = 0.0;

    bool fits_within(const ResourceTriple& other) const {
        return ram_gb <= other.ram_gb + 1e-9 && cores <= other.cores + 1e-9 &&
               storage_gb <= other.storage_gb + 1e-9;
    }
    ResourceTriple operator+(const ResourceTriple& o) const {
        return {ram_gb + o.ram_gb, cores + o.cores, storage_gb + o.storage_gb};
    }
    ResourceTriple operator-(const ResourceTriple& o) const {
        return {ram_gb - o.ram_gb, cores - o.cores, storage_gb - o.storage_gb};
    }
    ResourceTriple operator*(double f) const {
        return {ram_gb * f, cores * f, storage_gb * f};
    }
    bool operator==(const ResourceTriple&) const = default;
};

enum class PlacementPolicy { FirstFit, BestFit, Random };

const std::string& placement_policy_name(PlacementPolicy p);

struct MecConfig {
    double bandwidth_gbps = 1.0;  // GB transferred per second
    PlacementPolicy policy = PlacementPolicy::FirstFit;
    int vms_per_ec = 2;
    ResourceTriple host_resources{16.0, 16.0, 1000.0};
    ResourceTriple vm_resources{8.0, 8.0, 500.0};
    ResourceTriple app_resources{1.0, 2.0, 2.0};

    double migration_duration_s() const {
        return app_resources.storage_gb / bandwidth_gbps;
    }

    void validate() const;  // throws ValidationError
};

}  // namespace edgesim
