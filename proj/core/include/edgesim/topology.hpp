#pragma once

#include <vector>

#include "edgesim/config.hpp"
#include "edgesim/geo.hpp"

namespace edgesim {

class Rng;

struct Enb {
    int id = 0;
    GpsPoint pos;
    int ec_id = 0;
    int ta_id = 0;
};

struct EdgeCloudSite {
    int id = 0;
    GpsPoint centroid;  // mean of member eNB positions
    std::vector<int> enb_ids;
};

enum class IotDeviceKind { Weather, AirPollution, Parking };

const std::string& iot_device_kind_name(IotDeviceKind k);

struct IotDevice {
    IotDeviceKind kind;
    GpsPoint pos;
};

struct Topology {
    std::vector<Enb> enbs;
    std::vector<EdgeCloudSite> ecs;
    std::vector<GpsPoint> drone_homes;
    std::vector<IotDevice> iot_devices;

    int ec_of_enb(int enb_id) const { return enbs.at(enb_id).ec_id; }
};

// eNBs on a uniform grid over the square of side 2*range_m; consecutive grid
// ids grouped enbs_per_ec at a time into ECs and enbs_per_ta at a time into
// TAs. Drone homes and IoT devices (weather, air pollution, parking, in that
// order) placed uniformly at random.
Topology build_topology(const SimConfig& cfg, Rng& rng);

// Nearest eNB by haversine distance; ties broken by lowest enb_id.
int nearest_enodeb(const Topology& topo, const GpsPoint& p);

}  // namespace edgesim
