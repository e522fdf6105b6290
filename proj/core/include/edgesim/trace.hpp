#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgesim/service.hpp"

namespace edgesim {

// One observation row. zone is filled by the clustering stage ("" until then,
// "Z<k>" or "NOISE" afterwards).
struct TraceRecord {
    long long time_s = 0;
    int ue_id = 0;
    std::optional<ServiceKind> service;  // nullopt -> "NONE"
    double lat = 0.0;
    double lon = 0.0;
    int enodeb_id = 0;
    int datarate_uplink_kbps = 0;
    int datarate_downlink_kbps = 0;
    std::string zone;
};

struct ServiceSession {
    int ue_id = 0;
    ServiceKind service = ServiceKind::Mime;
    long long start_s = 0;
    long long end_s = 0;
    int uplink_kbps = 0;
    int downlink_kbps = 0;
};

}  // namespace edgesim
