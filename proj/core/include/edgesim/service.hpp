#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace edgesim {

enum class ServiceKind {
    Mime,
    VideoStreaming,
    SocialNetwork,
    DroneDelivery,
    DroneTransportation,
    IotWeather,
    IotAirPollution,
    IotParking,
};

inline constexpr std::size_t kServiceKindCount = 8;

inline constexpr std::array<ServiceKind, kServiceKindCount> kAllServiceKinds = {
    ServiceKind::Mime,          ServiceKind::VideoStreaming,
    ServiceKind::SocialNetwork, ServiceKind::DroneDelivery,
    ServiceKind::DroneTransportation, ServiceKind::IotWeather,
    ServiceKind::IotAirPollution, ServiceKind::IotParking,
};

// Wire names; "NONE" marks an idle trace row.
const std::string& service_name(ServiceKind k);
std::optional<ServiceKind> parse_service_name(const std::string& name);

inline bool is_drone(ServiceKind k) {
    return k == ServiceKind::DroneDelivery || k == ServiceKind::DroneTransportation;
}

inline bool is_iot(ServiceKind k) {
    return k == ServiceKind::IotWeather || k == ServiceKind::IotAirPollution ||
           k == ServiceKind::IotParking;
}

}  // namespace edgesim
