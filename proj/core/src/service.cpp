#include "edgesim/service.hpp"

namespace edgesim {

namespace {
const std::array<std::string, kServiceKindCount> kNames = {
    "MIME",          "VideoStreaming",      "SocialNetwork", "DroneDelivery",
    "DroneTransportation", "IotWeather", "IotAirPollution", "IotParking",
};
}

const std::string& service_name(ServiceKind k) {
    return kNames[static_cast<std::size_t>(k)];
}

std::optional<ServiceKind> parse_service_name(const std::string& name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<ServiceKind>(i);
    }
    return std::nullopt;
}

}  // namespace edgesim
