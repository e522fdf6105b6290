#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgesim/geo.hpp"
#include "edgesim/trace.hpp"

namespace edgesim {

struct DbscanParams {
    double eps_km = 0.5;
    int min_pts = 25;

    void validate() const;  // throws ValidationError
};

inline constexpr int kNoiseLabel = -1;

struct DenseZone {
    int zone_id = 0;
    GpsPoint centroid;  // arithmetic mean of member lat/lon
    int member_count = 0;
    double radius_km = 0.0;  // max member distance to centroid
};

struct ClusteringResult {
    std::vector<int> labels;  // cluster index >= 0 or kNoiseLabel
    std::vector<bool> core_flags;
    std::vector<DenseZone> zones;
};

// All indices j (including i) with haversine_km(points[i], points[j]) <= eps_km.
std::vector<std::size_t> region_query(std::span<const GpsPoint> points,
                                      std::size_t i, double eps_km);

// DBSCAN over great-circle distance. Core points have >= min_pts neighbors
// within eps (self included); clusters are maximal density-connected sets,
// numbered by their lowest core index; border points attach to the cluster of
// their lowest-index core neighbor, which makes the labeling a pure function
// of the indexed point set.
ClusteringResult dbscan(std::span<const GpsPoint> points, const DbscanParams& params);

// Zones plus the eps they were mined with; assign_zone needs both.
struct ZoneModel {
    double eps_km = 0.0;
    std::vector<DenseZone> zones;
};

// Zone whose centroid is nearest and within radius_km + eps_km; nearest-
// centroid ties broken by lowest zone_id.
std::optional<int> assign_zone(const ZoneModel& model, const GpsPoint& p);

std::string zone_label(std::optional<int> zone_id);  // "Z<k>" or "NOISE"

// Fills the zone column of every record; all other fields untouched.
void label_trace(std::vector<TraceRecord>& records, const ZoneModel& model);

// Latest known position of each UE at or before snapshot_s (all times when
// snapshot_s < 0), ordered by ue_id; the clustering input.
std::vector<GpsPoint> snapshot_positions(const std::vector<TraceRecord>& records,
                                         long long snapshot_s);

}  // namespace edgesim
