#include "edgesim/dbscan.hpp"

#include <algorithm>
#include <map>

#include "edgesim/errors.hpp"

namespace edgesim {

void DbscanParams::validate() const {
    if (!(eps_km > 0.0)) throw ValidationError("eps_km must be > 0");
    if (min_pts < 1) throw ValidationError("min_pts must be >= 1");
}

std::vector<std::size_t> region_query(std::span<const GpsPoint> points,
                                      std::size_t i, double eps_km) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (haversine_km(points[i], points[j]) <= eps_km) out.push_back(j);
    }
    return out;
}

ClusteringResult dbscan(std::span<const GpsPoint> points, const DbscanParams& params) {
    params.validate();
    const std::size_t n = points.size();

    ClusteringResult res;
    res.labels.assign(n, kNoiseLabel);
    res.core_flags.assign(n, false);
    if (n == 0) return res;

    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i) {
        neighbors[i] = region_query(points, i, params.eps_km);
        res.core_flags[i] = neighbors[i].size() >= static_cast<std::size_t>(params.min_pts);
    }

    // clusters = connected components of core points under the eps relation,
    // discovered in ascending index order so ids are canonical
    int next_cluster = 0;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        if (!res.core_flags[i] || res.labels[i] != kNoiseLabel) continue;
        const int cluster = next_cluster++;
        res.labels[i] = cluster;
        stack.assign(1, i);
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            for (std::size_t q : neighbors[p]) {
                if (!res.core_flags[q] || res.labels[q] != kNoiseLabel) continue;
                res.labels[q] = cluster;
                stack.push_back(q);
            }
        }
    }

    // border points join the cluster of their lowest-index core neighbor
    for (std::size_t i = 0; i < n; ++i) {
        if (res.core_flags[i]) continue;
        for (std::size_t q : neighbors[i]) {
            if (res.core_flags[q]) {
                res.labels[i] = res.labels[q];
                break;  // neighbors are in ascending index order
            }
        }
    }

    res.zones.resize(static_cast<std::size_t>(next_cluster));
    std::vector<double> lat_sum(next_cluster, 0.0), lon_sum(next_cluster, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const int c = res.labels[i];
        if (c == kNoiseLabel) continue;
        res.zones[c].member_count++;
        lat_sum[c] += points[i].lat;
        lon_sum[c] += points[i].lon;
    }
    for (int c = 0; c < next_cluster; ++c) {
        DenseZone& z = res.zones[c];
        z.zone_id = c;
        z.centroid = {lat_sum[c] / z.member_count, lon_sum[c] / z.member_count};
    }
    for (std::size_t i = 0; i < n; ++i) {
        const int c = res.labels[i];
        if (c == kNoiseLabel) continue;
        res.zones[c].radius_km =
            std::max(res.zones[c].radius_km, haversine_km(res.zones[c].centroid, points[i]));
    }
    return res;
}

std::optional<int> assign_zone(const ZoneModel& model, const GpsPoint& p) {
    const DenseZone* best = nullptr;
    double best_km = 0.0;
    for (const DenseZone& z : model.zones) {
        const double d = haversine_km(z.centroid, p);
        if (!best || d < best_km || (d == best_km && z.zone_id < best->zone_id)) {
            best = &z;
            best_km = d;
        }
    }
    if (best && best_km <= best->radius_km + model.eps_km) return best->zone_id;
    return std::nullopt;
}

std::string zone_label(std::optional<int> zone_id) {
    return zone_id ? "Z" + std::to_string(*zone_id) : "NOISE";
}

void label_trace(std::vector<TraceRecord>& records, const ZoneModel& model) {
    for (TraceRecord& r : records) {
        r.zone = zone_label(assign_zone(model, {r.lat, r.lon}));
    }
}

std::vector<GpsPoint> snapshot_positions(const std::vector<TraceRecord>& records,
                                         long long snapshot_s) {
    std::map<int, GpsPoint> latest;  // records are time-ordered; later rows win
    for (const TraceRecord& r : records) {
        if (snapshot_s >= 0 && r.time_s > snapshot_s) continue;
        latest[r.ue_id] = {r.lat, r.lon};
    }
    std::vector<GpsPoint> out;
    out.reserve(latest.size());
    for (const auto& [ue, pos] : latest) out.push_back(pos);
    return out;
}

}  // namespace edgesim
