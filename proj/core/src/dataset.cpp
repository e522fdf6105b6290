#include "edgesim/dataset.hpp"

#include <algorithm>
#include <limits>

#include "edgesim/errors.hpp"

namespace edgesim {

int Schema::code_of(std::size_t f, const std::string& value) const {
    const auto& dict = cat_values[f];
    const auto it = std::find(dict.begin(), dict.end(), value);
    return it == dict.end() ? -1 : static_cast<int>(it - dict.begin());
}

int Schema::intern(std::size_t f, const std::string& value) {
    const int code = code_of(f, value);
    if (code >= 0) return code;
    cat_values[f].push_back(value);
    return static_cast<int>(cat_values[f].size()) - 1;
}

int Dataset::intern_label(const std::string& name) {
    const auto it = std::find(label_names.begin(), label_names.end(), name);
    if (it != label_names.end()) return static_cast<int>(it - label_names.begin());
    label_names.push_back(name);
    return static_cast<int>(label_names.size()) - 1;
}

Schema Dataset::schema_with_stats(const std::vector<std::size_t>& row_idx) const {
    Schema s = schema;
    const std::size_t nf = s.size();
    s.num_min.assign(nf, 0.0);
    s.num_max.assign(nf, 0.0);
    for (std::size_t f = 0; f < nf; ++f) {
        if (!s.is_numeric(f)) continue;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t r : row_idx) {
            lo = std::min(lo, rows[r][f].num);
            hi = std::max(hi, rows[r][f].num);
        }
        if (row_idx.empty()) lo = hi = 0.0;
        s.num_min[f] = lo;
        s.num_max[f] = hi;
    }
    return s;
}

Dataset encode(const std::vector<TraceRecord>& records, const EncodeOptions& opts) {
    Dataset ds;
    ds.schema.features = {
        {"time_of_day_s", FeatureKind::Numeric},
        {"latitude", FeatureKind::Numeric},
        {"longitude", FeatureKind::Numeric},
        {"enodeb_id", FeatureKind::Categorical},
        {"datarate_uplink", FeatureKind::Numeric},
        {"datarate_downlink", FeatureKind::Numeric},
        {"zone", FeatureKind::Categorical},
    };
    if (opts.include_ue_id) {
        ds.schema.features.push_back({"ue_id", FeatureKind::Categorical});
    }
    const std::size_t nf = ds.schema.size();
    ds.schema.cat_values.assign(nf, {});

    for (const TraceRecord& r : records) {
        if (!r.service) continue;  // idle rows carry no class
        std::vector<FeatureValue> row(nf);
        row[kFeatureTimeOfDay].num = static_cast<double>(r.time_s % 86400);
        row[kFeatureLatitude].num = r.lat;
        row[kFeatureLongitude].num = r.lon;
        row[kFeatureEnodebId].cat =
            ds.schema.intern(kFeatureEnodebId, std::to_string(r.enodeb_id));
        row[kFeatureUplink].num = static_cast<double>(r.datarate_uplink_kbps);
        row[kFeatureDownlink].num = static_cast<double>(r.datarate_downlink_kbps);
        row[kFeatureZone].cat = ds.schema.intern(kFeatureZone, r.zone);
        if (opts.include_ue_id) {
            row[nf - 1].cat = ds.schema.intern(nf - 1, std::to_string(r.ue_id));
        }
        ds.rows.push_back(std::move(row));
        ds.labels.push_back(ds.intern_label(service_name(*r.service)));
    }
    if (ds.rows.empty()) {
        throw ValidationError("encode: no labeled rows (every record is idle)");
    }

    std::vector<std::size_t> all(ds.rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    ds.schema = ds.schema_with_stats(all);
    return ds;
}

std::vector<FeatureValue> encode_features(const Schema& schema, long long time_s,
                                          double lat, double lon, int enodeb_id,
                                          double uplink_kbps, double downlink_kbps,
                                          const std::string& zone, int ue_id) {
    std::vector<FeatureValue> row(schema.size());
    row[kFeatureTimeOfDay].num = static_cast<double>(time_s % 86400);
    row[kFeatureLatitude].num = lat;
    row[kFeatureLongitude].num = lon;
    row[kFeatureEnodebId].cat =
        schema.code_of(kFeatureEnodebId, std::to_string(enodeb_id));
    row[kFeatureUplink].num = uplink_kbps;
    row[kFeatureDownlink].num = downlink_kbps;
    row[kFeatureZone].cat = schema.code_of(kFeatureZone, zone);
    if (schema.size() > kFeatureZone + 1) {
        row[kFeatureZone + 1].cat =
            schema.code_of(kFeatureZone + 1, std::to_string(ue_id));
    }
    return row;
}

}  // namespace edgesim
