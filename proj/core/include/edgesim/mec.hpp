#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "edgesim/config.hpp"
#include "edgesim/rng.hpp"
#include "edgesim/topology.hpp"
#include "edgesim/trace.hpp"

namespace edgesim {

enum class MecEventKind {
    OffloadingRequest,
    OffloadingSuccess,
    OffloadingFailure,
    Migration,
    MigrationSuccess,
    MigrationFailure,
    MigrationAborted,
    Release,
};

inline constexpr std::size_t kMecEventKindCount = 8;

const std::string& mec_event_kind_name(MecEventKind k);

struct MecEvent {
    double t = 0.0;
    MecEventKind kind = MecEventKind::OffloadingRequest;
    int ue_id = -1;
    ServiceKind service = ServiceKind::Mime;
    int ec_id = -1;
    int target_ec = -1;  // migrations only
    std::string cause;
};

struct Vm {
    int id = 0;
    ResourceTriple capacity;
    ResourceTriple allocated;
    std::set<int> apps;  // dedicated + shared + in-flight reservations
};

struct EdgeCloudState {
    int ec_id = 0;
    std::vector<Vm> vms;
};

// FirstFit: lowest feasible vm id. BestFit: feasible VM minimizing the summed
// normalized leftover after placing; ties to the lowest id. Random: uniform
// over feasible VMs. Returns -1 when nothing fits.
int place(PlacementPolicy policy, const EdgeCloudState& ec,
          const ResourceTriple& req, Rng& rng);

struct MecRunSummary {
    std::array<long long, kMecEventKindCount> counts{};
    long long ongoing_migrations = 0;

    long long count(MecEventKind k) const {
        return counts[static_cast<std::size_t>(k)];
    }
    double offloading_success_rate() const {
        const long long req = count(MecEventKind::OffloadingRequest);
        return req > 0 ? static_cast<double>(count(MecEventKind::OffloadingSuccess)) / req
                       : 0.0;
    }
};

struct MecRunResult {
    std::vector<MecEvent> events;
    MecRunSummary summary;
};

// Shared pre-warmed instances: at most one per (EC, service); UEs attach up
// to share_cap at a time; an instance expires ttl_s after its last detachment.
struct SharedParams {
    int share_cap = 10;
    double ttl_s = 300.0;
};

class MecSim {
public:
    MecSim(const MecConfig& cfg, const Topology& topo, std::uint64_t seed,
           SharedParams shared = {});

    // trigger handlers; the run driver calls these in stream order
    void handle_movement(const TraceRecord& r);
    void handle_session_start(const ServiceSession& s, double t);
    void handle_session_end(const ServiceSession& s, double t);

    // drains internal timers (shared-instance expiries, migration finishes)
    // due before the next trigger at time t; expiries at exactly t run first,
    // migration finishes at exactly t run after the trigger batch
    void drain_until_trigger(double t);
    void drain_until_end(double t_end);

    // prewarm action: place one shared instance of `service` at `ec` unless a
    // live one already exists; placement failure is silent by contract
    void ensure_shared_instance(int ec, ServiceKind service, double t);

    // movement hook, invoked after per-UE state is updated (predictor lives here)
    std::function<void(MecSim&, const TraceRecord&)> movement_hook;

    const std::vector<MecEvent>& events() const { return events_; }
    std::vector<MecEvent> take_events() { return std::move(events_); }
    long long ongoing_migrations() const;

    struct UeRuntime {
        int enb = -1;
        int ec = -1;
        GpsPoint pos;
        int last_uplink_kbps = 0;    // last nonzero observed
        int last_downlink_kbps = 0;
        std::optional<int> zone;     // maintained by the movement hook
        enum class Mode { None, Dedicated, Shared, Cloud } mode = Mode::None;
        int app_id = -1;            // Dedicated mode
        long long attached_to = -1; // Shared mode: shared-instance key
        ServiceKind service = ServiceKind::Mime;
    };
    const UeRuntime& ue(int ue_id) const { return ues_.at(ue_id); }
    UeRuntime& ue_mutable(int ue_id) { return ues_.at(ue_id); }
    int serving_ec(int ue_id) const { return ues_.at(ue_id).ec; }

    const std::vector<EdgeCloudState>& edge_clouds() const { return ecs_; }
    const MecConfig& config() const { return cfg_; }

    // resource-conservation check; throws InvariantError on violation
    void check_invariants() const;

private:
    struct AppEntry {
        int app_id = -1;
        int ue_id = -1;
        ServiceKind service = ServiceKind::Mime;
        int ec = -1;
        int vm = -1;
        bool migrating = false;
        int dst_ec = -1;
        int dst_vm = -1;
        double finish_t = 0.0;
        std::uint64_t mig_gen = 0;  // invalidates stale finish timers
    };

    struct SharedInstance {
        int app_id = -1;
        ServiceKind service = ServiceKind::Mime;
        int ec = -1;
        int vm = -1;
        std::set<int> attached;
        double expires_at = 0.0;
        std::uint64_t gen = 0;
    };

    // internal timer: itype 0 = shared expiry (runs before triggers at t),
    // itype 1 = migration finish (runs after triggers at t)
    struct Timer {
        double t = 0.0;
        int itype = 0;
        long long key = 0;  // expiry: shared map key; finish: app_id
        std::uint64_t gen = 0;
        bool operator>(const Timer& o) const {
            if (t != o.t) return t > o.t;
            if (itype != o.itype) return itype > o.itype;
            return key > o.key;
        }
    };

    void emit(double t, MecEventKind kind, int ue, ServiceKind service, int ec,
              int target_ec = -1, std::string cause = {});
    void allocate(int ec, int vm, const ResourceTriple& req, int app_id);
    void release_alloc(int ec, int vm, const ResourceTriple& req, int app_id);
    void abort_migration(AppEntry& app, double t, const std::string& cause);
    void start_migration(AppEntry& app, int target_ec, double t);
    void finish_migration(int app_id, std::uint64_t gen);
    void expire_shared(long long key, std::uint64_t gen, double t);
    void detach_shared(int ue_id, double t);

    static long long shared_key(int ec, ServiceKind service) {
        return static_cast<long long>(ec) * static_cast<long long>(kServiceKindCount) +
               static_cast<long long>(service);
    }

    MecConfig cfg_;
    const Topology* topo_;
    SharedParams shared_params_;
    Rng rng_;
    std::vector<EdgeCloudState> ecs_;
    std::map<int, UeRuntime> ues_;
    std::map<int, AppEntry> apps_;
    std::map<long long, SharedInstance> shared_;
    std::priority_queue<Timer, std::vector<Timer>, std::greater<Timer>> timers_;
    std::vector<MecEvent> events_;
    int next_app_id_ = 0;
    bool validate_each_event_ = false;

public:
    void set_validate_each_event(bool v) { validate_each_event_ = v; }
};

// Replays a generated trace through the MEC model. Triggers are ordered by
// (time, kind, ue_id) with kinds movement < session-start < session-end <
// migration-finish. duration_s < 0 means "up to the last trigger".
MecRunResult run_mec(const MecConfig& cfg, const Topology& topo,
                     const std::vector<TraceRecord>& records,
                     const std::vector<ServiceSession>& sessions,
                     long long duration_s, std::uint64_t seed,
                     const std::function<void(MecSim&, const TraceRecord&)>&
                         movement_hook = nullptr,
                     SharedParams shared = {}, bool validate_invariants = false);

}  // namespace edgesim
