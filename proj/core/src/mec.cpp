#include "edgesim/mec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edgesim/errors.hpp"

namespace edgesim {

const std::string& mec_event_kind_name(MecEventKind k) {
    static const std::array<std::string, kMecEventKindCount> names = {
        "OffloadingRequest", "OffloadingSuccess", "OffloadingFailure",
        "Migration",         "MigrationSuccess",  "MigrationFailure",
        "MigrationAborted",  "Release",
    };
    return names[static_cast<std::size_t>(k)];
}

int place(PlacementPolicy policy, const EdgeCloudState& ec,
          const ResourceTriple& req, Rng& rng) {
    std::vector<int> feasible;
    for (const Vm& vm : ec.vms) {
        if (req.fits_within(vm.capacity - vm.allocated)) feasible.push_back(vm.id);
    }
    if (feasible.empty()) return -1;

    switch (policy) {
        case PlacementPolicy::FirstFit:
            return feasible.front();
        case PlacementPolicy::BestFit: {
            int best = feasible.front();
            double best_score = std::numeric_limits<double>::infinity();
            for (int id : feasible) {
                const Vm& vm = ec.vms[id];
                const ResourceTriple free = vm.capacity - vm.allocated;
                const double score = (free.ram_gb - req.ram_gb) / vm.capacity.ram_gb +
                                     (free.cores - req.cores) / vm.capacity.cores +
                                     (free.storage_gb - req.storage_gb) /
                                         vm.capacity.storage_gb;
                if (score < best_score - 1e-12) {
                    best_score = score;
                    best = id;
                }
            }
            return best;
        }
        case PlacementPolicy::Random:
            return feasible[rng.index(feasible.size())];
    }
    return -1;
}

MecSim::MecSim(const MecConfig& cfg, const Topology& topo, std::uint64_t seed,
               SharedParams shared)
    : cfg_(cfg),
      topo_(&topo),
      shared_params_(shared),
      rng_(mix_seed(seed, 0x6d6563)) {  // "mec"
    cfg_.validate();
    ecs_.resize(topo.ecs.size());
    for (std::size_t e = 0; e < topo.ecs.size(); ++e) {
        ecs_[e].ec_id = static_cast<int>(e);
        ecs_[e].vms.resize(cfg_.vms_per_ec);
        for (int v = 0; v < cfg_.vms_per_ec; ++v) {
            ecs_[e].vms[v].id = v;
            ecs_[e].vms[v].capacity = cfg_.vm_resources;
        }
    }
}

void MecSim::emit(double t, MecEventKind kind, int ue, ServiceKind service, int ec,
                  int target_ec, std::string cause) {
    MecEvent ev;
    ev.t = t;
    ev.kind = kind;
    ev.ue_id = ue;
    ev.service = service;
    ev.ec_id = ec;
    ev.target_ec = target_ec;
    ev.cause = std::move(cause);
    events_.push_back(std::move(ev));
    if (validate_each_event_) check_invariants();
}

void MecSim::allocate(int ec, int vm, const ResourceTriple& req, int app_id) {
    Vm& target = ecs_.at(ec).vms.at(vm);
    target.allocated = target.allocated + req;
    if (!target.allocated.fits_within(target.capacity)) {
        throw InvariantError("VM over-allocated at ec " + std::to_string(ec));
    }
    target.apps.insert(app_id);
}

void MecSim::release_alloc(int ec, int vm, const ResourceTriple& req, int app_id) {
    Vm& target = ecs_.at(ec).vms.at(vm);
    target.allocated = target.allocated - req;
    const double eps = -1e-9;
    if (target.allocated.ram_gb < eps || target.allocated.cores < eps ||
        target.allocated.storage_gb < eps) {
        throw InvariantError("VM allocation went negative at ec " + std::to_string(ec));
    }
    target.apps.erase(app_id);
}

void MecSim::start_migration(AppEntry& app, int target_ec, double t) {
    emit(t, MecEventKind::Migration, app.ue_id, app.service, app.ec, target_ec);
    const int vm = place(cfg_.policy, ecs_.at(target_ec), cfg_.app_resources, rng_);
    if (vm < 0) {
        emit(t, MecEventKind::MigrationFailure, app.ue_id, app.service, app.ec,
             target_ec, "no_resources");
        return;  // app stays at the source EC
    }
    allocate(target_ec, vm, cfg_.app_resources, app.app_id);
    app.migrating = true;
    app.dst_ec = target_ec;
    app.dst_vm = vm;
    app.finish_t = t + cfg_.migration_duration_s();
    ++app.mig_gen;
    timers_.push({app.finish_t, 1, app.app_id, app.mig_gen});
}

void MecSim::abort_migration(AppEntry& app, double t, const std::string& cause) {
    release_alloc(app.dst_ec, app.dst_vm, cfg_.app_resources, app.app_id);
    emit(t, MecEventKind::MigrationAborted, app.ue_id, app.service, app.ec,
         app.dst_ec, cause);
    app.migrating = false;
    app.dst_ec = -1;
    app.dst_vm = -1;
    ++app.mig_gen;  // invalidates the pending finish timer
}

void MecSim::finish_migration(int app_id, std::uint64_t gen) {
    const auto it = apps_.find(app_id);
    if (it == apps_.end() || !it->second.migrating || it->second.mig_gen != gen) {
        return;  // canceled
    }
    AppEntry& app = it->second;
    const int src_ec = app.ec;
    release_alloc(src_ec, app.vm, cfg_.app_resources, app.app_id);
    app.ec = app.dst_ec;
    app.vm = app.dst_vm;
    app.migrating = false;
    app.dst_ec = -1;
    app.dst_vm = -1;
    emit(app.finish_t, MecEventKind::MigrationSuccess, app.ue_id, app.service,
         src_ec, app.ec);
}

void MecSim::expire_shared(long long key, std::uint64_t gen, double t) {
    const auto it = shared_.find(key);
    if (it == shared_.end() || it->second.gen != gen || !it->second.attached.empty()) {
        return;  // stale timer
    }
    (void)t;
    release_alloc(it->second.ec, it->second.vm, cfg_.app_resources,
                  it->second.app_id);
    shared_.erase(it);
}

void MecSim::detach_shared(int ue_id, double t) {
    UeRuntime& u = ues_.at(ue_id);
    const auto it = shared_.find(u.attached_to);
    if (it == shared_.end()) throw InvariantError("detach from missing shared instance");
    it->second.attached.erase(ue_id);
    if (it->second.attached.empty()) {
        it->second.expires_at = t + shared_params_.ttl_s;
        ++it->second.gen;
        timers_.push({it->second.expires_at, 0, u.attached_to, it->second.gen});
    }
    u.attached_to = -1;
}

void MecSim::ensure_shared_instance(int ec, ServiceKind service, double t) {
    if (shared_params_.share_cap <= 0) return;
    const long long key = shared_key(ec, service);
    if (shared_.count(key) > 0) return;  // live instance already there
    const int vm = place(cfg_.policy, ecs_.at(ec), cfg_.app_resources, rng_);
    if (vm < 0) return;  // no user request happened, so no failure event

    SharedInstance inst;
    inst.app_id = next_app_id_++;
    inst.service = service;
    inst.ec = ec;
    inst.vm = vm;
    inst.expires_at = t + shared_params_.ttl_s;
    inst.gen = 1;
    allocate(ec, vm, cfg_.app_resources, inst.app_id);
    timers_.push({inst.expires_at, 0, key, inst.gen});
    shared_.emplace(key, std::move(inst));
    if (validate_each_event_) check_invariants();
}

void MecSim::handle_movement(const TraceRecord& r) {
    const double t = static_cast<double>(r.time_s);
    UeRuntime& u = ues_[r.ue_id];
    u.pos = {r.lat, r.lon};
    u.enb = r.enodeb_id;
    const int new_ec = topo_->ec_of_enb(r.enodeb_id);
    u.ec = new_ec;
    if (r.datarate_uplink_kbps > 0) u.last_uplink_kbps = r.datarate_uplink_kbps;
    if (r.datarate_downlink_kbps > 0) u.last_downlink_kbps = r.datarate_downlink_kbps;

    if (u.mode == UeRuntime::Mode::Dedicated) {
        AppEntry& app = apps_.at(u.app_id);
        if (app.migrating && new_ec != app.dst_ec) {
            abort_migration(app, t, "rerouted");
        }
        if (!app.migrating && new_ec != app.ec) {
            start_migration(app, new_ec, t);
        }
    } else if (u.mode == UeRuntime::Mode::Shared) {
        const SharedInstance& inst = shared_.at(u.attached_to);
        if (inst.ec != new_ec) {
            // attachments re-evaluate instead of migrating; no events either way
            detach_shared(r.ue_id, t);
            const long long key = shared_key(new_ec, u.service);
            const auto it = shared_.find(key);
            if (it != shared_.end() &&
                static_cast<int>(it->second.attached.size()) <
                    shared_params_.share_cap) {
                it->second.attached.insert(r.ue_id);
                u.attached_to = key;
            } else {
                u.mode = UeRuntime::Mode::Cloud;
            }
        }
    }

    if (movement_hook) movement_hook(*this, r);
}

void MecSim::handle_session_start(const ServiceSession& s, double t) {
    UeRuntime& u = ues_[s.ue_id];
    if (u.mode != UeRuntime::Mode::None) {
        throw ValidationError("session start for UE " + std::to_string(s.ue_id) +
                              " which already has an active session");
    }
    if (u.ec < 0) {
        throw ValidationError("session start for UE " + std::to_string(s.ue_id) +
                              " before any movement record");
    }
    u.service = s.service;
    emit(t, MecEventKind::OffloadingRequest, s.ue_id, s.service, u.ec);

    const long long key = shared_key(u.ec, s.service);
    const auto it = shared_.find(key);
    if (it != shared_.end() && static_cast<int>(it->second.attached.size()) <
                                   shared_params_.share_cap) {
        it->second.attached.insert(s.ue_id);
        u.mode = UeRuntime::Mode::Shared;
        u.attached_to = key;
        emit(t, MecEventKind::OffloadingSuccess, s.ue_id, s.service, u.ec, -1,
             "attached");
        return;
    }

    const int vm = place(cfg_.policy, ecs_.at(u.ec), cfg_.app_resources, rng_);
    if (vm < 0) {
        u.mode = UeRuntime::Mode::Cloud;  // served from the global cloud, no retry
        emit(t, MecEventKind::OffloadingFailure, s.ue_id, s.service, u.ec, -1,
             "no_resources");
        return;
    }
    AppEntry app;
    app.app_id = next_app_id_++;
    app.ue_id = s.ue_id;
    app.service = s.service;
    app.ec = u.ec;
    app.vm = vm;
    allocate(u.ec, vm, cfg_.app_resources, app.app_id);
    u.mode = UeRuntime::Mode::Dedicated;
    u.app_id = app.app_id;
    apps_.emplace(app.app_id, app);
    emit(t, MecEventKind::OffloadingSuccess, s.ue_id, s.service, u.ec, -1, "placed");
}

void MecSim::handle_session_end(const ServiceSession& s, double t) {
    UeRuntime& u = ues_[s.ue_id];
    switch (u.mode) {
        case UeRuntime::Mode::None:
            throw ValidationError("session end for UE " + std::to_string(s.ue_id) +
                                  " without an active session");
        case UeRuntime::Mode::Cloud:
            break;  // nothing was offloaded
        case UeRuntime::Mode::Shared:
            detach_shared(s.ue_id, t);  // instance persists until its TTL
            break;
        case UeRuntime::Mode::Dedicated: {
            AppEntry& app = apps_.at(u.app_id);
            if (app.migrating) abort_migration(app, t, "session_end");
            release_alloc(app.ec, app.vm, cfg_.app_resources, app.app_id);
            emit(t, MecEventKind::Release, s.ue_id, s.service, app.ec);
            apps_.erase(u.app_id);
            u.app_id = -1;
            break;
        }
    }
    u.mode = UeRuntime::Mode::None;
}

void MecSim::drain_until_trigger(double t) {
    while (!timers_.empty()) {
        const Timer top = timers_.top();
        const bool due = (top.itype == 0) ? (top.t <= t) : (top.t < t);
        if (!due) break;
        timers_.pop();
        if (top.itype == 0) {
            expire_shared(top.key, top.gen, top.t);
        } else {
            finish_migration(static_cast<int>(top.key), top.gen);
        }
    }
}

void MecSim::drain_until_end(double t_end) {
    while (!timers_.empty() && timers_.top().t <= t_end) {
        const Timer top = timers_.top();
        timers_.pop();
        if (top.itype == 0) {
            expire_shared(top.key, top.gen, top.t);
        } else {
            finish_migration(static_cast<int>(top.key), top.gen);
        }
    }
}

long long MecSim::ongoing_migrations() const {
    long long n = 0;
    for (const auto& [id, app] : apps_) {
        if (app.migrating) ++n;
    }
    return n;
}

void MecSim::check_invariants() const {
    // expected allocation per (ec, vm): dedicated apps, in-flight reservations,
    // shared instances
    std::map<std::pair<int, int>, std::pair<ResourceTriple, std::set<int>>> expected;
    auto add = [&](int ec, int vm, int app_id) {
        auto& slot = expected[{ec, vm}];
        slot.first = slot.first + cfg_.app_resources;
        slot.second.insert(app_id);
    };
    for (const auto& [id, app] : apps_) {
        add(app.ec, app.vm, id);
        if (app.migrating) add(app.dst_ec, app.dst_vm, id);
    }
    for (const auto& [key, inst] : shared_) add(inst.ec, inst.vm, inst.app_id);

    for (const EdgeCloudState& ec : ecs_) {
        for (const Vm& vm : ec.vms) {
            if (!vm.allocated.fits_within(vm.capacity)) {
                throw InvariantError("allocated exceeds capacity");
            }
            const auto it = expected.find({ec.ec_id, vm.id});
            const ResourceTriple want =
                it == expected.end() ? ResourceTriple{} : it->second.first;
            const ResourceTriple diff = vm.allocated - want;
            if (std::abs(diff.ram_gb) > 1e-6 || std::abs(diff.cores) > 1e-6 ||
                std::abs(diff.storage_gb) > 1e-6) {
                throw InvariantError("VM allocation does not match hosted apps");
            }
            const std::set<int> want_apps =
                it == expected.end() ? std::set<int>{} : it->second.second;
            if (vm.apps != want_apps) {
                throw InvariantError("VM app set does not match ledger");
            }
        }
    }
}

MecRunResult run_mec(const MecConfig& cfg, const Topology& topo,
                     const std::vector<TraceRecord>& records,
                     const std::vector<ServiceSession>& sessions,
                     long long duration_s, std::uint64_t seed,
                     const std::function<void(MecSim&, const TraceRecord&)>&
                         movement_hook,
                     SharedParams shared, bool validate_invariants) {
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].time_s < records[i - 1].time_s) {
            throw ValidationError("trace records out of time order at row " +
                                  std::to_string(i + 1));
        }
    }
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        if (sessions[i].end_s <= sessions[i].start_s) {
            throw ValidationError("session " + std::to_string(i) +
                                  " has end <= start");
        }
        if (i > 0 && sessions[i].start_s < sessions[i - 1].start_s) {
            throw ValidationError("sessions out of start-time order at index " +
                                  std::to_string(i));
        }
    }

    // kinds: 0 movement, 1 session start, 2 session end
    struct Trigger {
        long long t;
        int kind;
        int ue;
        std::size_t idx;
    };
    std::vector<Trigger> triggers;
    triggers.reserve(records.size() + 2 * sessions.size());
    long long t_max = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        triggers.push_back({records[i].time_s, 0, records[i].ue_id, i});
        t_max = std::max(t_max, records[i].time_s);
    }
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        triggers.push_back({sessions[i].start_s, 1, sessions[i].ue_id, i});
        triggers.push_back({sessions[i].end_s, 2, sessions[i].ue_id, i});
        t_max = std::max(t_max, sessions[i].end_s);
    }
    const long long t_end = duration_s >= 0 ? duration_s : t_max;
    if (t_max > t_end) {
        throw ValidationError("stream contains triggers beyond sim duration");
    }
    std::stable_sort(triggers.begin(), triggers.end(),
                     [](const Trigger& a, const Trigger& b) {
                         if (a.t != b.t) return a.t < b.t;
                         if (a.kind != b.kind) return a.kind < b.kind;
                         return a.ue < b.ue;
                     });

    MecSim sim(cfg, topo, seed, shared);
    sim.movement_hook = movement_hook;
    sim.set_validate_each_event(validate_invariants);

    for (const Trigger& tr : triggers) {
        sim.drain_until_trigger(static_cast<double>(tr.t));
        switch (tr.kind) {
            case 0: sim.handle_movement(records[tr.idx]); break;
            case 1: sim.handle_session_start(sessions[tr.idx],
                                             static_cast<double>(tr.t)); break;
            case 2: sim.handle_session_end(sessions[tr.idx],
                                           static_cast<double>(tr.t)); break;
        }
    }
    sim.drain_until_end(static_cast<double>(t_end));
    if (validate_invariants) sim.check_invariants();

    MecRunResult result;
    result.summary.ongoing_migrations = sim.ongoing_migrations();
    result.events = sim.take_events();
    for (const MecEvent& ev : result.events) {
        result.summary.counts[static_cast<std::size_t>(ev.kind)] += 1;
    }
    return result;
}

}  // namespace edgesim
