#include <doctest.h>

#include "edgesim/rng.hpp"
#include "edgesim/topology.hpp"

using namespace edgesim;

TEST_CASE("default parameters produce the expected grouping") {
    SimConfig cfg;  // 10 ECs x 3 eNBs, 6 eNBs per TA
    Rng rng(1);
    const Topology topo = build_topology(cfg, rng);

    CHECK(topo.enbs.size() == 30);
    CHECK(topo.ecs.size() == 10);
    for (const EdgeCloudSite& ec : topo.ecs) CHECK(ec.enb_ids.size() == 3);

    int max_ta = 0;
    for (const Enb& e : topo.enbs) max_ta = std::max(max_ta, e.ta_id);
    CHECK(max_ta == 4);  // 5 tracking areas of 6 eNBs

    // eNB -> EC membership is exclusive and consecutive
    for (const Enb& e : topo.enbs) {
        CHECK(e.ec_id == e.id / 3);
        CHECK(e.ta_id == e.id / 6);
    }
    CHECK(topo.drone_homes.size() == 5);
    CHECK(topo.iot_devices.size() == 30);
}

TEST_CASE("single eNB lands at the area center") {
    SimConfig cfg;
    cfg.num_ecs = 1;
    cfg.enbs_per_ec = 1;
    cfg.enbs_per_ta = 1;
    Rng rng(1);
    const Topology topo = build_topology(cfg, rng);
    REQUIRE(topo.enbs.size() == 1);
    CHECK(topo.enbs[0].pos.lat == doctest::Approx(cfg.origin.lat).epsilon(1e-12));
    CHECK(topo.enbs[0].pos.lon == doctest::Approx(cfg.origin.lon).epsilon(1e-12));
}

TEST_CASE("same seed gives an identical topology") {
    SimConfig cfg;
    Rng a(99), b(99);
    const Topology ta = build_topology(cfg, a);
    const Topology tb = build_topology(cfg, b);
    REQUIRE(ta.drone_homes.size() == tb.drone_homes.size());
    for (std::size_t i = 0; i < ta.drone_homes.size(); ++i) {
        CHECK(ta.drone_homes[i] == tb.drone_homes[i]);
    }
    REQUIRE(ta.iot_devices.size() == tb.iot_devices.size());
    for (std::size_t i = 0; i < ta.iot_devices.size(); ++i) {
        CHECK(ta.iot_devices[i].pos == tb.iot_devices[i].pos);
    }
}

TEST_CASE("nearest_enodeb agrees with a linear-scan oracle") {
    SimConfig cfg;
    Rng rng(5);
    const Topology topo = build_topology(cfg, rng);
    const SquareArea area(cfg.origin, cfg.range_m);

    Rng prng(17);
    for (int i = 0; i < 300; ++i) {
        const GpsPoint p = area.random_point(prng);
        int best = 0;
        double best_km = haversine_km(topo.enbs[0].pos, p);
        for (const Enb& e : topo.enbs) {
            const double d = haversine_km(e.pos, p);
            if (d < best_km) {
                best_km = d;
                best = e.id;
            }
        }
        CHECK(nearest_enodeb(topo, p) == best);
    }
}

TEST_CASE("nearest_enodeb: exact location and equidistant tie") {
    SimConfig cfg;
    Rng rng(5);
    const Topology topo = build_topology(cfg, rng);
    CHECK(nearest_enodeb(topo, topo.enbs[7].pos) == 7);

    // symmetric midpoint between eNB 3 and eNB 4 (same grid row) ties to 3
    const GpsPoint mid{(topo.enbs[3].pos.lat + topo.enbs[4].pos.lat) / 2.0,
                       (topo.enbs[3].pos.lon + topo.enbs[4].pos.lon) / 2.0};
    const int got = nearest_enodeb(topo, mid);
    const double d3 = haversine_km(topo.enbs[3].pos, mid);
    const double d4 = haversine_km(topo.enbs[4].pos, mid);
    if (d3 == d4) CHECK(got == 3);  // exact tie -> lowest id
    else CHECK(got == (d3 < d4 ? 3 : 4));
}
