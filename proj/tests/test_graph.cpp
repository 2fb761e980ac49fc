#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "recolor/graph.hpp"

using namespace recolor;

TEST_CASE("insert vertex into empty graph")
{
    DynamicGraph g;
    g.apply(UpdateOp::insert_vertex(1));
    CHECK(g.has_vertex(1));
    CHECK(g.num_vertices() == 1);
    CHECK(g.num_edges() == 0);
}

TEST_CASE("vertex deletion removes incident edges")
{
    DynamicGraph g;
    g.apply(UpdateOp::insert_vertex(1));
    g.apply(UpdateOp::insert_vertex(2));
    g.apply(UpdateOp::insert_edge(1, 2));
    g.apply(UpdateOp::delete_vertex(1));
    CHECK(!g.has_vertex(1));
    CHECK(g.has_vertex(2));
    CHECK(g.num_edges() == 0);
    CHECK(g.neighbors(2).empty());
}

TEST_CASE("self loops are rejected")
{
    DynamicGraph g;
    g.apply(UpdateOp::insert_vertex(1));
    CHECK_THROWS_AS(g.apply(UpdateOp::insert_edge(1, 1)), Error);
    try {
        g.apply(UpdateOp::insert_edge(1, 1));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SelfLoop);
    }
}

TEST_CASE("validation errors leave the graph untouched")
{
    DynamicGraph g;
    g.apply(UpdateOp::insert_vertex(1));
    g.apply(UpdateOp::insert_vertex(2));
    g.apply(UpdateOp::insert_edge(1, 2));

    CHECK_THROWS_AS(g.apply(UpdateOp::insert_vertex(2)), Error);
    CHECK_THROWS_AS(g.apply(UpdateOp::insert_edge(1, 2)), Error);
    CHECK_THROWS_AS(g.apply(UpdateOp::insert_edge(1, 7)), Error);
    CHECK_THROWS_AS(g.apply(UpdateOp::delete_edge(1, 7)), Error);
    CHECK_THROWS_AS(g.apply(UpdateOp::delete_vertex(9)), Error);
    // Insert-with-neighbors rejected atomically: bad neighbor, no vertex added.
    CHECK_THROWS_AS(g.apply(UpdateOp::insert_vertex(3, {1, 9})), Error);
    CHECK(!g.has_vertex(3));

    CHECK(g.num_vertices() == 2);
    CHECK(g.num_edges() == 1);
    g.check_consistency();
}

TEST_CASE("check_proper on small examples")
{
    DynamicGraph g;
    ColoringLedger led;
    Metrics met;
    SUBCASE("path 1-2-3 colored (a,b,a)")
    {
        g.insert_vertex(1, {});
        g.insert_vertex(2, {1});
        g.insert_vertex(3, {2});
        led.record(met, 0, 1, kNoColor, 10);
        led.record(met, 0, 2, kNoColor, 11);
        led.record(met, 0, 3, kNoColor, 10);
        CHECK(check_proper(g, led));
    }
    SUBCASE("monochromatic edge")
    {
        g.insert_vertex(1, {});
        g.insert_vertex(2, {1});
        led.record(met, 0, 1, kNoColor, 5);
        led.record(met, 0, 2, kNoColor, 5);
        CHECK(!check_proper(g, led));
    }
    SUBCASE("empty graph is vacuously proper")
    {
        CHECK(check_proper(g, led));
    }
    SUBCASE("uncolored live vertex")
    {
        g.insert_vertex(1, {});
        CHECK_THROWS_AS(check_proper(g, led), Error);
    }
}

TEST_CASE("ledger counting rules")
{
    ColoringLedger led;
    Metrics met;
    met.recolorings_per_update.push_back(0);

    led.record(met, 1, 3, 10, 11); // old != new: counted
    CHECK(met.recolorings_total == 1);
    led.record(met, 1, 3, 11, 11); // old == new: recorded, free
    CHECK(met.recolorings_total == 1);
    CHECK(led.changes().size() == 2);
    led.record(met, 1, 9, kNoColor, 12); // fresh vertex: counted
    CHECK(met.recolorings_total == 2);
    CHECK(met.recolorings_per_update.back() == 2);
}

TEST_CASE("ledger replay reproduces the live coloring")
{
    DynamicGraph g;
    ColoringLedger led;
    Metrics met;
    std::mt19937_64 rng(7);
    std::vector<VertexId> live;
    for (long long step = 1; step <= 400; ++step) {
        met.recolorings_per_update.push_back(0);
        int action = (int)(rng() % 3);
        if (action == 0 || live.size() < 3) {
            VertexId v = (VertexId)(rng() % 64);
            if (g.has_vertex(v))
                continue;
            g.insert_vertex(v, {});
            live.push_back(v);
            led.record(met, step, v, kNoColor, (Color)(rng() % 5));
        } else if (action == 1) {
            VertexId v = live[rng() % live.size()];
            led.record(met, step, v, led.color_of(v), (Color)(rng() % 5));
        } else {
            std::size_t i = rng() % live.size();
            VertexId v = live[i];
            g.delete_vertex(v);
            led.erase_color(v);
            live.erase(live.begin() + i);
        }
    }
    auto replayed = led.replay();
    long long live_colored = 0;
    for (VertexId v : g.vertices()) {
        REQUIRE(led.has_color(v));
        CHECK(replayed.at(v) == led.color_of(v));
        live_colored++;
    }
    CHECK(live_colored == (long long)g.num_vertices());
    CHECK(led.distinct_colors_now() <= 5);
}

TEST_CASE("symmetry and simplicity hold under random raw updates")
{
    DynamicGraph g;
    std::mt19937_64 rng(42);
    std::vector<VertexId> live;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int step = 0; step < 2000; ++step) {
        int roll = (int)(rng() % 100);
        try {
            if (roll < 30) {
                VertexId v = (VertexId)(rng() % 200);
                g.insert_vertex(v, {});
                live.push_back(v);
            } else if (roll < 40 && !live.empty()) {
                VertexId v = live[rng() % live.size()];
                g.delete_vertex(v);
                live.erase(std::find(live.begin(), live.end(), v));
                edges.erase(std::remove_if(edges.begin(), edges.end(),
                                           [v](auto& e) {
                                               return e.first == v || e.second == v;
                                           }),
                            edges.end());
            } else if (roll < 80 && live.size() >= 2) {
                VertexId u = live[rng() % live.size()];
                VertexId v = live[rng() % live.size()];
                g.insert_edge(u, v);
                edges.push_back({u, v});
            } else if (!edges.empty()) {
                auto [u, v] = edges[rng() % edges.size()];
                g.delete_edge(u, v);
                edges.erase(std::find(edges.begin(), edges.end(), std::make_pair(u, v)));
            }
        } catch (const Error&) {
            // invalid random op; rejection must keep the graph consistent
        }
        if (step % 100 == 0)
            g.check_consistency();
    }
    g.check_consistency();
}
