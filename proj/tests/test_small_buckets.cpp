#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "recolor/small_buckets.hpp"
#include "recolor/stream.hpp"

using namespace recolor;

namespace {
    DynamicGraph isolated(int n, VertexId first = 1)
    {
        DynamicGraph g;
        for (VertexId v = first; v < first + n; ++v)
            g.insert_vertex(v, {});
        return g;
    }
} // namespace

TEST_CASE("bucket base arithmetic")
{
    CHECK(bucket_base(16, 2, 1) == 4); // d=2, n=16 -> s=4
    CHECK(bucket_base(27, 3, 1) == 3); // d=3, n=27 -> s=3
    CHECK(bucket_base(5, 1, 1) == 5);  // d=1, n=5 -> s=5
    CHECK(bucket_base(9, 2, 1) == 3);
    CHECK(bucket_base(0, 2, 1) == 1);
    CHECK(bucket_base(2, 2, 2) == 2); // floor respected
}

TEST_CASE("construction homes everything in the reset bucket")
{
    SmallBucketEngine eng(2, isolated(16), ColorerKind::Greedy, true);
    CHECK(eng.s() == 4);
    CHECK(eng.bucket_members(BucketAddress{}).size() == 16);
    CHECK(eng.metrics().recolorings_total == 0); // initial coloring is free
    for (VertexId v = 1; v <= 16; ++v)
        CHECK(eng.home_of(v).is_reset());
}

// Hand simulation of the insertion rules: d=2 over 4 initial vertices gives
// s=2; v5 lands in bucket (0,0); v6 fills level 0, so both promote to a
// level-1 bucket and are recolored. Update 2 therefore costs 3 recolorings.
TEST_CASE("promotion trace: d=2, n=4, insert v5 and v6")
{
    SmallBucketEngine eng(2, isolated(4), ColorerKind::Greedy, true);
    REQUIRE(eng.s() == 2);
    CHECK(eng.apply(UpdateOp::insert_vertex(5)) == 1);
    CHECK(eng.home_of(5) == BucketAddress{0, 0});
    CHECK(eng.apply(UpdateOp::insert_vertex(6)) == 3);
    CHECK(eng.home_of(5) == BucketAddress{1, 0});
    CHECK(eng.home_of(6) == BucketAddress{1, 0});
    CHECK(eng.metrics().resets == 0);
}

// d=1, two initial vertices: the second insertion fills level 0 = level d-1
// and resets; the whole run stays within (d+2) recolorings per insertion.
TEST_CASE("reset trace: d=1, n=2")
{
    SmallBucketEngine eng(1, isolated(2), ColorerKind::Greedy, true);
    REQUIRE(eng.s() == 2);
    eng.apply(UpdateOp::insert_vertex(3));
    eng.apply(UpdateOp::insert_vertex(4));
    CHECK(eng.metrics().resets == 1);
    for (VertexId v : eng.graph().vertices())
        CHECK(eng.home_of(v).is_reset());
    CHECK(eng.metrics().recolorings_total
          <= (eng.d() + 2) * eng.metrics().insertion_updates);
}

TEST_CASE("reset recolorings are bounded by the live vertex count")
{
    SmallBucketEngine eng(1, isolated(2), ColorerKind::Greedy, true);
    eng.apply(UpdateOp::insert_vertex(3));
    long long before = eng.metrics().recolorings_total;
    long long count = eng.apply(UpdateOp::insert_vertex(4)); // triggers the reset
    CHECK(count - 1 <= (long long)eng.graph().num_vertices());
    CHECK(eng.metrics().recolorings_total == before + count);
}

TEST_CASE("s recomputes from live n at reset")
{
    SmallBucketEngine eng(2, isolated(4), ColorerKind::Greedy, true);
    REQUIRE(eng.s() == 2);
    VertexId next = 100;
    while (eng.metrics().resets == 0)
        eng.apply(UpdateOp::insert_vertex(next++));
    CHECK(eng.s() == bucket_base((long long)eng.graph().num_vertices(), 2, 1));
}

TEST_CASE("different-bucket edge insertion costs nothing")
{
    SmallBucketEngine eng(2, isolated(4), ColorerKind::Greedy, true);
    eng.apply(UpdateOp::insert_vertex(5)); // level 0, distinct palette
    CHECK(eng.ledger().color_of(1) != eng.ledger().color_of(5));
    CHECK(eng.apply(UpdateOp::insert_edge(1, 5)) == 0);
    CHECK(eng.metrics().insertion_updates == 1); // only the vertex insert
}

TEST_CASE("same-color edge insertion reinserts one endpoint")
{
    SmallBucketEngine eng(2, isolated(4), ColorerKind::Greedy, true);
    // All four initial vertices share the reset palette's first color.
    REQUIRE(eng.ledger().color_of(1) == eng.ledger().color_of(2));
    long long count = eng.apply(UpdateOp::insert_edge(1, 2));
    CHECK(count >= 1);
    CHECK(eng.metrics().insertion_updates == 1);
    CHECK(check_proper(eng.graph(), eng.ledger()));
    // Same level, so the smaller id was reinserted: 1 left the reset bucket.
    CHECK(!eng.home_of(1).is_reset());
    CHECK(eng.home_of(2).is_reset());
}

TEST_CASE("deletions are free")
{
    SmallBucketEngine eng(2, isolated(4), ColorerKind::Greedy, true);
    eng.apply(UpdateOp::insert_vertex(5));
    CHECK(eng.apply(UpdateOp::delete_vertex(5)) == 0);
    CHECK(eng.apply(UpdateOp::delete_vertex(1)) == 0);
    CHECK(eng.graph().num_vertices() == 3);
}

TEST_CASE("amortized bound and space invariant over random streams")
{
    for (std::uint64_t seed : {11, 22, 33}) {
        RandomStreamConfig cfg;
        cfg.seed = seed;
        cfg.updates = 1500;
        cfg.max_vertices = 120;
        std::vector<UpdateOp> ops = random_stream(cfg);
        for (int d : {1, 2, 3}) {
            SmallBucketEngine eng(d, {}, ColorerKind::Greedy, true);
            for (const UpdateOp& op : ops)
                eng.apply(op); // checked mode validates invariants every step
            CHECK(eng.metrics().recolorings_total
                  <= (d + 2) * eng.metrics().insertion_updates);
        }
    }
}

TEST_CASE("color budget: distinct colors within (1 + d(s-1)) * C_bkt")
{
    RandomStreamConfig cfg;
    cfg.seed = 5;
    cfg.updates = 2000;
    cfg.max_vertices = 150;
    cfg.forest_only = true;
    std::vector<UpdateOp> ops = random_stream(cfg);
    for (int d : {1, 2, 3}) {
        SmallBucketEngine eng(d, {}, ColorerKind::BipartiteBFS, true);
        for (const UpdateOp& op : ops)
            eng.apply(op);
        long long s_max = eng.s_max();
        CHECK(eng.metrics().distinct_colors_max
              <= (1 + d * (s_max - 1)) * eng.c_bkt_max());
        CHECK(eng.c_bkt_max() <= 2); // bipartite colorer on forests
    }
}
