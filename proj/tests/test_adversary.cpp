#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "recolor/adversary.hpp"
#include "recolor/stream.hpp"

using namespace recolor;

// Independent oracle for the three-star bound: enumerate every proper
// exact-2-coloring of three stars of size k, link the two roots that share
// a color, and take the cheapest proper 2-coloring of the merged component.
// With two colors each component admits exactly two proper colorings, so
// the minimum repair can be enumerated directly.
namespace {
    // Minimum over all proper exact-2-colorings of the cheapest repair after
    // linking two equally-colored roots. Leaves are forced opposite their
    // root, so a coloring is just the root-color vector (8 cases).
    long long c2_repair_floor(int star_size)
    {
        long long floor = -1;
        for (int mask = 0; mask < 8; ++mask) {
            int roots[3] = {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
            int i = -1, j = -1;
            for (int a = 0; a < 3 && i < 0; ++a)
                for (int b = a + 1; b < 3; ++b)
                    if (roots[a] == roots[b]) {
                        i = a;
                        j = b;
                        break;
                    }
            // The merged component has exactly two proper 2-colorings: one
            // flips star i wholesale, the other flips star j.
            long long best = -1;
            for (int ri = 0; ri < 2; ++ri) {
                int rj = 1 - ri;
                long long cost = 0;
                if (ri != roots[i])
                    cost += star_size;
                if (rj != roots[j])
                    cost += star_size;
                if (best < 0 || cost < best)
                    best = cost;
            }
            if (floor < 0 || best < floor)
                floor = best;
        }
        return floor;
    }
} // namespace

TEST_CASE("c2 oracle: every proper 2-coloring loses at least n/3 per link")
{
    // Exhaustive over all 8 colorings of three stars: the cheapest repair
    // is always one whole star.
    CHECK(c2_repair_floor(3) == 3);
    CHECK(c2_repair_floor(5) == 5);
}

TEST_CASE("c2 arena forces n/3 recolorings per link against exact repair")
{
    StarsC2Generator gen(9);
    auto alg = make_baseline(BaselineKind::ExactRepair, 2);
    ArenaResult result = arena_run(gen, *alg, 100);
    CHECK(result.updates_applied == 100);
    CHECK(result.ledger.links == 50);
    CHECK(result.ledger.observed_recolorings >= 50 * 3);
    CHECK(result.ledger.charged_recolorings == 50 * 3);
    CHECK(result.ledger.wasted_insertions <= result.ledger.insertions);
}

TEST_CASE("c2 arena against the bfsflip baseline")
{
    StarsC2Generator gen(9);
    auto alg = make_baseline(BaselineKind::BfsFlip, 2);
    ArenaResult result = arena_run(gen, *alg, 60);
    CHECK(result.ledger.observed_recolorings >= 30 * 3);
}

TEST_CASE("c2 structure is restored after each link-cut pair")
{
    StarsC2Generator gen(9);
    auto alg = make_baseline(BaselineKind::ExactRepair, 2);
    ArenaResult result = arena_run(gen, *alg, 10);
    // ops alternate ae/re on the same pair
    for (std::size_t i = 0; i < result.emitted.size(); i += 2) {
        CHECK(result.emitted[i].kind == OpKind::InsertEdge);
        CHECK(result.emitted[i + 1].kind == OpKind::DeleteEdge);
        CHECK(result.emitted[i].a == result.emitted[i + 1].a);
        CHECK(result.emitted[i].b == result.emitted[i + 1].b);
    }
}

TEST_CASE("c2 rejects malformed sizes")
{
    CHECK_THROWS_AS(StarsC2Generator(8), Error);
    CHECK_THROWS_AS(StarsC2Generator(6), Error);
}

TEST_CASE("c3 arena: one cycle yields the per-cycle floor")
{
    C3Generator gen(19683); // n^(1/3) = 27
    auto alg = make_baseline(BaselineKind::ExactRepair, 3);
    // one full cycle: 6 construction links + 4 matching links + slack
    long long updates = 0;
    alg->init(gen.initial_graph());
    while (gen.cycles_completed() == 0 && updates < 40) {
        auto op = gen.next(*alg);
        REQUIRE(op.has_value());
        auto response = alg->apply(*op);
        long long counted = 0;
        for (const auto& r : response)
            if (r.old_color != r.new_color)
                ++counted;
        if (op->kind == OpKind::InsertEdge || op->kind == OpKind::InsertVertex)
            gen.ledger().observed_recolorings += counted;
        gen.ledger().insertions += op->kind == OpKind::InsertEdge;
        gen.observe(*op, response, *alg);
        ++updates;
    }
    const ChargeLedger& led = gen.ledger();
    bool invalidated = led.invalidations > 0;
    bool linked_enough = led.links >= 27 / 6;
    CHECK((invalidated || linked_enough));
    if (invalidated)
        CHECK(led.observed_recolorings >= (729 - 1) / 2);
    else
        CHECK(led.observed_recolorings >= (27 / 6) * (27 / 9));
    CHECK(updates <= 27);
}

TEST_CASE("c3 arena runs multiple cycles under the generic driver")
{
    C3Generator gen(19683);
    auto alg = make_baseline(BaselineKind::GreedyRepair, 3);
    ArenaResult result = arena_run(gen, *alg, 80);
    CHECK(result.updates_applied == 80);
    CHECK(gen.cycles_completed() >= 1);
    CHECK(result.ledger.observed_recolorings > 0);
    // replay dump round-trips through the stream format
    std::vector<UpdateOp> full = result.full_stream();
    std::vector<UpdateOp> again = parse_stream(format_stream(full));
    CHECK(again.size() == full.size());
}

TEST_CASE("c3 rejects non-cubes and small cubes")
{
    CHECK_THROWS_AS(C3Generator(1000), Error); // 10^3 but t = 10 < 27
    CHECK_THROWS_AS(C3Generator(19682), Error);
}

TEST_CASE("general parameters: closed forms for c=3 and c=4")
{
    GeneralParams p3 = GeneralParams::compute(3, 27);
    CHECK(p3.t == 3);
    CHECK(p3.alpha == 1152);
    CHECK(p3.config_size[0] == 1152 * 27);
    CHECK(p3.config_size[1] == 288);
    CHECK(p3.config_size[2] == 8); // = 2(c+1): the c-link needs this many
    CHECK(p3.merge_count[1] == 18);
    CHECK(p3.merge_count[2] == 6);
    CHECK(p3.assign_floor[1] == 6);
    CHECK(p3.assign_floor[2] == 2);

    GeneralParams p4 = GeneralParams::compute(4, 64);
    CHECK(p4.t == 2);
    CHECK(p4.alpha == 40960);
    CHECK(p4.config_size[0] == 40960LL * 64);
    CHECK(p4.config_size[1] == 20480);
    CHECK(p4.config_size[2] == 320);
    CHECK(p4.config_size[3] == 10);
    CHECK(p4.merge_count[1] == 16);
    CHECK(p4.merge_count[2] == 8);
    CHECK(p4.merge_count[3] == 4);

    CHECK_THROWS_AS(GeneralParams::compute(3, 26), Error);
    CHECK_THROWS_AS(GeneralParams::compute(3, 1), Error);
}

TEST_CASE("general c=3 at the smallest feasible n: structure and charging")
{
    auto gen = make_general_adversary(3, 8); // t = 2
    const GeneralParams& p = gen->params();
    CHECK(p.config_size[0] == 9216);
    CHECK(p.config_size[2] == 8);
    auto alg = make_baseline(BaselineKind::ExactRepair, 3);
    ArenaResult result = arena_run(*gen, *alg, 4000);
    const GeneralAudit& audit = gen->audit();
    CHECK(audit.trees_built > 0);
    CHECK(audit.child_count_failures == 0);
    CHECK(audit.assignment_floor_failures == 0);
    CHECK(audit.blocked_lemma_checks > 0);
    CHECK(audit.blocked_lemma_failures == 0);
    CHECK(result.ledger.resets.size() >= 1);
    CHECK(result.ledger.charged_recolorings
          <= 3 * result.ledger.observed_recolorings);
    CHECK(result.ledger.wasted_insertions <= result.ledger.insertions);
    // an edge can only be deleted if it was first inserted
    CHECK(result.ledger.insertions >= result.updates_applied / 2);
}
