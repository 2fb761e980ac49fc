#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "recolor/stream.hpp"

using namespace recolor;

TEST_CASE("parses the documented forms")
{
    std::vector<UpdateOp> ops = parse_stream("av 1\nav 2\nae 1 2\n");
    REQUIRE(ops.size() == 3);
    CHECK(ops[0].kind == OpKind::InsertVertex);
    CHECK(ops[0].a == 1);
    CHECK(ops[0].neighbors.empty());
    CHECK(ops[1].a == 2);
    CHECK(ops[2].kind == OpKind::InsertEdge);
    CHECK(ops[2].a == 1);
    CHECK(ops[2].b == 2);
}

TEST_CASE("comments and blank lines are ignored")
{
    std::vector<UpdateOp> ops = parse_stream("# header\n\nav 5 # trailing\n  \n");
    REQUIRE(ops.size() == 1);
    CHECK(ops[0].a == 5);
}

TEST_CASE("self loop is a parse-level error with the line number")
{
    try {
        parse_stream("ae 1 1\n");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        CHECK(std::string(e.what()).find("SelfLoop") != std::string::npos);
    }
}

TEST_CASE("semantic problems surface as validation errors with line numbers")
{
    try {
        parse_stream("av 1\nae 1 7\n");
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ValidationError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_stream("av 1\nav 1\n"), Error);
    CHECK_THROWS_AS(parse_stream("xq 1\n"), Error);
    CHECK_THROWS_AS(parse_stream("av\n"), Error);
}

TEST_CASE("empty input parses to an empty sequence")
{
    CHECK(parse_stream("").empty());
}

TEST_CASE("format/parse round trip")
{
    RandomStreamConfig cfg;
    cfg.seed = 9;
    cfg.updates = 400;
    cfg.max_vertices = 60;
    std::vector<UpdateOp> ops = random_stream(cfg);
    std::vector<UpdateOp> again = parse_stream(format_stream(ops));
    REQUIRE(again.size() == ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        CHECK(ops[i].kind == again[i].kind);
        CHECK(ops[i].a == again[i].a);
        CHECK(ops[i].b == again[i].b);
        CHECK(ops[i].neighbors == again[i].neighbors);
    }
}

TEST_CASE("random streams are deterministic in the seed")
{
    RandomStreamConfig cfg;
    cfg.seed = 123;
    cfg.updates = 500;
    cfg.max_vertices = 80;
    std::string a = format_stream(random_stream(cfg));
    std::string b = format_stream(random_stream(cfg));
    CHECK(a == b);
    cfg.seed = 124;
    CHECK(a != format_stream(random_stream(cfg)));
}

TEST_CASE("forest-only streams never close a cycle")
{
    RandomStreamConfig cfg;
    cfg.seed = 31;
    cfg.updates = 800;
    cfg.max_vertices = 120;
    cfg.forest_only = true;
    std::vector<UpdateOp> ops = random_stream(cfg);
    DynamicGraph g;
    for (const UpdateOp& op : ops)
        g.apply(op);
    // acyclic iff E = V - #components
    std::set<VertexId> seen;
    long long components = 0;
    for (VertexId root : g.vertices()) {
        if (seen.count(root))
            continue;
        ++components;
        std::vector<VertexId> stack{root};
        seen.insert(root);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId u : g.neighbors(v))
                if (seen.insert(u).second)
                    stack.push_back(u);
        }
    }
    CHECK(g.num_edges() == (long long)g.num_vertices() - components);
    CHECK(g.num_vertices() > 0);
}
