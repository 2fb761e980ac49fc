#include "recolor/stream.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace recolor {

namespace {
    [[noreturn]] void parse_fail(int line, const std::string& msg)
    {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
    }
} // namespace

std::vector<UpdateOp> parse_stream(const std::string& text)
{
    std::vector<UpdateOp> ops;
    DynamicGraph replay; // validates ops against the evolving graph
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        std::istringstream line(raw);
        std::string cmd;
        if (!(line >> cmd))
            continue;
        auto read_id = [&]() {
            long long v;
            if (!(line >> v))
                parse_fail(lineno, "expected vertex id");
            if (v < 0 || v > INT32_MAX)
                parse_fail(lineno, "vertex id out of range");
            return (VertexId)v;
        };
        UpdateOp op;
        if (cmd == "av") {
            VertexId v = read_id();
            std::vector<VertexId> nbrs;
            long long x;
            while (line >> x) {
                if (x < 0 || x > INT32_MAX)
                    parse_fail(lineno, "vertex id out of range");
                nbrs.push_back((VertexId)x);
            }
            if (!line.eof())
                parse_fail(lineno, "trailing garbage");
            op = UpdateOp::insert_vertex(v, std::move(nbrs));
        } else if (cmd == "rv") {
            op = UpdateOp::delete_vertex(read_id());
        } else if (cmd == "ae" || cmd == "re") {
            VertexId u = read_id();
            VertexId v = read_id();
            std::string extra;
            if (line >> extra)
                parse_fail(lineno, "trailing garbage");
            if (u == v)
                parse_fail(lineno, "SelfLoop " + std::to_string(u));
            op = cmd == "ae" ? UpdateOp::insert_edge(u, v) : UpdateOp::delete_edge(u, v);
        } else {
            parse_fail(lineno, "unknown op '" + cmd + "'");
        }
        try {
            replay.apply(op);
        } catch (const Error& e) {
            throw Error(ErrorCode::ValidationError,
                        "line " + std::to_string(lineno) + ": " + e.what());
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

std::vector<UpdateOp> parse_stream_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stream(buf.str());
}

std::string format_stream(const std::vector<UpdateOp>& ops)
{
    std::ostringstream out;
    for (const UpdateOp& op : ops) {
        switch (op.kind) {
        case OpKind::InsertVertex:
            out << "av " << op.a;
            for (VertexId u : op.neighbors)
                out << ' ' << u;
            break;
        case OpKind::DeleteVertex: out << "rv " << op.a; break;
        case OpKind::InsertEdge: out << "ae " << op.a << ' ' << op.b; break;
        case OpKind::DeleteEdge: out << "re " << op.a << ' ' << op.b; break;
        }
        out << '\n';
    }
    return out.str();
}

namespace {
    // Connectivity probe on the mirror graph; forests stay small enough
    // that a plain BFS is fine.
    bool connected(const DynamicGraph& g, VertexId a, VertexId b)
    {
        if (a == b)
            return true;
        std::vector<VertexId> stack{a};
        std::set<VertexId> seen{a};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId u : g.neighbors(v)) {
                if (u == b)
                    return true;
                if (seen.insert(u).second)
                    stack.push_back(u);
            }
        }
        return false;
    }
} // namespace

std::vector<UpdateOp> random_stream(const RandomStreamConfig& cfg)
{
    std::mt19937_64 rng(cfg.seed);
    auto pick = [&](long long n) { return (long long)(rng() % (std::uint64_t)n); };

    DynamicGraph g;
    std::vector<VertexId> live;
    std::vector<std::pair<VertexId, VertexId>> edges;
    VertexId next_id = 0;
    std::vector<UpdateOp> ops;

    auto remove_live = [&](VertexId v) {
        live.erase(std::find(live.begin(), live.end(), v));
        edges.erase(std::remove_if(edges.begin(), edges.end(),
                                   [v](auto& e) { return e.first == v || e.second == v; }),
                    edges.end());
    };

    int total_weight = cfg.w_insert_vertex + cfg.w_delete_vertex + cfg.w_insert_edge
        + cfg.w_delete_edge;
    int stalled = 0;
    while ((int)ops.size() < cfg.updates) {
        if (++stalled > 100000)
            throw Error(ErrorCode::ValidationError,
                        "random stream config cannot make progress");
        long long roll = pick(total_weight);
        UpdateOp op;
        bool ok = false;
        if (roll < cfg.w_insert_vertex) {
            if ((int)live.size() >= cfg.max_vertices)
                continue;
            // A few incident edges; under forest_only the endpoints must
            // come from distinct components.
            std::vector<VertexId> nbrs;
            int want = live.empty() ? 0 : (int)pick(3);
            for (int i = 0; i < want; ++i) {
                VertexId cand = live[pick((long long)live.size())];
                bool dup = std::find(nbrs.begin(), nbrs.end(), cand) != nbrs.end();
                if (dup)
                    continue;
                if (cfg.forest_only) {
                    bool joins = false;
                    for (VertexId prev : nbrs)
                        if (connected(g, prev, cand))
                            joins = true;
                    if (joins)
                        continue;
                }
                nbrs.push_back(cand);
            }
            op = UpdateOp::insert_vertex(next_id++, nbrs);
            ok = true;
        } else if (roll < cfg.w_insert_vertex + cfg.w_delete_vertex) {
            if (live.size() < 2)
                continue;
            op = UpdateOp::delete_vertex(live[pick((long long)live.size())]);
            ok = true;
        } else if (roll < cfg.w_insert_vertex + cfg.w_delete_vertex + cfg.w_insert_edge) {
            if (live.size() < 2)
                continue;
            for (int tries = 0; tries < 8 && !ok; ++tries) {
                VertexId u = live[pick((long long)live.size())];
                VertexId v = live[pick((long long)live.size())];
                if (u == v || g.has_edge(u, v))
                    continue;
                if (cfg.forest_only && connected(g, u, v))
                    continue;
                op = UpdateOp::insert_edge(u, v);
                ok = true;
            }
        } else {
            if (edges.empty())
                continue;
            auto [u, v] = edges[pick((long long)edges.size())];
            op = UpdateOp::delete_edge(u, v);
            ok = true;
        }
        if (!ok)
            continue;
        stalled = 0;
        g.apply(op);
        switch (op.kind) {
        case OpKind::InsertVertex:
            live.push_back(op.a);
            for (VertexId u : op.neighbors)
                edges.push_back({op.a, u});
            break;
        case OpKind::DeleteVertex: remove_live(op.a); break;
        case OpKind::InsertEdge: edges.push_back({op.a, op.b}); break;
        case OpKind::DeleteEdge:
            edges.erase(std::find_if(edges.begin(), edges.end(),
                                     [&](auto& e) {
                                         return (e.first == op.a && e.second == op.b)
                                             || (e.first == op.b && e.second == op.a);
                                     }));
            break;
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

} // namespace recolor
