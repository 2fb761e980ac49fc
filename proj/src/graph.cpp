#include "recolor/graph.hpp"

#include <algorithm>

namespace recolor {

const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::UncoloredVertex: return "UncoloredVertex";
    case ErrorCode::PaletteExhausted: return "PaletteExhausted";
    case ErrorCode::OddCycleDetected: return "OddCycleDetected";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::NotTwoColored: return "NotTwoColored";
    case ErrorCode::ColorBudgetExceeded: return "ColorBudgetExceeded";
    case ErrorCode::ValidityExhausted: return "ValidityExhausted";
    }
    return "Error";
}

UpdateOp UpdateOp::insert_vertex(VertexId v, std::vector<VertexId> nbrs)
{
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    UpdateOp op;
    op.kind = OpKind::InsertVertex;
    op.a = v;
    op.neighbors = std::move(nbrs);
    return op;
}

UpdateOp UpdateOp::delete_vertex(VertexId v)
{
    UpdateOp op;
    op.kind = OpKind::DeleteVertex;
    op.a = v;
    return op;
}

UpdateOp UpdateOp::insert_edge(VertexId u, VertexId v)
{
    UpdateOp op;
    op.kind = OpKind::InsertEdge;
    op.a = u;
    op.b = v;
    return op;
}

UpdateOp UpdateOp::delete_edge(VertexId u, VertexId v)
{
    UpdateOp op;
    op.kind = OpKind::DeleteEdge;
    op.a = u;
    op.b = v;
    return op;
}

namespace {
    void sorted_insert(std::vector<VertexId>& vec, VertexId v)
    {
        vec.insert(std::lower_bound(vec.begin(), vec.end(), v), v);
    }

    void sorted_erase(std::vector<VertexId>& vec, VertexId v)
    {
        auto it = std::lower_bound(vec.begin(), vec.end(), v);
        if (it != vec.end() && *it == v)
            vec.erase(it);
    }

    bool sorted_contains(const std::vector<VertexId>& vec, VertexId v)
    {
        return std::binary_search(vec.begin(), vec.end(), v);
    }
} // namespace

bool DynamicGraph::has_vertex(VertexId v) const
{
    return v >= 0 && (std::size_t)v < live_.size() && live_[v];
}

bool DynamicGraph::has_edge(VertexId u, VertexId v) const
{
    return has_vertex(u) && has_vertex(v) && sorted_contains(adj_[u], v);
}

void DynamicGraph::ensure_slot(VertexId v)
{
    if ((std::size_t)v >= live_.size()) {
        live_.resize(v + 1, 0);
        adj_.resize(v + 1);
    }
}

void DynamicGraph::insert_vertex(VertexId v, const std::vector<VertexId>& nbrs)
{
    if (v < 0)
        throw Error(ErrorCode::UnknownVertex, "negative vertex id " + std::to_string(v));
    if (has_vertex(v))
        throw Error(ErrorCode::DuplicateVertex, "vertex " + std::to_string(v) + " already live");
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (nbrs[i] == v)
            throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(v));
        if (!has_vertex(nbrs[i]))
            throw Error(ErrorCode::UnknownVertex, "neighbor " + std::to_string(nbrs[i]));
        if (i > 0 && nbrs[i] == nbrs[i - 1])
            throw Error(ErrorCode::DuplicateEdge,
                        std::to_string(v) + "-" + std::to_string(nbrs[i]));
    }
    ensure_slot(v);
    live_[v] = 1;
    vertices_.insert(v);
    adj_[v] = nbrs; // already sorted/deduped by UpdateOp factory or caller
    for (VertexId u : nbrs) {
        sorted_insert(adj_[u], v);
        ++num_edges_;
    }
}

void DynamicGraph::delete_vertex(VertexId v)
{
    if (!has_vertex(v))
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    for (VertexId u : adj_[v]) {
        sorted_erase(adj_[u], v);
        --num_edges_;
    }
    adj_[v].clear();
    live_[v] = 0;
    vertices_.erase(v);
}

void DynamicGraph::insert_edge(VertexId u, VertexId v)
{
    if (u == v)
        throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(u));
    if (!has_vertex(u))
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(u));
    if (!has_vertex(v))
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    if (sorted_contains(adj_[u], v))
        throw Error(ErrorCode::DuplicateEdge,
                    std::to_string(u) + "-" + std::to_string(v));
    sorted_insert(adj_[u], v);
    sorted_insert(adj_[v], u);
    ++num_edges_;
}

void DynamicGraph::delete_edge(VertexId u, VertexId v)
{
    if (!has_vertex(u))
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(u));
    if (!has_vertex(v))
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    if (!sorted_contains(adj_[u], v))
        throw Error(ErrorCode::MissingEdge,
                    std::to_string(u) + "-" + std::to_string(v));
    sorted_erase(adj_[u], v);
    sorted_erase(adj_[v], u);
    --num_edges_;
}

void DynamicGraph::apply(const UpdateOp& op)
{
    switch (op.kind) {
    case OpKind::InsertVertex: insert_vertex(op.a, op.neighbors); break;
    case OpKind::DeleteVertex: delete_vertex(op.a); break;
    case OpKind::InsertEdge: insert_edge(op.a, op.b); break;
    case OpKind::DeleteEdge: delete_edge(op.a, op.b); break;
    }
}

const std::vector<VertexId>& DynamicGraph::neighbors(VertexId v) const
{
    if (!has_vertex(v))
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    return adj_[v];
}

int DynamicGraph::degree(VertexId v) const
{
    return (int)neighbors(v).size();
}

void DynamicGraph::check_consistency() const
{
    long long edges_seen = 0;
    for (VertexId u : vertices_) {
        VertexId prev = -1;
        for (VertexId v : adj_[u]) {
            if (v == u)
                throw Error(ErrorCode::InvariantViolation, "self loop at " + std::to_string(u));
            if (v <= prev)
                throw Error(ErrorCode::InvariantViolation,
                            "adjacency of " + std::to_string(u) + " not sorted/unique");
            prev = v;
            if (!has_vertex(v) || !sorted_contains(adj_[v], u))
                throw Error(ErrorCode::InvariantViolation,
                            "asymmetric edge " + std::to_string(u) + "-" + std::to_string(v));
            edges_seen++;
        }
    }
    if (edges_seen != 2 * num_edges_)
        throw Error(ErrorCode::InvariantViolation, "edge count mismatch");
}

bool ColoringLedger::has_color(VertexId v) const
{
    return v >= 0 && (std::size_t)v < color_.size() && color_[v] != kNoColor;
}

Color ColoringLedger::color_of(VertexId v) const
{
    if (v < 0 || (std::size_t)v >= color_.size())
        return kNoColor;
    return color_[v];
}

void ColoringLedger::usage_add(Color c)
{
    counts_[c]++;
}

void ColoringLedger::usage_remove(Color c)
{
    auto it = counts_.find(c);
    if (it != counts_.end() && --it->second == 0)
        counts_.erase(it);
}

void ColoringLedger::record(Metrics& metrics, long long update_index, VertexId v,
                            Color old_color, Color new_color)
{
    if ((std::size_t)v >= color_.size())
        color_.resize(v + 1, kNoColor);
    changes_.push_back({update_index, v, old_color, new_color});
    if (old_color != kNoColor)
        usage_remove(old_color);
    usage_add(new_color);
    color_[v] = new_color;
    // Fresh colorings count; old == new is recorded but free.
    bool counted = (old_color == kNoColor) || (old_color != new_color);
    if (counted && update_index > 0) {
        metrics.recolorings_total++;
        if (!metrics.recolorings_per_update.empty())
            metrics.recolorings_per_update.back()++;
    }
}

void ColoringLedger::erase_color(VertexId v)
{
    if (!has_color(v))
        return;
    usage_remove(color_[v]);
    color_[v] = kNoColor;
}

std::map<VertexId, Color> ColoringLedger::replay() const
{
    std::map<VertexId, Color> out;
    for (const ChangeRecord& ch : changes_)
        out[ch.v] = ch.new_color;
    return out;
}

bool check_proper(const DynamicGraph& g, const ColoringLedger& ledger)
{
    for (VertexId u : g.vertices())
        if (!ledger.has_color(u))
            throw Error(ErrorCode::UncoloredVertex, "vertex " + std::to_string(u));
    for (VertexId u : g.vertices()) {
        Color cu = ledger.color_of(u);
        for (VertexId v : g.neighbors(u)) {
            if (v > u)
                break; // each edge checked once, via its larger endpoint
            if (ledger.color_of(v) == cu)
                return false;
        }
    }
    return true;
}

} // namespace recolor
