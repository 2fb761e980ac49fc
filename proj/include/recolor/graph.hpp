#pragma once

#include <map>
#include <set>
#include <vector>

#include "recolor/types.hpp"

namespace recolor {

enum class OpKind { InsertVertex, DeleteVertex, InsertEdge, DeleteEdge };

struct UpdateOp {
    OpKind kind;
    VertexId a = -1;
    VertexId b = -1;
    std::vector<VertexId> neighbors; // InsertVertex only, sorted + deduped

    static UpdateOp insert_vertex(VertexId v, std::vector<VertexId> nbrs = {});
    static UpdateOp delete_vertex(VertexId v);
    static UpdateOp insert_edge(VertexId u, VertexId v);
    static UpdateOp delete_edge(VertexId u, VertexId v);
};

// Undirected simple graph under vertex/edge insertion and deletion.
// Adjacency lists are kept sorted; updates are validated before any
// mutation, so a rejected op leaves the graph untouched.
class DynamicGraph {
public:
    bool has_vertex(VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const;

    void apply(const UpdateOp& op);

    void insert_vertex(VertexId v, const std::vector<VertexId>& nbrs);
    void delete_vertex(VertexId v);
    void insert_edge(VertexId u, VertexId v);
    void delete_edge(VertexId u, VertexId v);

    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::vector<VertexId>& neighbors(VertexId v) const;
    std::size_t num_vertices() const { return vertices_.size(); }
    long long num_edges() const { return num_edges_; }
    int degree(VertexId v) const;

    // Symmetry + simplicity; throws InvariantViolation on corruption.
    void check_consistency() const;

private:
    void ensure_slot(VertexId v);

    std::vector<unsigned char> live_;
    std::vector<std::vector<VertexId>> adj_;
    std::set<VertexId> vertices_;
    long long num_edges_ = 0;
};

struct ChangeRecord {
    long long update_index; // 0 = initial coloring, updates count from 1
    VertexId v;
    Color old_color; // kNoColor if the vertex had none
    Color new_color;
};

struct Metrics {
    long long updates_applied = 0;
    long long recolorings_total = 0;
    std::vector<long long> recolorings_per_update;
    long long distinct_colors_now = 0;
    long long distinct_colors_max = 0;
    long long resets = 0;
    // InsertVertex updates plus same-color InsertEdge updates; the
    // amortized bounds are stated against this count.
    long long insertion_updates = 0;
};

// Current vertex -> color map plus the append-only change log. A change
// with old == new is recorded but free; everything else (including the
// first coloring of a fresh vertex) counts as one recoloring.
class ColoringLedger {
public:
    bool has_color(VertexId v) const;
    Color color_of(VertexId v) const; // kNoColor if none

    void record(Metrics& metrics, long long update_index, VertexId v,
                Color old_color, Color new_color);
    void erase_color(VertexId v); // vertex deletion; not a change record

    const std::vector<ChangeRecord>& changes() const { return changes_; }
    long long distinct_colors_now() const { return (long long)counts_.size(); }

    // Replays the change log from scratch; used by the determinism tests.
    std::map<VertexId, Color> replay() const;

private:
    std::vector<Color> color_;
    std::vector<ChangeRecord> changes_;
    std::map<Color, long long> counts_; // live usage count per color

    void usage_add(Color c);
    void usage_remove(Color c);
};

bool check_proper(const DynamicGraph& g, const ColoringLedger& ledger);

} // namespace recolor
