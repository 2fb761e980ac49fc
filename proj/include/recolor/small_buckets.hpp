#pragma once

#include <map>
#include <set>

#include "recolor/engine.hpp"

namespace recolor {

// Bucket address inside the small-buckets layout. level == -1 is the
// reset bucket; otherwise 0 <= level < d and 0 <= index < s.
struct BucketAddress {
    int level = -1;
    int index = 0;

    bool is_reset() const { return level < 0; }
    bool operator==(const BucketAddress& o) const
    {
        return level == o.level && index == o.index;
    }
    bool operator<(const BucketAddress& o) const
    {
        return level != o.level ? level < o.level : index < o.index;
    }
};

// Amortized small-buckets engine: d levels of s buckets of capacity s^i
// plus an unbounded reset bucket. Vertex insertions go to level 0; a full
// level promotes wholesale to the next one; filling the last level resets
// the structure. Every level keeps at least one empty bucket (the space
// invariant), which is what guarantees promotions always have a target.
class SmallBucketEngine : public Engine {
public:
    SmallBucketEngine(int d, const DynamicGraph& initial, ColorerKind colorer,
                      bool checked = false);

    EngineKind kind() const override { return EngineKind::Small; }
    void check_invariants() const override;

    BucketAddress home_of(VertexId v) const;
    const std::set<VertexId>& bucket_members(const BucketAddress& addr) const;
    long long bucket_capacity(int level) const { return ipow(s_, level); }

protected:
    void apply_impl(const UpdateOp& op) override;

private:
    struct Bucket {
        std::set<VertexId> members;
        Palette palette;
    };

    void rebuild_layout();
    void place_new_vertex(VertexId v);
    void cascade_from(int level);
    void do_reset();
    bool level_full(int level) const;
    int first_empty_index(int level) const;
    void detach(VertexId v);
    void handle_insert_edge(VertexId u, VertexId v);

    std::vector<std::vector<Bucket>> levels_;
    Bucket reset_bucket_;
    std::map<VertexId, BucketAddress> home_;
};

} // namespace recolor
