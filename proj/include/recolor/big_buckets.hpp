#pragma once

#include <map>
#include <set>

#include "recolor/engine.hpp"

namespace recolor {

// Amortized big-buckets engine: d buckets, bucket i holding at most
// s^(i+1) vertices, plus the reset bucket. Insertions land in bucket 0 and
// recolor it entirely; a bucket past its high point (s^(i+1) - s^i) merges
// wholesale into the next one. Bucket d-1 past its high point resets.
class BigBucketEngine : public Engine {
public:
    static constexpr int kResetBucket = -1;

    BigBucketEngine(int d, const DynamicGraph& initial, ColorerKind colorer,
                    bool checked = false);

    EngineKind kind() const override { return EngineKind::Big; }
    void check_invariants() const override;

    int home_of(VertexId v) const; // bucket index or kResetBucket
    const std::set<VertexId>& bucket_members(int bucket) const;
    long long bucket_capacity(int i) const { return ipow(s_, i + 1); }
    long long high_point(int i) const { return ipow(s_, i + 1) - ipow(s_, i); }

protected:
    void apply_impl(const UpdateOp& op) override;

private:
    struct Bucket {
        std::set<VertexId> members;
        Palette palette;
    };

    void rebuild_layout();
    void insert_into_chain(VertexId v);
    void do_reset();
    void detach(VertexId v);
    void handle_insert_edge(VertexId u, VertexId v);

    std::vector<Bucket> buckets_;
    Bucket reset_bucket_;
    std::map<VertexId, int> home_;
};

} // namespace recolor
