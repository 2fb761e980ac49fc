#include "recolor/big_buckets.hpp"

#include <algorithm>

namespace recolor {

BigBucketEngine::BigBucketEngine(int d, const DynamicGraph& initial,
                                 ColorerKind colorer, bool checked)
    : Engine(d, colorer, checked)
{
    graph_ = initial;
    n_reset_ = (long long)graph_.num_vertices();
    s_ = bucket_base(n_reset_, d_, 2); // s >= 2 always; see Theorem 2's reset argument
    s_history_.push_back(s_);
    rebuild_layout();
    std::vector<VertexId> all(graph_.vertices().begin(), graph_.vertices().end());
    for (VertexId v : all) {
        reset_bucket_.members.insert(v);
        home_[v] = kResetBucket;
    }
    recolor_and_record(all, reset_bucket_.palette);
    if (checked_)
        check_invariants();
}

void BigBucketEngine::rebuild_layout()
{
    buckets_.assign(d_, {});
    for (int i = 0; i < d_; ++i)
        buckets_[i].palette = palettes_.alloc(bucket_capacity(i));
    reset_bucket_.members.clear();
    reset_bucket_.palette
        = palettes_.alloc(std::max<long long>(1, (long long)graph_.num_vertices()));
}

int BigBucketEngine::home_of(VertexId v) const
{
    auto it = home_.find(v);
    if (it == home_.end())
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    return it->second;
}

const std::set<VertexId>& BigBucketEngine::bucket_members(int bucket) const
{
    return bucket == kResetBucket ? reset_bucket_.members : buckets_[bucket].members;
}

void BigBucketEngine::detach(VertexId v)
{
    int b = home_of(v);
    if (b == kResetBucket)
        reset_bucket_.members.erase(v);
    else
        buckets_[b].members.erase(v);
    home_.erase(v);
    ledger_.erase_color(v);
}

void BigBucketEngine::insert_into_chain(VertexId v)
{
    buckets_[0].members.insert(v);
    home_[v] = 0;
    std::vector<VertexId> all0(buckets_[0].members.begin(), buckets_[0].members.end());
    recolor_and_record(all0, buckets_[0].palette);

    int i = 0;
    while ((long long)buckets_[i].members.size() > high_point(i)) {
        if (i == d_ - 1) {
            do_reset();
            return;
        }
        // Merge bucket i into bucket i+1 and recolor the union in one call.
        Bucket& src = buckets_[i];
        Bucket& dst = buckets_[i + 1];
        for (VertexId u : src.members)
            home_[u] = i + 1;
        dst.members.insert(src.members.begin(), src.members.end());
        src.members.clear();
        std::vector<VertexId> merged(dst.members.begin(), dst.members.end());
        recolor_and_record(merged, dst.palette);
        ++i;
    }
}

void BigBucketEngine::do_reset()
{
    n_reset_ = (long long)graph_.num_vertices();
    s_ = bucket_base(n_reset_, d_, 2);
    note_reset();
    home_.clear();
    rebuild_layout();
    std::vector<VertexId> all(graph_.vertices().begin(), graph_.vertices().end());
    for (VertexId v : all) {
        reset_bucket_.members.insert(v);
        home_[v] = kResetBucket;
    }
    recolor_and_record(all, reset_bucket_.palette);
}

void BigBucketEngine::handle_insert_edge(VertexId u, VertexId v)
{
    graph_.insert_edge(u, v);
    if (ledger_.color_of(u) != ledger_.color_of(v))
        return;
    metrics_.insertion_updates++;
    int bu = home_of(u);
    int bv = home_of(v);
    int lu = bu == kResetBucket ? d_ : bu;
    int lv = bv == kResetBucket ? d_ : bv;
    VertexId w = (lu != lv) ? (lu < lv ? u : v) : std::min(u, v);
    detach(w);
    insert_into_chain(w);
}

void BigBucketEngine::apply_impl(const UpdateOp& op)
{
    switch (op.kind) {
    case OpKind::InsertVertex:
        graph_.insert_vertex(op.a, op.neighbors);
        metrics_.insertion_updates++;
        insert_into_chain(op.a);
        break;
    case OpKind::DeleteVertex:
        graph_.delete_vertex(op.a);
        detach(op.a);
        break;
    case OpKind::InsertEdge:
        handle_insert_edge(op.a, op.b);
        break;
    case OpKind::DeleteEdge:
        graph_.delete_edge(op.a, op.b);
        break;
    }
}

void BigBucketEngine::check_invariants() const
{
    std::size_t homed = 0;
    for (int i = 0; i < d_; ++i) {
        const Bucket& b = buckets_[i];
        if ((long long)b.members.size() > high_point(i))
            throw Error(ErrorCode::InvariantViolation,
                        "high point exceeded in bucket " + std::to_string(i));
        for (VertexId v : b.members) {
            if (!b.palette.contains(ledger_.color_of(v)))
                throw Error(ErrorCode::InvariantViolation,
                            "color outside home palette for " + std::to_string(v));
            ++homed;
        }
    }
    for (VertexId v : reset_bucket_.members) {
        if (!reset_bucket_.palette.contains(ledger_.color_of(v)))
            throw Error(ErrorCode::InvariantViolation,
                        "color outside reset palette for " + std::to_string(v));
        ++homed;
    }
    if (homed != graph_.num_vertices() || home_.size() != graph_.num_vertices())
        throw Error(ErrorCode::InvariantViolation, "home map is not a partition");
}

} // namespace recolor
