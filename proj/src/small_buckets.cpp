#include "recolor/small_buckets.hpp"

#include <algorithm>

namespace recolor {

SmallBucketEngine::SmallBucketEngine(int d, const DynamicGraph& initial,
                                     ColorerKind colorer, bool checked)
    : Engine(d, colorer, checked)
{
    graph_ = initial;
    n_reset_ = (long long)graph_.num_vertices();
    s_ = bucket_base(n_reset_, d_, 1);
    s_history_.push_back(s_);
    rebuild_layout();
    std::vector<VertexId> all(graph_.vertices().begin(), graph_.vertices().end());
    for (VertexId v : all) {
        reset_bucket_.members.insert(v);
        home_[v] = BucketAddress{};
    }
    recolor_and_record(all, reset_bucket_.palette);
    if (checked_)
        check_invariants();
}

void SmallBucketEngine::rebuild_layout()
{
    levels_.assign(d_, {});
    for (int i = 0; i < d_; ++i) {
        levels_[i].resize(s_);
        for (int j = 0; j < (int)s_; ++j)
            levels_[i][j].palette = palettes_.alloc(bucket_capacity(i));
    }
    reset_bucket_.members.clear();
    reset_bucket_.palette
        = palettes_.alloc(std::max<long long>(1, (long long)graph_.num_vertices()));
}

BucketAddress SmallBucketEngine::home_of(VertexId v) const
{
    auto it = home_.find(v);
    if (it == home_.end())
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    return it->second;
}

const std::set<VertexId>& SmallBucketEngine::bucket_members(const BucketAddress& a) const
{
    return a.is_reset() ? reset_bucket_.members : levels_[a.level][a.index].members;
}

bool SmallBucketEngine::level_full(int level) const
{
    for (const Bucket& b : levels_[level])
        if (b.members.empty())
            return false;
    return true;
}

int SmallBucketEngine::first_empty_index(int level) const
{
    for (int j = 0; j < (int)levels_[level].size(); ++j)
        if (levels_[level][j].members.empty())
            return j;
    return -1;
}

void SmallBucketEngine::detach(VertexId v)
{
    BucketAddress a = home_of(v);
    if (a.is_reset())
        reset_bucket_.members.erase(v);
    else
        levels_[a.level][a.index].members.erase(v);
    home_.erase(v);
    ledger_.erase_color(v);
}

void SmallBucketEngine::place_new_vertex(VertexId v)
{
    int j = first_empty_index(0);
    if (j < 0)
        throw Error(ErrorCode::InvariantViolation, "no empty bucket on level 0");
    levels_[0][j].members.insert(v);
    home_[v] = BucketAddress{0, j};
    recolor_and_record({v}, levels_[0][j].palette);
    cascade_from(0);
}

void SmallBucketEngine::cascade_from(int level)
{
    int i = level;
    while (level_full(i)) {
        if (i == d_ - 1) {
            do_reset();
            return;
        }
        std::vector<VertexId> moved;
        for (Bucket& b : levels_[i]) {
            moved.insert(moved.end(), b.members.begin(), b.members.end());
            b.members.clear();
        }
        std::sort(moved.begin(), moved.end());
        int j = first_empty_index(i + 1);
        if (j < 0)
            throw Error(ErrorCode::InvariantViolation,
                        "space invariant broken on level " + std::to_string(i + 1));
        Bucket& dest = levels_[i + 1][j];
        dest.members.insert(moved.begin(), moved.end());
        for (VertexId v : moved)
            home_[v] = BucketAddress{i + 1, j};
        recolor_and_record(moved, dest.palette);
        ++i;
    }
}

void SmallBucketEngine::do_reset()
{
    n_reset_ = (long long)graph_.num_vertices();
    s_ = bucket_base(n_reset_, d_, 1); // may shrink in the amortized engine
    note_reset();
    home_.clear();
    rebuild_layout();
    std::vector<VertexId> all(graph_.vertices().begin(), graph_.vertices().end());
    for (VertexId v : all) {
        reset_bucket_.members.insert(v);
        home_[v] = BucketAddress{};
    }
    recolor_and_record(all, reset_bucket_.palette);
}

void SmallBucketEngine::handle_insert_edge(VertexId u, VertexId v)
{
    graph_.insert_edge(u, v);
    if (ledger_.color_of(u) != ledger_.color_of(v))
        return; // disjoint palettes: endpoints of different buckets never clash
    metrics_.insertion_updates++;
    // Re-insert the endpoint homed on the lower level (reset counts as
    // highest); ties go to the smaller id.
    BucketAddress au = home_of(u);
    BucketAddress av = home_of(v);
    int lu = au.is_reset() ? d_ : au.level;
    int lv = av.is_reset() ? d_ : av.level;
    VertexId w = (lu != lv) ? (lu < lv ? u : v) : std::min(u, v);
    detach(w);
    place_new_vertex(w);
}

void SmallBucketEngine::apply_impl(const UpdateOp& op)
{
    switch (op.kind) {
    case OpKind::InsertVertex:
        graph_.insert_vertex(op.a, op.neighbors);
        metrics_.insertion_updates++;
        place_new_vertex(op.a);
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

void SmallBucketEngine::check_invariants() const
{
    // Space invariant: every level keeps an empty bucket.
    for (int i = 0; i < d_; ++i)
        if (level_full(i))
            throw Error(ErrorCode::InvariantViolation,
                        "space invariant: level " + std::to_string(i) + " full");
    std::size_t homed = 0;
    for (int i = 0; i < d_; ++i) {
        for (const Bucket& b : levels_[i]) {
            if ((long long)b.members.size() > bucket_capacity(i))
                throw Error(ErrorCode::InvariantViolation,
                            "bucket over capacity on level " + std::to_string(i));
            for (VertexId v : b.members) {
                if (!b.palette.contains(ledger_.color_of(v)))
                    throw Error(ErrorCode::InvariantViolation,
                                "color outside home palette for " + std::to_string(v));
                ++homed;
            }
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
    for (const auto& [v, a] : home_)
        if (!bucket_members(a).count(v))
            throw Error(ErrorCode::InvariantViolation,
                        "home mismatch for vertex " + std::to_string(v));
}

} // namespace recolor
