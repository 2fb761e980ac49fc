#include <algorithm>
#include <sstream>

#include "recolor/deamortized.hpp"

namespace recolor {

DeamSmallEngine::DeamSmallEngine(int d, const DynamicGraph& initial,
                                 ColorerKind colorer, bool checked)
    : Engine(d, colorer, checked)
{
    graph_ = initial;
    n_reset_ = (long long)graph_.num_vertices();
    s_ = bucket_base(n_reset_, d_, 1);
    s_history_.push_back(s_);
    levels_.assign(d_, {});
    for (int i = 0; i < d_; ++i)
        levels_[i].resize(s_);
    last_full_update_.assign(d_, 0);
    fills_per_level_.assign(d_, 0);

    // Initially everything sits in the primary reset bucket, shadowless.
    std::vector<VertexId> all(graph_.vertices().begin(), graph_.vertices().end());
    ShadowBucket& prim = reset_[primary_reset_];
    prim.palette = palettes_.alloc(std::max<long long>(1, (long long)all.size()));
    ColoringResult res = color_only(all, prim.palette);
    ShadowAddr home{-1, primary_reset_};
    for (VertexId v : all) {
        prim.sim.insert(v);
        prim.reals.insert(v);
        real_addr_[v] = home;
        record_color(v, res.colors.at(v));
    }
    if (checked_)
        check_invariants();
}

ShadowBucket& DeamSmallEngine::bucket_at(const ShadowAddr& a)
{
    return a.is_reset() ? reset_[a.slot] : levels_[a.level][a.slot];
}

const ShadowBucket& DeamSmallEngine::bucket_at(const ShadowAddr& a) const
{
    return a.is_reset() ? reset_[a.slot] : levels_[a.level][a.slot];
}

ShadowAddr DeamSmallEngine::real_addr_of(VertexId v) const
{
    auto it = real_addr_.find(v);
    if (it == real_addr_.end())
        throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    return it->second;
}

ShadowAddr DeamSmallEngine::sim_addr_of(VertexId v) const
{
    auto it = shadow_.find(v);
    return it != shadow_.end() ? it->second.addr : real_addr_of(v);
}

Color DeamSmallEngine::sim_color_of(VertexId v) const
{
    auto it = shadow_.find(v);
    return it != shadow_.end() ? it->second.color : ledger_.color_of(v);
}

bool DeamSmallEngine::level_sim_full(int level) const
{
    for (const ShadowBucket& b : levels_[level])
        if (b.sim.empty())
            return false;
    return true;
}

int DeamSmallEngine::strong_empty_index(int level) const
{
    for (int j = 0; j < (int)levels_[level].size(); ++j)
        if (levels_[level][j].sim.empty() && levels_[level][j].reals.empty())
            return j;
    return -1;
}

void DeamSmallEngine::sim_place(VertexId x)
{
    int j = strong_empty_index(0);
    if (j < 0)
        throw Error(ErrorCode::InvariantViolation,
                    "no empty level-0 bucket for the simulation step");
    ShadowBucket& b = levels_[0][j];
    b.palette = palettes_.alloc(1);
    ColoringResult res = color_only({x}, b.palette);
    shadow_[x] = Shadow{ShadowAddr{0, j}, res.colors.at(x)};
    b.sim.insert(x);

    int i = 0;
    while (level_sim_full(i)) {
        // Fill-interval audit: refilling level i takes >= s^(i+1) updates.
        long long since = update_index_
            - std::max(last_full_update_[i], last_reset_update_);
        if (since < ipow(s_, i + 1) && update_index_ > 0) {
            std::ostringstream os;
            os << "fill interval " << since << " < s^" << (i + 1) << " at level " << i
               << " (update " << update_index_ << ")";
            event_violations_.push_back(os.str());
        }
        last_full_update_[i] = update_index_;
        fills_per_level_[i]++;
        if (i == d_ - 1) {
            sim_reset();
            return;
        }
        sim_promote(i);
        ++i;
    }
}

void DeamSmallEngine::sim_promote(int level)
{
    std::vector<VertexId> moved;
    for (ShadowBucket& b : levels_[level]) {
        moved.insert(moved.end(), b.sim.begin(), b.sim.end());
        b.sim.clear();
    }
    std::sort(moved.begin(), moved.end());
    int j = strong_empty_index(level + 1);
    if (j < 0)
        throw Error(ErrorCode::InvariantViolation,
                    "no empty destination bucket on level " + std::to_string(level + 1));
    ShadowBucket& dest = levels_[level + 1][j];
    dest.palette = palettes_.alloc(level_capacity(level + 1));
    ColoringResult res = color_only(moved, dest.palette);
    for (VertexId v : moved) {
        shadow_[v] = Shadow{ShadowAddr{level + 1, j}, res.colors.at(v)};
        dest.sim.insert(v);
    }
}

void DeamSmallEngine::sim_reset()
{
    int sec = 1 - primary_reset_;
    ShadowBucket& target = reset_[sec];
    if (!target.reals.empty() || !target.sim.empty())
        throw Error(ErrorCode::InvariantViolation,
                    "secondary reset bucket not empty at reset");
    std::vector<VertexId> all(graph_.vertices().begin(), graph_.vertices().end());
    for (auto& lvl : levels_)
        for (ShadowBucket& b : lvl)
            b.sim.clear();
    reset_[0].sim.clear();
    reset_[1].sim.clear();
    target.palette = palettes_.alloc(std::max<long long>(1, (long long)all.size()));
    ColoringResult res = color_only(all, target.palette);
    for (VertexId v : all) {
        shadow_[v] = Shadow{ShadowAddr{-1, sec}, res.colors.at(v)};
        target.sim.insert(v);
    }
    primary_reset_ = sec;

    n_reset_ = std::max(n_reset_, (long long)graph_.num_vertices());
    long long new_s = bucket_base(n_reset_, d_, s_); // never decreases
    if (new_s > s_) {
        s_ = new_s;
        for (auto& lvl : levels_)
            lvl.resize(s_);
    }
    note_reset();
    last_reset_update_ = update_index_;
}

void DeamSmallEngine::realize(VertexId v)
{
    auto it = shadow_.find(v);
    if (it == shadow_.end())
        throw Error(ErrorCode::InvariantViolation,
                    "realize on shadowless vertex " + std::to_string(v));
    Shadow sh = it->second;
    auto ra = real_addr_.find(v);
    if (ra != real_addr_.end())
        bucket_at(ra->second).reals.erase(v);
    bucket_at(sh.addr).reals.insert(v);
    real_addr_[v] = sh.addr;
    record_color(v, sh.color);
    shadow_.erase(it);
}

void DeamSmallEngine::move_step(VertexId inserted)
{
    realize(inserted);
    for (int i = 0; i < d_; ++i) {
        // Among buckets holding only reals-with-shadow, drain the smallest.
        int best = -1;
        std::size_t best_size = 0;
        for (int j = 0; j < (int)levels_[i].size(); ++j) {
            const ShadowBucket& b = levels_[i][j];
            if (!b.sim.empty() || b.reals.empty())
                continue;
            if (best < 0 || b.reals.size() < best_size) {
                best = j;
                best_size = b.reals.size();
            }
        }
        if (best >= 0)
            realize(*levels_[i][best].reals.begin());
    }
    ShadowBucket& sec = reset_[1 - primary_reset_];
    if (!sec.reals.empty())
        realize(*sec.reals.begin());
}

void DeamSmallEngine::insert_path(VertexId x)
{
    metrics_.insertion_updates++;
    sim_place(x);
    move_step(x);
}

void DeamSmallEngine::detach(VertexId v)
{
    auto ra = real_addr_.find(v);
    if (ra != real_addr_.end()) {
        ShadowBucket& b = bucket_at(ra->second);
        b.reals.erase(v);
        b.sim.erase(v); // no-op unless v was shadowless
        real_addr_.erase(ra);
    }
    auto sh = shadow_.find(v);
    if (sh != shadow_.end()) {
        bucket_at(sh->second.addr).sim.erase(v);
        shadow_.erase(sh);
    }
    ledger_.erase_color(v);
}

void DeamSmallEngine::handle_insert_edge(VertexId u, VertexId v)
{
    graph_.insert_edge(u, v);
    bool real_clash = ledger_.color_of(u) == ledger_.color_of(v);
    bool sim_clash = sim_color_of(u) == sim_color_of(v);
    if (!real_clash && !sim_clash)
        return;
    // Colors clash only within one bucket (palettes are disjoint), so the
    // level rule from the amortized engines degenerates to the id tie-break.
    ShadowAddr au = real_clash ? real_addr_of(u) : sim_addr_of(u);
    ShadowAddr av = real_clash ? real_addr_of(v) : sim_addr_of(v);
    int lu = au.is_reset() ? d_ : au.level;
    int lv = av.is_reset() ? d_ : av.level;
    VertexId w = (lu != lv) ? (lu < lv ? u : v) : std::min(u, v);
    detach(w);
    insert_path(w);
}

void DeamSmallEngine::apply_impl(const UpdateOp& op)
{
    switch (op.kind) {
    case OpKind::InsertVertex:
        graph_.insert_vertex(op.a, op.neighbors);
        insert_path(op.a);
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

void DeamSmallEngine::check_invariants() const
{
    // Simulated space invariant.
    for (int i = 0; i < d_; ++i)
        if (level_sim_full(i))
            throw Error(ErrorCode::InvariantViolation,
                        "simulated space invariant: level " + std::to_string(i) + " full");
    // Partitions and capacities.
    std::size_t real_seen = 0, sim_seen = 0;
    auto scan = [&](const ShadowBucket& b, long long cap, const char* what) {
        if (cap >= 0
            && ((long long)b.sim.size() > cap || (long long)b.reals.size() > cap))
            throw Error(ErrorCode::InvariantViolation,
                        std::string("capacity exceeded in ") + what);
        real_seen += b.reals.size();
        sim_seen += b.sim.size();
    };
    for (int i = 0; i < d_; ++i)
        for (const ShadowBucket& b : levels_[i])
            scan(b, level_capacity(i), "level bucket");
    scan(reset_[0], -1, "reset bucket");
    scan(reset_[1], -1, "reset bucket");
    std::size_t n = graph_.num_vertices();
    if (real_seen != n || sim_seen != n || real_addr_.size() != n)
        throw Error(ErrorCode::InvariantViolation, "occupancy is not a partition");

    for (VertexId v : graph_.vertices()) {
        ShadowAddr ra = real_addr_of(v);
        if (!bucket_at(ra).reals.count(v))
            throw Error(ErrorCode::InvariantViolation, "real position mismatch");
        auto it = shadow_.find(v);
        if (it != shadow_.end()) {
            const Shadow& sh = it->second;
            if (!bucket_at(sh.addr).sim.count(v))
                throw Error(ErrorCode::InvariantViolation, "shadow position mismatch");
            if (sh.addr == ra && sh.color == ledger_.color_of(v))
                throw Error(ErrorCode::InvariantViolation,
                            "degenerate shadow on vertex " + std::to_string(v));
        } else if (!bucket_at(ra).sim.count(v)) {
            throw Error(ErrorCode::InvariantViolation,
                        "shadowless vertex missing from sim occupancy");
        }
    }
    // Secondary reset bucket holds only reals whose shadow sits in the
    // primary reset bucket.
    const ShadowBucket& sec = reset_[1 - primary_reset_];
    if (!sec.sim.empty())
        throw Error(ErrorCode::InvariantViolation, "secondary reset holds sims");
    for (VertexId v : sec.reals) {
        auto it = shadow_.find(v);
        if (it == shadow_.end() || !it->second.addr.is_reset()
            || it->second.addr.slot != primary_reset_)
            throw Error(ErrorCode::InvariantViolation,
                        "secondary reset holds a vertex without a primary-reset shadow");
    }
    // The simulated coloring is proper.
    for (VertexId u : graph_.vertices()) {
        Color cu = sim_color_of(u);
        for (VertexId v : graph_.neighbors(u)) {
            if (v > u)
                break;
            if (sim_color_of(v) == cu)
                throw Error(ErrorCode::InvariantViolation, "simulated coloring improper");
        }
    }
}

AuditReport DeamSmallEngine::audit_lemmas() const
{
    AuditReport report;
    auto fail = [&](const std::string& msg) {
        report.ok = false;
        report.violations.push_back(msg);
    };

    // Lemma: after every update there is an empty bucket on level 0.
    if (strong_empty_index(0) < 0)
        fail("lemma 1: no empty bucket on level 0");

    // Lemma: level i+1 has a shadow-free bucket with at most
    // max(0, s^(i+1) - t_i) reals, t_i counted from the last fill or reset.
    for (int i = 0; i + 1 < d_; ++i) {
        long long t = update_index_ - std::max(last_full_update_[i], last_reset_update_);
        long long bound = std::max<long long>(0, ipow(s_, i + 1) - t);
        bool found = false;
        for (const ShadowBucket& b : levels_[i + 1])
            if (b.sim.empty() && (long long)b.reals.size() <= bound) {
                found = true;
                break;
            }
        if (!found)
            fail("lemma 2: no drained bucket on level " + std::to_string(i + 1)
                 + " (bound " + std::to_string(bound) + ")");
    }

    // Lemma 3 (refill intervals) is checked when fills happen; Corollary 1
    // and Lemma 5 throw at the promotion/reset that would break them.
    for (const std::string& v : event_violations_)
        fail("lemma 3: " + v);

    std::ostringstream digest;
    digest << "update=" << update_index_ << " s=" << s_ << " epoch=" << epoch_
           << " shadows=" << shadow_.size() << " n=" << graph_.num_vertices();
    report.digest = digest.str();
    return report;
}

} // namespace recolor
