#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "recolor/engine.hpp"

namespace recolor {

struct AuditReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::string digest;

    const std::string& first_violation() const { return violations.front(); }
};

// Bucket slot shared by both de-amortized engines. `sim` holds the
// simulated occupants (shadows placed here plus shadowless reals living
// here); `reals` holds the physical occupants.
struct ShadowBucket {
    std::set<VertexId> sim;
    std::set<VertexId> reals;
    Palette palette;
};

// Address of a bucket: level >= 0 with an index (small) or slot (big);
// level == -1 is the reset pair, slot 0/1.
struct ShadowAddr {
    int level = -1;
    int slot = 0;

    bool is_reset() const { return level < 0; }
    bool operator==(const ShadowAddr& o) const
    {
        return level == o.level && slot == o.slot;
    }
    bool operator!=(const ShadowAddr& o) const { return !(*this == o); }
    bool operator<(const ShadowAddr& o) const
    {
        return level != o.level ? level < o.level : slot < o.slot;
    }
};

struct Shadow {
    ShadowAddr addr;
    Color color;
};

// De-amortized small-buckets engine (shadow-vertex simulation of the
// amortized engine plus a move step bounded by d + 2 real recolorings).
// The simulation treats a level as full when every bucket holds a shadow
// or a shadowless real, and only ever places shadows into buckets that
// contain no real vertices at all. s never decreases across resets.
class DeamSmallEngine : public Engine {
public:
    DeamSmallEngine(int d, const DynamicGraph& initial, ColorerKind colorer,
                    bool checked = false);

    EngineKind kind() const override { return EngineKind::SmallDeam; }
    long long per_update_budget() const override { return d_ + 2; }
    void check_invariants() const override;
    AuditReport audit_lemmas() const;

    bool has_shadow(VertexId v) const { return shadow_.count(v) > 0; }
    std::size_t shadow_count() const { return shadow_.size(); }
    ShadowAddr real_addr_of(VertexId v) const;
    ShadowAddr sim_addr_of(VertexId v) const;
    Color sim_color_of(VertexId v) const;
    // Number of times each level filled during the simulation (the last
    // level's fills are the resets).
    const std::vector<long long>& fills_per_level() const { return fills_per_level_; }

protected:
    void apply_impl(const UpdateOp& op) override;

private:
    ShadowBucket& bucket_at(const ShadowAddr& a);
    const ShadowBucket& bucket_at(const ShadowAddr& a) const;
    long long level_capacity(int level) const { return ipow(s_, level); }

    void insert_path(VertexId x);
    void sim_place(VertexId x);
    void sim_promote(int level);
    void sim_reset();
    void move_step(VertexId inserted);
    void realize(VertexId v);
    void detach(VertexId v);
    void handle_insert_edge(VertexId u, VertexId v);
    bool level_sim_full(int level) const;
    int strong_empty_index(int level) const; // no sims, no reals

    std::vector<std::vector<ShadowBucket>> levels_;
    ShadowBucket reset_[2];
    int primary_reset_ = 0;
    std::map<VertexId, ShadowAddr> real_addr_;
    std::map<VertexId, Shadow> shadow_;

    long long last_reset_update_ = 0;
    std::vector<long long> last_full_update_;
    std::vector<long long> fills_per_level_;
    std::vector<std::string> event_violations_; // fill-interval audit log
};

// De-amortized big-buckets engine: every bucket (including reset) is
// doubled into a primary/secondary pair with separate palettes. The
// simulation places shadows for the new vertex plus everything on lower
// levels into the first secondary bucket that fits under the high point,
// then the pair roles swap; the move step realizes the inserted vertex
// plus up to s reals per level and from the secondary reset bucket.
class DeamBigEngine : public Engine {
public:
    DeamBigEngine(int d, const DynamicGraph& initial, ColorerKind colorer,
                  bool checked = false);

    EngineKind kind() const override { return EngineKind::BigDeam; }
    long long per_update_budget() const override { return (d_ + 1) * s_; }
    void check_invariants() const override;
    AuditReport audit_lemmas() const;

    bool has_shadow(VertexId v) const { return shadow_.count(v) > 0; }
    std::size_t shadow_count() const { return shadow_.size(); }
    ShadowAddr real_addr_of(VertexId v) const;
    ShadowAddr sim_addr_of(VertexId v) const;
    Color sim_color_of(VertexId v) const;
    // Simulated occupancy of the primary bucket on `level`.
    const std::set<VertexId>& primary_sim(int level) const;
    // Shadow placements that targeted each level's secondary bucket.
    const std::vector<long long>& placements_per_level() const
    {
        return placements_per_level_;
    }

protected:
    void apply_impl(const UpdateOp& op) override;

private:
    struct Pair {
        ShadowBucket slot[2];
        int primary = 0;
    };

    ShadowBucket& bucket_at(const ShadowAddr& a);
    const ShadowBucket& bucket_at(const ShadowAddr& a) const;
    ShadowBucket& primary_of(int level); // level -1 = reset pair
    ShadowBucket& secondary_of(int level);
    const ShadowBucket& primary_of(int level) const;
    const ShadowBucket& secondary_of(int level) const;
    ShadowAddr primary_addr(int level) const;
    ShadowAddr secondary_addr(int level) const;

    long long bucket_capacity(int i) const { return ipow(s_, i + 1); }
    long long high_point(int i) const { return ipow(s_, i + 1) - ipow(s_, i); }

    void insert_path(VertexId x);
    void sim_place(VertexId x);
    void sim_reset();
    void move_step(VertexId inserted);
    void realize(VertexId v);
    void detach(VertexId v);
    void handle_insert_edge(VertexId u, VertexId v);

    std::vector<Pair> levels_;
    Pair reset_;
    std::map<VertexId, ShadowAddr> real_addr_;
    std::map<VertexId, Shadow> shadow_;
    std::vector<long long> placements_per_level_;
};

} // namespace recolor
