#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "recolor/baselines.hpp"
#include "recolor/graph.hpp"

namespace recolor {

struct ResetRecord {
    int level;         // j: the configuration that went invalid
    int case_id;       // 1 = color reassignment, 2 = fall back to F_(j-1)
    long long wasted;  // edge insertions marked wasted by this reset
    long long charged; // recolorings charged against the opponent
};

struct ChargeLedger {
    long long wasted_insertions = 0;
    long long charged_recolorings = 0;
    long long observed_recolorings = 0;
    long long insertions = 0;
    long long deletions = 0;
    long long links = 0;          // matching / c-tree links performed
    long long invalidations = 0;  // expensive tree invalidations detected
    std::vector<ResetRecord> resets;
};

// Adaptive update-sequence generator: reads the opponent's coloring after
// every update and emits the next one.
class AdversaryGenerator {
public:
    virtual ~AdversaryGenerator() = default;

    virtual const DynamicGraph& initial_graph() const = 0;
    virtual std::optional<UpdateOp> next(const ColoringAlgorithm& alg) = 0;
    virtual void observe(const UpdateOp& op, const std::vector<Recoloring>& response,
                         const ColoringAlgorithm& alg)
        = 0;
    virtual int colors() const = 0;

    const ChargeLedger& ledger() const { return ledger_; }
    ChargeLedger& ledger() { return ledger_; }

protected:
    ChargeLedger ledger_;
};

struct ArenaResult {
    ChargeLedger ledger;
    long long updates_applied = 0;
    std::vector<UpdateOp> setup;   // builds the initial graph from nothing
    std::vector<UpdateOp> emitted; // the adaptive update sequence

    // Full replayable stream: setup followed by the updates.
    std::vector<UpdateOp> full_stream() const
    {
        std::vector<UpdateOp> all = setup;
        all.insert(all.end(), emitted.begin(), emitted.end());
        return all;
    }
};

// Interleaves generator and opponent for up to m updates. Verifies after
// every update that the opponent stays proper and within {1..c}; any
// recolorings reported for a deletion are deferred to the next insertion.
ArenaResult arena_run(AdversaryGenerator& gen, ColoringAlgorithm& alg, long long m);

// Three stars of n/3 vertices each; links two equally-colored star roots,
// then cuts the edge again. Forces n/3 recolorings per link from any
// exact-2-coloring maintainer.
class StarsC2Generator : public AdversaryGenerator {
public:
    explicit StarsC2Generator(long long n);

    const DynamicGraph& initial_graph() const override { return initial_; }
    std::optional<UpdateOp> next(const ColoringAlgorithm& alg) override;
    void observe(const UpdateOp& op, const std::vector<Recoloring>& response,
                 const ColoringAlgorithm& alg) override;
    int colors() const override { return 2; }

private:
    long long n_;
    long long star_size_;
    DynamicGraph initial_;
    std::vector<VertexId> roots_;
    std::optional<std::pair<VertexId, VertexId>> pending_cut_;
};

// 3-coloring lower bound: 1-trees assigned majority leaf colors, 2-trees
// merged from same-assigned 1-trees, matching links between equal-colored
// 2-tree roots until a 1-tree invalidates or the link budget is used, then
// the construction restarts. 1-tree edges are never cut.
class C3Generator : public AdversaryGenerator {
public:
    explicit C3Generator(long long n);

    const DynamicGraph& initial_graph() const override { return initial_; }
    std::optional<UpdateOp> next(const ColoringAlgorithm& alg) override;
    void observe(const UpdateOp& op, const std::vector<Recoloring>& response,
                 const ColoringAlgorithm& alg) override;
    int colors() const override { return 3; }

    long long cycles_completed() const { return cycles_; }
    long long updates_this_cycle() const { return cycle_updates_; }

private:
    struct OneTree {
        VertexId root;
        Color assigned = -1;
        long long live = 0;        // leaves still holding the assigned color
        long long assigned_at = 0; // live count when the color was assigned
    };

    void start_cycle(const ColoringAlgorithm& alg);
    std::optional<UpdateOp> ensure_link(VertexId a, VertexId b);
    bool is_one_tree_edge(VertexId u, VertexId v) const;
    int tree_of(VertexId v) const { return (int)(v / tree_size_); }

    long long n_, t_, tree_size_;
    DynamicGraph initial_;
    DynamicGraph current_; // mirror of the evolving structure
    std::vector<OneTree> trees_;

    enum class Phase { Assign, Build, Link, Teardown };
    Phase phase_ = Phase::Assign;
    std::vector<UpdateOp> plan_; // pending construction ops
    std::size_t plan_pos_ = 0;
    std::vector<int> used_trees_;
    std::vector<VertexId> two_tree_roots_;
    long long links_done_ = 0;
    long long cycles_ = 0;
    long long cycle_updates_ = 0;
    std::vector<std::pair<VertexId, VertexId>> cycle_edges_; // to tear down
};

// Exact parameter arithmetic for the general construction; n must be
// t^(c(c-1)/2) for an integer t >= 2.
struct GeneralParams {
    int c = 0;
    long long n = 0;
    long long t = 0;
    long long alpha = 0;                 // 2(c+1)(4c)^(c-1), makes T_(c-1) = 2(c+1)
    std::vector<long long> merge_count;  // M_k = 2 t^(c-k), index 1..c
    std::vector<long long> config_size;  // T_k, index 0..c-1
    std::vector<long long> assign_floor; // Q_k = floor(2 t^(c-k) / c), index 1..c-1

    static GeneralParams compute(int c, long long n);
};

// Structural counters exposed for the acceptance suite.
struct GeneralAudit {
    long long blocked_lemma_checks = 0;
    long long blocked_lemma_failures = 0;
    long long core_color_checks = 0;   // core chain colors pairwise distinct
    long long core_color_failures = 0;
    long long trees_built = 0;
    long long child_count_failures = 0;
    long long assignment_floor_failures = 0;
    std::vector<long long> build_insertions; // per level, construction edges used
};

// The full lower-bound machinery for any constant c: 0-configuration of
// alpha*n colored nodes, k-trees merged from same-assigned (k-1)-trees,
// reset phases with Y1/Y2 classification and wasted-insertion charging,
// and c-tree links between equal-assigned (c-1)-trees.
class GeneralAdversary : public AdversaryGenerator {
public:
    GeneralAdversary(int c, long long n);

    const DynamicGraph& initial_graph() const override { return initial_; }
    std::optional<UpdateOp> next(const ColoringAlgorithm& alg) override;
    void observe(const UpdateOp& op, const std::vector<Recoloring>& response,
                 const ColoringAlgorithm& alg) override;
    int colors() const override { return params_.c; }

    const GeneralParams& params() const { return params_; }
    const GeneralAudit& audit() const { return audit_; }
    long long valid_trees(int level) const { return valid_count_[level]; }
    bool config_complete(int level) const { return complete_[level]; }

private:
    struct ATree {
        VertexId root = -1;
        std::vector<VertexId> child_roots; // the M_k - 1 attached (k-1)-roots
        int core = -1;                     // index into F_[level-1]; -1 at level 1
        int core_parent = -1;              // tree one level up rooted at `root`
        std::vector<int> parts;            // all merged (k-1)-trees incl. core
        Color assigned = -1;
        long long assigned_live = 0;
        long long assigned_at = 0;
        bool alive = false;
        bool viol = false;
        bool valid_cache = true;
    };

    struct BuildGroup {
        VertexId head;
        std::vector<VertexId> children;
        std::vector<int> part_indices; // F_[k-1] indices, head first (level >= 2)
        std::size_t linked = 0;
        bool created = false;
    };

    void assign_color(int level, int idx, const ColoringAlgorithm& alg);
    void set_viol(int level, int idx, bool v);
    void refresh_valid(int level, int idx);
    bool plan_build(int level, const ColoringAlgorithm& alg);
    void complete_group(int level, BuildGroup& g, const ColoringAlgorithm& alg);
    void do_reset(int level, const ColoringAlgorithm& alg);
    std::optional<UpdateOp> ensure_separated(VertexId a, VertexId b);
    int find_invalid_level() const;
    long long witness_charge(int level, const ATree& tree) const;

    GeneralParams params_;
    GeneralAudit audit_;
    DynamicGraph initial_;
    DynamicGraph current_;

    std::vector<std::vector<ATree>> F_;  // index 1..c-1
    std::vector<long long> valid_count_; // alive trees with valid_cache, per level
    std::vector<bool> complete_;
    std::map<VertexId, std::vector<std::pair<int, int>>> child_of_;
    std::map<std::pair<VertexId, VertexId>, int> edge_tag_;

    int build_level_ = 1;
    std::vector<BuildGroup> build_groups_;
    std::size_t build_cursor_ = 0;
    std::vector<UpdateOp> pending_;
    std::size_t pending_pos_ = 0;
};

std::unique_ptr<GeneralAdversary> make_general_adversary(int c, long long n);

} // namespace recolor
