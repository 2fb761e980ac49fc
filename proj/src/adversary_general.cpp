#include <algorithm>
#include <map>

#include "recolor/adversary.hpp"

namespace recolor {

namespace {
    long long powll(long long base, long long exp)
    {
        long long r = 1;
        for (long long i = 0; i < exp; ++i)
            r *= base;
        return r;
    }
} // namespace

GeneralParams GeneralParams::compute(int c, long long n)
{
    if (c < 2)
        throw Error(ErrorCode::ValidationError, "c must be >= 2");
    GeneralParams p;
    p.c = c;
    p.n = n;
    long long degree = (long long)c * (c - 1) / 2;
    p.t = 1;
    while (powll(p.t, degree) < n)
        ++p.t;
    if (powll(p.t, degree) != n || p.t < 2)
        throw Error(ErrorCode::ValidationError,
                    "n must be t^(c(c-1)/2) for an integer t >= 2");
    p.alpha = 2LL * (c + 1) * powll(4LL * c, c - 1);
    p.merge_count.assign(c + 1, 0);
    for (int k = 1; k <= c; ++k)
        p.merge_count[k] = 2 * powll(p.t, c - k); // 2 n^(2(c-k)/(c(c-1)))
    p.config_size.assign(c, 0);
    for (int k = 0; k <= c - 1; ++k)
        p.config_size[k] = 2LL * (c + 1) * powll(4LL * c, c - 1 - k)
            * powll(p.t, (long long)(c - k) * (c - k - 1) / 2);
    p.assign_floor.assign(c, 0);
    for (int k = 1; k <= c - 1; ++k)
        p.assign_floor[k] = 2 * powll(p.t, c - k) / c;
    return p;
}

GeneralAdversary::GeneralAdversary(int c, long long n)
    : params_(GeneralParams::compute(c, n))
{
    for (VertexId v = 0; v < (VertexId)params_.config_size[0]; ++v)
        initial_.insert_vertex(v, {});
    current_ = initial_;
    F_.resize(c);
    valid_count_.assign(c, 0);
    complete_.assign(c, false);
    complete_[0] = true; // the 0-configuration is the initial vertex set
    audit_.build_insertions.assign(c + 1, 0);
}

void GeneralAdversary::refresh_valid(int level, int idx)
{
    ATree& tree = F_[level][idx];
    bool core_ok = true;
    if (level > 1 && tree.core >= 0)
        core_ok = F_[level - 1][tree.core].valid_cache;
    bool now = !tree.viol && core_ok;
    if (now == tree.valid_cache)
        return;
    tree.valid_cache = now;
    if (tree.alive)
        valid_count_[level] += now ? 1 : -1;
    if (tree.core_parent >= 0 && level + 1 <= params_.c - 1)
        refresh_valid(level + 1, tree.core_parent);
}

void GeneralAdversary::set_viol(int level, int idx, bool v)
{
    ATree& tree = F_[level][idx];
    if (tree.viol == v)
        return;
    tree.viol = v;
    refresh_valid(level, idx);
}

void GeneralAdversary::assign_color(int level, int idx, const ColoringAlgorithm& alg)
{
    ATree& tree = F_[level][idx];
    std::map<Color, long long> freq;
    for (VertexId u : tree.child_roots)
        freq[alg.color_of(u)]++;
    Color best = -1;
    long long best_count = 0;
    for (const auto& [col, count] : freq)
        if (count > best_count) {
            best = col;
            best_count = count;
        }
    tree.assigned = best;
    tree.assigned_live = best_count;
    tree.assigned_at = best_count;
    if (best_count < params_.assign_floor[level])
        audit_.assignment_floor_failures++;
    set_viol(level, idx, best_count == 0);
}

bool GeneralAdversary::plan_build(int level, const ColoringAlgorithm& alg)
{
    long long mk = params_.merge_count[level];
    long long need = params_.config_size[level] * mk;
    std::map<Color, std::vector<VertexId>> classes;
    std::map<VertexId, int> tree_index;
    if (level == 1) {
        for (VertexId v : current_.vertices())
            classes[alg.color_of(v)].push_back(v);
    } else {
        for (int i = 0; i < (int)F_[level - 1].size(); ++i) {
            const ATree& tr = F_[level - 1][i];
            if (tr.alive && tr.valid_cache) {
                classes[tr.assigned].push_back(tr.root);
                tree_index[tr.root] = i;
            }
        }
    }
    Color pick = -1;
    std::size_t best = 0;
    for (const auto& [col, members] : classes)
        if (members.size() > best) {
            pick = col;
            best = members.size();
        }
    if ((long long)best < need)
        return false;
    std::vector<VertexId>& chosen = classes[pick];
    std::sort(chosen.begin(), chosen.end());
    chosen.resize(need);
    build_groups_.clear();
    for (long long g = 0; g < params_.config_size[level]; ++g) {
        BuildGroup group;
        group.head = chosen[g * mk];
        for (long long k = 1; k < mk; ++k)
            group.children.push_back(chosen[g * mk + k]);
        if (level >= 2) {
            group.part_indices.push_back(tree_index.at(group.head));
            for (VertexId ch : group.children)
                group.part_indices.push_back(tree_index.at(ch));
        }
        build_groups_.push_back(std::move(group));
    }
    return true;
}

void GeneralAdversary::complete_group(int level, BuildGroup& g, const ColoringAlgorithm& alg)
{
    ATree tree;
    tree.root = g.head;
    tree.child_roots = g.children;
    tree.alive = true;
    if (level >= 2) {
        tree.core = g.part_indices[0];
        tree.parts = g.part_indices;
    }
    int idx = (int)F_[level].size();
    F_[level].push_back(std::move(tree));
    if (level >= 2) {
        for (int part : F_[level][idx].parts) {
            // The merged trees live on inside this one; the core carries
            // the upward pointer for violation propagation.
            if (part == F_[level][idx].core)
                F_[level - 1][part].core_parent = idx;
        }
    }
    for (VertexId ch : F_[level][idx].child_roots)
        child_of_[ch].push_back({level, idx});
    valid_count_[level]++; // fresh trees are valid; assign_color may flip it
    assign_color(level, idx, alg);
    audit_.trees_built++;
    if ((long long)F_[level][idx].child_roots.size() != params_.merge_count[level] - 1)
        audit_.child_count_failures++;
    g.created = true;
}

long long GeneralAdversary::witness_charge(int level, const ATree& tree) const
{
    // Deepest accountable violation: own violation, a core-chain violation,
    // or an invalid part one level down.
    if (level > 1 && tree.core >= 0) {
        const ATree& core = F_[level - 1][tree.core];
        if (!core.valid_cache)
            return witness_charge(level - 1, core);
    }
    if (tree.viol)
        return tree.assigned_at;
    for (int part : tree.parts) {
        const ATree& sub = F_[level - 1][part];
        if (!sub.valid_cache)
            return witness_charge(level - 1, sub);
    }
    return tree.assigned_at; // defensive; an invalid tree has a witness above
}

void GeneralAdversary::do_reset(int level, const ColoringAlgorithm& alg)
{
    std::vector<int> y1, y2;
    for (int i = 0; i < (int)F_[level].size(); ++i) {
        const ATree& tree = F_[level][i];
        if (!tree.alive || tree.valid_cache)
            continue;
        bool core_ok = true;
        if (level > 1 && tree.core >= 0)
            core_ok = F_[level - 1][tree.core].valid_cache;
        bool parts_ok = true;
        if (level > 1)
            for (int part : tree.parts)
                if (!F_[level - 1][part].valid_cache) {
                    parts_ok = false;
                    break;
                }
        if (tree.viol && core_ok && parts_ok)
            y1.push_back(i);
        else
            y2.push_back(i);
    }

    long long charged = 0;
    int case_id;
    int destroy_from;
    if ((long long)y1.size() > (long long)y2.size()) {
        case_id = 1;
        destroy_from = level + 1;
        for (int i : y1) {
            charged += F_[level][i].assigned_at;
            assign_color(level, i, alg); // color reassignment revalidates Y1
        }
    } else {
        case_id = 2;
        destroy_from = level;
        for (int i : y2)
            charged += witness_charge(level, F_[level][i]);
    }

    for (int k = destroy_from; k <= params_.c - 1; ++k) {
        for (ATree& tree : F_[k])
            if (tree.alive) {
                if (tree.valid_cache)
                    valid_count_[k]--;
                tree.alive = false;
                if (k >= 2 && tree.core >= 0)
                    F_[k - 1][tree.core].core_parent = -1;
            }
        complete_[k] = false;
    }

    long long wasted = 0;
    for (const auto& [edge, tag] : edge_tag_)
        if (tag >= destroy_from) {
            pending_.push_back(UpdateOp::delete_edge(edge.first, edge.second));
            ++wasted;
        }
    ledger_.wasted_insertions += wasted;
    ledger_.charged_recolorings += charged;
    ledger_.invalidations += (long long)y1.size() + (long long)y2.size();
    ledger_.resets.push_back({level, case_id, wasted, charged});
    build_level_ = std::max(1, destroy_from);
    build_groups_.clear();
}

std::optional<UpdateOp> GeneralAdversary::ensure_separated(VertexId a, VertexId b)
{
    std::vector<VertexId> order{a};
    std::map<VertexId, VertexId> parent{{a, -1}};
    bool reach = false;
    for (std::size_t i = 0; i < order.size() && !reach; ++i)
        for (VertexId u : current_.neighbors(order[i])) {
            if (parent.count(u))
                continue;
            parent[u] = order[i];
            order.push_back(u);
            if (u == b) {
                reach = true;
                break;
            }
        }
    if (!reach)
        return std::nullopt;
    // Forest: cutting any edge of the unique path separates the roots.
    return UpdateOp::delete_edge(std::min(b, parent[b]), std::max(b, parent[b]));
}

int GeneralAdversary::find_invalid_level() const
{
    for (int k = 1; k <= params_.c - 1; ++k)
        if (complete_[k] && 2 * valid_count_[k] < params_.config_size[k])
            return k;
    return 0;
}

std::optional<UpdateOp> GeneralAdversary::next(const ColoringAlgorithm& alg)
{
    while (true) {
        if (pending_pos_ < pending_.size())
            return pending_[pending_pos_++];
        pending_.clear();
        pending_pos_ = 0;

        if (int j = find_invalid_level()) {
            do_reset(j, alg);
            continue;
        }

        if (complete_[params_.c - 1]) {
            // Two valid (c-1)-trees with the same assigned color; their
            // roots must share their actual color (blocked-color lemma).
            std::map<Color, std::vector<VertexId>> by_assigned;
            for (const ATree& tree : F_[params_.c - 1])
                if (tree.alive && tree.valid_cache)
                    by_assigned[tree.assigned].push_back(tree.root);
            for (auto& [col, roots] : by_assigned) {
                if (roots.size() < 2)
                    continue;
                std::sort(roots.begin(), roots.end());
                VertexId a = roots[0], b = roots[1];
                audit_.blocked_lemma_checks++;
                if (alg.color_of(a) != alg.color_of(b))
                    audit_.blocked_lemma_failures++;
                // Core chain of a valid tree carries pairwise distinct
                // assigned colors, which is what blocks the roots.
                for (VertexId root : {a, b}) {
                    audit_.core_color_checks++;
                    std::set<Color> chain;
                    int level = params_.c - 1;
                    int idx = -1;
                    for (int i = 0; i < (int)F_[level].size(); ++i)
                        if (F_[level][i].alive && F_[level][i].root == root)
                            idx = i;
                    while (idx >= 0 && level >= 1) {
                        if (!chain.insert(F_[level][idx].assigned).second)
                            audit_.core_color_failures++;
                        idx = F_[level][idx].core;
                        --level;
                    }
                }
                if (auto cut = ensure_separated(a, b))
                    return cut;
                ledger_.links++;
                return UpdateOp::insert_edge(a, b);
            }
            throw Error(ErrorCode::ValidityExhausted,
                        "no two valid (c-1)-trees share an assigned color");
        }

        int level = build_level_;
        if (build_groups_.empty()) {
            if (!plan_build(level, alg))
                throw Error(ErrorCode::ValidityExhausted,
                            "not enough valid material for level "
                                + std::to_string(level));
            build_cursor_ = 0;
        }
        while (build_cursor_ < build_groups_.size()) {
            BuildGroup& g = build_groups_[build_cursor_];
            if (g.linked == g.children.size()) {
                if (!g.created)
                    complete_group(level, g, alg);
                build_cursor_++;
                continue;
            }
            VertexId child = g.children[g.linked];
            if (auto cut = ensure_separated(g.head, child))
                return cut;
            g.linked++;
            return UpdateOp::insert_edge(g.head, child);
        }
        complete_[level] = true;
        build_groups_.clear();
        if (level + 1 <= params_.c - 1)
            build_level_ = level + 1;
    }
}

void GeneralAdversary::observe(const UpdateOp& op, const std::vector<Recoloring>& response,
                               const ColoringAlgorithm& alg)
{
    (void)alg;
    current_.apply(op);
    if (op.kind == OpKind::InsertEdge) {
        // Construction edges carry the level they were built for; c-links
        // happen only once every lower config is complete.
        int tag = complete_[params_.c - 1] ? params_.c : build_level_;
        edge_tag_[{std::min(op.a, op.b), std::max(op.a, op.b)}] = tag;
        audit_.build_insertions[tag]++;
    } else if (op.kind == OpKind::DeleteEdge) {
        edge_tag_.erase({std::min(op.a, op.b), std::max(op.a, op.b)});
    }
    for (const Recoloring& r : response) {
        auto it = child_of_.find(r.v);
        if (it == child_of_.end())
            continue;
        for (const auto& [level, idx] : it->second) {
            ATree& tree = F_[level][idx];
            if (!tree.alive || tree.assigned < 0)
                continue;
            if (r.old_color == tree.assigned) {
                if (--tree.assigned_live == 0)
                    set_viol(level, idx, true);
            }
            if (r.new_color == tree.assigned) {
                if (tree.assigned_live++ == 0)
                    set_viol(level, idx, false);
            }
        }
    }
}

std::unique_ptr<GeneralAdversary> make_general_adversary(int c, long long n)
{
    return std::make_unique<GeneralAdversary>(c, n);
}

} // namespace recolor
