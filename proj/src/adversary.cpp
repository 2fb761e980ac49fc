#include "recolor/adversary.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace recolor {

ArenaResult arena_run(AdversaryGenerator& gen, ColoringAlgorithm& alg, long long m)
{
    alg.init(gen.initial_graph());
    for (VertexId v : alg.graph().vertices()) {
        Color c = alg.color_of(v);
        if (c < 1 || c > gen.colors())
            throw Error(ErrorCode::ColorBudgetExceeded,
                        "initial color " + std::to_string(c) + " outside {1.."
                            + std::to_string(gen.colors()) + "}");
    }
    ArenaResult result;
    for (VertexId v : gen.initial_graph().vertices()) {
        std::vector<VertexId> earlier;
        for (VertexId u : gen.initial_graph().neighbors(v))
            if (u < v)
                earlier.push_back(u);
        result.setup.push_back(UpdateOp::insert_vertex(v, std::move(earlier)));
    }
    long long deferred = 0; // deletion-response recolorings, charged to the next insertion
    for (long long i = 0; i < m; ++i) {
        std::optional<UpdateOp> op = gen.next(alg);
        if (!op)
            break;
        std::vector<Recoloring> response = alg.apply(*op);
        bool insertion
            = op->kind == OpKind::InsertEdge || op->kind == OpKind::InsertVertex;
        long long counted = 0;
        for (const Recoloring& r : response) {
            if (r.new_color < 1 || r.new_color > gen.colors())
                throw Error(ErrorCode::ColorBudgetExceeded,
                            "recoloring to " + std::to_string(r.new_color));
            if (r.new_color != r.old_color)
                ++counted;
            // Incremental properness: edges incident to recolored vertices.
            for (VertexId u : alg.graph().neighbors(r.v))
                if (alg.color_of(u) == alg.color_of(r.v))
                    throw Error(ErrorCode::InvariantViolation,
                                "opponent left a monochromatic edge at "
                                    + std::to_string(r.v));
        }
        if (op->kind == OpKind::InsertEdge
            && alg.color_of(op->a) == alg.color_of(op->b))
            throw Error(ErrorCode::InvariantViolation, "opponent left the new edge improper");
        if (insertion) {
            gen.ledger().observed_recolorings += counted + deferred;
            deferred = 0;
            gen.ledger().insertions++;
        } else {
            deferred += counted;
            gen.ledger().deletions++;
        }
        gen.observe(*op, response, alg);
        result.emitted.push_back(*op);
        result.updates_applied++;
    }
    gen.ledger().observed_recolorings += deferred;
    result.ledger = gen.ledger();
    return result;
}

// --- c = 2: three stars ---------------------------------------------------

StarsC2Generator::StarsC2Generator(long long n)
    : n_(n)
{
    if (n < 9 || n % 3 != 0)
        throw Error(ErrorCode::ValidationError, "n must be a multiple of 3, n >= 9");
    star_size_ = n / 3;
    for (int star = 0; star < 3; ++star) {
        VertexId root = (VertexId)(star * star_size_);
        roots_.push_back(root);
        initial_.insert_vertex(root, {});
        for (long long leaf = 1; leaf < star_size_; ++leaf)
            initial_.insert_vertex((VertexId)(root + leaf), {root});
    }
}

std::optional<UpdateOp> StarsC2Generator::next(const ColoringAlgorithm& alg)
{
    if (pending_cut_) {
        auto [u, v] = *pending_cut_;
        pending_cut_.reset();
        return UpdateOp::delete_edge(u, v);
    }
    std::set<Color> seen;
    for (VertexId v : alg.graph().vertices())
        seen.insert(alg.color_of(v));
    if (seen.size() > 2)
        throw Error(ErrorCode::NotTwoColored,
                    std::to_string(seen.size()) + " colors observed");
    // Two of the three stars share a color scheme; with two colors the
    // scheme is determined by the root.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (alg.color_of(roots_[i]) == alg.color_of(roots_[j])) {
                pending_cut_ = {{roots_[i], roots_[j]}};
                return UpdateOp::insert_edge(roots_[i], roots_[j]);
            }
    throw Error(ErrorCode::InvariantViolation, "no two star roots share a color");
}

void StarsC2Generator::observe(const UpdateOp& op, const std::vector<Recoloring>&,
                               const ColoringAlgorithm&)
{
    if (op.kind == OpKind::InsertEdge) {
        ledger_.links++;
        ledger_.wasted_insertions++; // every link is cut right after
        ledger_.charged_recolorings += star_size_;
    }
}

// --- c = 3: 1-trees and 2-trees -------------------------------------------

C3Generator::C3Generator(long long n)
    : n_(n)
{
    t_ = 1;
    while (t_ * t_ * t_ < n)
        ++t_;
    if (t_ * t_ * t_ != n || t_ < 27)
        throw Error(ErrorCode::ValidationError,
                    "n must be a perfect cube with n^(1/3) >= 27");
    tree_size_ = t_ * t_; // root plus n^(2/3) - 1 leaves
    for (long long tree = 0; tree < t_; ++tree) {
        VertexId root = (VertexId)(tree * tree_size_);
        initial_.insert_vertex(root, {});
        for (long long leaf = 1; leaf < tree_size_; ++leaf)
            initial_.insert_vertex((VertexId)(root + leaf), {root});
        trees_.push_back(OneTree{root});
    }
    current_ = initial_;
}

bool C3Generator::is_one_tree_edge(VertexId u, VertexId v) const
{
    if (tree_of(u) != tree_of(v))
        return false;
    return u % tree_size_ == 0 || v % tree_size_ == 0;
}

void C3Generator::start_cycle(const ColoringAlgorithm& alg)
{
    // Majority leaf color per 1-tree, ties to the smallest color.
    for (OneTree& tree : trees_) {
        std::map<Color, long long> freq;
        for (long long leaf = 1; leaf < tree_size_; ++leaf)
            freq[alg.color_of((VertexId)(tree.root + leaf))]++;
        Color best = -1;
        long long best_count = 0;
        for (const auto& [c, count] : freq)
            if (count > best_count) {
                best = c;
                best_count = count;
            }
        tree.assigned = best;
        tree.live = best_count;
        tree.assigned_at = best_count;
    }
    std::map<Color, long long> by_color;
    for (const OneTree& tree : trees_)
        by_color[tree.assigned]++;
    Color x = -1;
    long long most = 0;
    for (const auto& [c, count] : by_color)
        if (count > most) {
            x = c;
            most = count;
        }
    used_trees_.clear();
    for (int i = 0; i < (int)trees_.size() && (int)used_trees_.size() < 9; ++i)
        if (trees_[i].assigned == x)
            used_trees_.push_back(i);
    if (used_trees_.size() < 9)
        throw Error(ErrorCode::InvariantViolation,
                    "fewer than n^(1/3)/3 trees share an assigned color");

    // Three 2-trees of n^(1/3)/9 1-trees each (three at this scale).
    plan_.clear();
    plan_pos_ = 0;
    two_tree_roots_.clear();
    for (int g = 0; g < 3; ++g) {
        VertexId head = trees_[used_trees_[3 * g]].root;
        two_tree_roots_.push_back(head);
        for (int k = 1; k < 3; ++k)
            plan_.push_back(
                UpdateOp::insert_edge(head, trees_[used_trees_[3 * g + k]].root));
    }
    links_done_ = 0;
    cycle_updates_ = 0;
    cycle_edges_.clear();
    phase_ = Phase::Build;
}

std::optional<UpdateOp> C3Generator::ensure_link(VertexId a, VertexId b)
{
    // The structure is a forest; one cut on the unique path disconnects.
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
    VertexId walk = b;
    while (parent[walk] != -1) {
        VertexId p = parent[walk];
        if (!is_one_tree_edge(walk, p))
            return UpdateOp::delete_edge(std::min(walk, p), std::max(walk, p));
        walk = p;
    }
    throw Error(ErrorCode::InvariantViolation,
                "path between roots uses only 1-tree edges");
}

std::optional<UpdateOp> C3Generator::next(const ColoringAlgorithm& alg)
{
    while (true) {
        switch (phase_) {
        case Phase::Assign:
            start_cycle(alg);
            continue;
        case Phase::Build: {
            if (plan_pos_ >= plan_.size()) {
                phase_ = Phase::Link;
                continue;
            }
            const UpdateOp& op = plan_[plan_pos_];
            if (auto cut = ensure_link(op.a, op.b))
                return cut;
            plan_pos_++;
            return op;
        }
        case Phase::Link: {
            if (links_done_ >= t_ / 6) {
                phase_ = Phase::Teardown;
                continue;
            }
            // Valid 2-trees exclude X from their roots, so two of the three
            // roots share one of the remaining two colors.
            for (std::size_t i = 0; i < two_tree_roots_.size(); ++i)
                for (std::size_t j = i + 1; j < two_tree_roots_.size(); ++j) {
                    VertexId a = two_tree_roots_[i], b = two_tree_roots_[j];
                    if (alg.color_of(a) != alg.color_of(b))
                        continue;
                    if (auto cut = ensure_link(a, b))
                        return cut;
                    links_done_++;
                    return UpdateOp::insert_edge(a, b);
                }
            throw Error(ErrorCode::InvariantViolation,
                        "no two 2-tree roots share a color");
        }
        case Phase::Teardown: {
            if (!cycle_edges_.empty()) {
                auto [u, v] = cycle_edges_.back();
                cycle_edges_.pop_back();
                if (current_.has_edge(u, v))
                    return UpdateOp::delete_edge(u, v);
                continue;
            }
            cycles_++;
            phase_ = Phase::Assign;
            continue;
        }
        }
    }
}

void C3Generator::observe(const UpdateOp& op, const std::vector<Recoloring>& response,
                          const ColoringAlgorithm& alg)
{
    if (op.kind == OpKind::InsertEdge && is_one_tree_edge(op.a, op.b))
        throw Error(ErrorCode::InvariantViolation, "generator re-inserted a 1-tree edge");
    if (op.kind == OpKind::DeleteEdge && is_one_tree_edge(op.a, op.b))
        throw Error(ErrorCode::InvariantViolation, "generator cut a 1-tree edge");
    current_.apply(op);
    cycle_updates_++;
    if (cycle_updates_ > t_ + t_ / 3)
        throw Error(ErrorCode::InvariantViolation, "cycle exceeded its update budget");
    if (op.kind == OpKind::InsertEdge) {
        cycle_edges_.push_back({op.a, op.b});
        if (phase_ == Phase::Link) {
            ledger_.links++;
            ledger_.wasted_insertions++;
            ledger_.charged_recolorings += t_ / 9;
        } else {
            ledger_.wasted_insertions++; // construction edges are torn down too
        }
    }

    // Track invalidations of the 1-trees in play.
    for (const Recoloring& r : response) {
        int tree = tree_of(r.v);
        if (tree < 0 || tree >= (int)trees_.size())
            continue;
        OneTree& one = trees_[tree];
        if (r.v == one.root || one.assigned < 0)
            continue;
        if (r.old_color == one.assigned)
            one.live--;
        if (r.new_color == one.assigned)
            one.live++;
    }
    if (phase_ == Phase::Build || phase_ == Phase::Link) {
        for (int idx : used_trees_) {
            if (trees_[idx].live == 0) {
                // Invalidating a 1-tree costs at least (n^(2/3) - 1)/2.
                ledger_.invalidations++;
                ledger_.charged_recolorings += trees_[idx].assigned_at;
                phase_ = Phase::Teardown;
                break;
            }
        }
    }
}

} // namespace recolor
