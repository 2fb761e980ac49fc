#include "recolor/baselines.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "recolor/engine.hpp"

namespace recolor {

const char* baseline_kind_name(BaselineKind k)
{
    switch (k) {
    case BaselineKind::ExactRepair: return "exact";
    case BaselineKind::BfsFlip: return "bfsflip";
    case BaselineKind::GreedyRepair: return "greedy";
    }
    return "?";
}

BaselineKind baseline_kind_from_name(const std::string& name)
{
    if (name == "exact")
        return BaselineKind::ExactRepair;
    if (name == "bfsflip")
        return BaselineKind::BfsFlip;
    if (name == "greedy")
        return BaselineKind::GreedyRepair;
    throw Error(ErrorCode::ValidationError, "unknown baseline '" + name + "'");
}

namespace {

    class BaselineBase : public ColoringAlgorithm {
    public:
        explicit BaselineBase(int c)
            : c_(c)
        {
            if (c < 1)
                throw Error(ErrorCode::ValidationError, "c must be >= 1");
        }

        void init(const DynamicGraph& g) override
        {
            g_ = g;
            color_.clear();
            for (VertexId v : g_.vertices())
                set_color_quiet(v, 0);
            // BFS 2-coloring per component, first-fit if that is too few.
            std::set<VertexId> unseen(g_.vertices().begin(), g_.vertices().end());
            while (!unseen.empty()) {
                VertexId root = *unseen.begin();
                std::deque<VertexId> q{root};
                unseen.erase(root);
                set_color_quiet(root, 1);
                while (!q.empty()) {
                    VertexId v = q.front();
                    q.pop_front();
                    for (VertexId u : g_.neighbors(v)) {
                        if (!unseen.count(u))
                            continue;
                        Color want = color_of(v) == 1 ? 2 : 1;
                        if (c_ < 2)
                            want = 1;
                        set_color_quiet(u, want);
                        unseen.erase(u);
                        q.push_back(u);
                    }
                }
            }
            for (VertexId v : g_.vertices())
                if (conflicted(v))
                    repair_component(v, nullptr);
        }

        std::vector<Recoloring> apply(const UpdateOp& op) override
        {
            std::vector<Recoloring> out;
            g_.apply(op);
            switch (op.kind) {
            case OpKind::InsertVertex: {
                Color c = first_fit(op.a);
                if (c > 0) {
                    set_color(op.a, c, out);
                } else {
                    set_color_quiet(op.a, 0);
                    repair_component(op.a, &out);
                }
                break;
            }
            case OpKind::InsertEdge:
                if (color_of(op.a) == color_of(op.b))
                    repair_edge(op.a, op.b, out);
                break;
            case OpKind::DeleteVertex:
                if ((std::size_t)op.a < color_.size())
                    color_[op.a] = kNoColor;
                break;
            case OpKind::DeleteEdge:
                break; // deletions never invalidate the coloring
            }
            return out;
        }

        Color color_of(VertexId v) const override
        {
            return (std::size_t)v < color_.size() ? color_[v] : kNoColor;
        }

        const DynamicGraph& graph() const override { return g_; }

    protected:
        virtual void repair_edge(VertexId u, VertexId v, std::vector<Recoloring>& out) = 0;

        // Lowest color in {1..c} not used by any neighbor; 0 if none.
        Color first_fit(VertexId v) const
        {
            std::vector<char> used(c_ + 1, 0);
            for (VertexId u : g_.neighbors(v)) {
                Color cu = color_of(u);
                if (cu >= 1 && cu <= c_)
                    used[cu] = 1;
            }
            for (Color c = 1; c <= c_; ++c)
                if (!used[c])
                    return c;
            return 0;
        }

        bool conflicted(VertexId v) const
        {
            Color cv = color_of(v);
            for (VertexId u : g_.neighbors(v))
                if (color_of(u) == cv)
                    return true;
            return false;
        }

        void set_color_quiet(VertexId v, Color c)
        {
            if ((std::size_t)v >= color_.size())
                color_.resize(v + 1, kNoColor);
            color_[v] = c;
        }

        void set_color(VertexId v, Color c, std::vector<Recoloring>& out)
        {
            Color old = color_of(v);
            if (old == c)
                return;
            set_color_quiet(v, c);
            out.push_back({v, old, c});
        }

        std::vector<VertexId> component_of(VertexId root) const
        {
            std::vector<VertexId> comp{root};
            std::set<VertexId> seen{root};
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (VertexId u : g_.neighbors(comp[i]))
                    if (seen.insert(u).second)
                        comp.push_back(u);
            std::sort(comp.begin(), comp.end());
            return comp;
        }

        // Minimum-recoloring proper c-coloring of a tree component via DP;
        // colors 1..c, current color 0 means "always pay".
        void tree_dp_repair(const std::vector<VertexId>& comp, std::vector<Recoloring>& out)
        {
            VertexId root = comp[0];
            std::vector<VertexId> order{root};
            std::map<VertexId, VertexId> parent{{root, -1}};
            for (std::size_t i = 0; i < order.size(); ++i)
                for (VertexId u : g_.neighbors(order[i]))
                    if (!parent.count(u)) {
                        parent[u] = order[i];
                        order.push_back(u);
                    }
            if (order.size() != comp.size())
                throw Error(ErrorCode::InvariantViolation, "component scan mismatch");

            std::map<VertexId, std::vector<long long>> cost;
            std::map<VertexId, std::vector<int>> best_child_choice; // unused marker
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                VertexId v = *it;
                std::vector<long long> cv(c_ + 1, 0);
                for (Color k = 1; k <= c_; ++k)
                    cv[k] = color_of(v) == k ? 0 : 1;
                for (VertexId u : g_.neighbors(v)) {
                    if (parent[u] != v)
                        continue;
                    const std::vector<long long>& cu = cost[u];
                    for (Color k = 1; k <= c_; ++k) {
                        long long best = -1;
                        for (Color k2 = 1; k2 <= c_; ++k2) {
                            if (k2 == k)
                                continue;
                            if (best < 0 || cu[k2] < best)
                                best = cu[k2];
                        }
                        cv[k] += best;
                    }
                }
                cost[v] = std::move(cv);
            }
            // Reconstruct top-down, lowest color on ties.
            std::map<VertexId, Color> chosen;
            for (VertexId v : order) {
                const std::vector<long long>& cv = cost[v];
                Color banned = parent[v] >= 0 ? chosen[parent[v]] : 0;
                Color pick = 0;
                for (Color k = 1; k <= c_; ++k) {
                    if (k == banned)
                        continue;
                    if (pick == 0 || cv[k] < cv[pick])
                        pick = k;
                }
                if (pick == 0)
                    throw Error(ErrorCode::ColorBudgetExceeded, "c too small for tree repair");
                chosen[v] = pick;
            }
            for (VertexId v : order)
                set_color(v, chosen[v], out);
        }

        void brute_force_repair(const std::vector<VertexId>& comp, std::vector<Recoloring>& out)
        {
            if (comp.size() > 16)
                throw Error(ErrorCode::TooLarge,
                            "non-tree component too large for exact repair");
            int n = (int)comp.size();
            std::vector<Color> assign(n, 1), best;
            long long best_cost = -1;
            auto cost_of = [&]() {
                long long cost = 0;
                for (int i = 0; i < n; ++i)
                    if (assign[i] != color_of(comp[i]))
                        ++cost;
                return cost;
            };
            auto proper = [&]() {
                for (int i = 0; i < n; ++i)
                    for (VertexId u : g_.neighbors(comp[i])) {
                        auto it = std::lower_bound(comp.begin(), comp.end(), u);
                        if (it != comp.end() && *it == u
                            && assign[i] == assign[it - comp.begin()] && comp[i] < u)
                            return false;
                    }
                return true;
            };
            while (true) {
                if (proper()) {
                    long long cost = cost_of();
                    if (best_cost < 0 || cost < best_cost) {
                        best_cost = cost;
                        best = assign;
                    }
                }
                int i = 0;
                while (i < n && assign[i] == c_)
                    assign[i++] = 1;
                if (i == n)
                    break;
                assign[i]++;
            }
            if (best_cost < 0)
                throw Error(ErrorCode::ColorBudgetExceeded, "component not c-colorable");
            for (int i = 0; i < n; ++i)
                set_color(comp[i], best[i], out);
        }

        bool is_tree(const std::vector<VertexId>& comp) const
        {
            long long deg = 0;
            for (VertexId v : comp)
                deg += g_.degree(v);
            return deg / 2 == (long long)comp.size() - 1;
        }

        void repair_component(VertexId seed, std::vector<Recoloring>* out)
        {
            std::vector<Recoloring> scratch;
            std::vector<Recoloring>& sink = out ? *out : scratch;
            std::vector<VertexId> comp = component_of(seed);
            if (is_tree(comp))
                tree_dp_repair(comp, sink);
            else
                brute_force_repair(comp, sink);
        }

        int c_;
        DynamicGraph g_;
        std::vector<Color> color_;
    };

    class ExactRepairBaseline final : public BaselineBase {
    public:
        using BaselineBase::BaselineBase;
        std::string name() const override { return "exact"; }

    protected:
        void repair_edge(VertexId u, VertexId v, std::vector<Recoloring>& out) override
        {
            (void)v;
            repair_component(u, &out);
        }
    };

    class BfsFlipBaseline final : public BaselineBase {
    public:
        explicit BfsFlipBaseline(int c)
            : BaselineBase(c)
        {
            if (c != 2)
                throw Error(ErrorCode::ValidationError, "bfsflip requires c = 2");
        }
        std::string name() const override { return "bfsflip"; }

    protected:
        void repair_edge(VertexId u, VertexId v, std::vector<Recoloring>& out) override
        {
            (void)v;
            std::vector<VertexId> comp = component_of(u);
            // Two proper 2-colorings per component; keep the cheaper one.
            std::map<VertexId, int> side;
            std::deque<VertexId> q{comp[0]};
            side[comp[0]] = 0;
            while (!q.empty()) {
                VertexId x = q.front();
                q.pop_front();
                for (VertexId y : g_.neighbors(x)) {
                    auto it = side.find(y);
                    if (it == side.end()) {
                        side[y] = side[x] ^ 1;
                        q.push_back(y);
                    } else if (it->second == side[x]) {
                        throw Error(ErrorCode::OddCycleDetected, "component not bipartite");
                    }
                }
            }
            long long diff0 = 0, diff1 = 0;
            for (const auto& [x, s] : side) {
                diff0 += color_of(x) != (s == 0 ? 1 : 2);
                diff1 += color_of(x) != (s == 0 ? 2 : 1);
            }
            bool flip = diff1 < diff0;
            for (const auto& [x, s] : side)
                set_color(x, ((s ^ (flip ? 1 : 0)) == 0) ? 1 : 2, out);
        }
    };

    class GreedyRepairBaseline final : public BaselineBase {
    public:
        using BaselineBase::BaselineBase;
        std::string name() const override { return "greedy"; }

    protected:
        void repair_edge(VertexId u, VertexId v, std::vector<Recoloring>& out) override
        {
            std::set<VertexId> queue{std::max(u, v)}; // recolor one endpoint first
            long long steps = 0;
            long long cap = 20 * (long long)component_of(u).size() + 64;
            while (!queue.empty()) {
                if (++steps > cap) {
                    repair_component(u, &out); // cascade is spinning; repair exactly
                    return;
                }
                VertexId x = *queue.begin();
                queue.erase(queue.begin());
                if (!conflicted(x))
                    continue;
                Color c = first_fit(x);
                if (c > 0) {
                    set_color(x, c, out);
                    continue;
                }
                // Least-used neighbor color, then push the new conflicts.
                std::vector<long long> uses(c_ + 1, 0);
                for (VertexId y : g_.neighbors(x))
                    if (color_of(y) >= 1 && color_of(y) <= c_)
                        uses[color_of(y)]++;
                Color pick = 1;
                for (Color k = 2; k <= c_; ++k)
                    if (uses[k] < uses[pick])
                        pick = k;
                set_color(x, pick, out);
                for (VertexId y : g_.neighbors(x))
                    if (color_of(y) == pick)
                        queue.insert(y);
            }
        }
    };

} // namespace

std::unique_ptr<ColoringAlgorithm> make_baseline(BaselineKind kind, int c)
{
    switch (kind) {
    case BaselineKind::ExactRepair: return std::make_unique<ExactRepairBaseline>(c);
    case BaselineKind::BfsFlip: return std::make_unique<BfsFlipBaseline>(c);
    case BaselineKind::GreedyRepair: return std::make_unique<GreedyRepairBaseline>(c);
    }
    throw Error(ErrorCode::ValidationError, "bad baseline kind");
}

namespace {
    class EngineOpponent final : public ColoringAlgorithm {
    public:
        EngineOpponent(EngineKind kind, int d)
            : kind_(kind)
            , d_(d)
        {
        }

        void init(const DynamicGraph& g) override
        {
            engine_ = make_engine(kind_, d_, g, ColorerKind::Greedy, false);
            replayed_ = engine_->ledger().changes().size();
        }

        std::vector<Recoloring> apply(const UpdateOp& op) override
        {
            engine_->apply(op);
            std::vector<Recoloring> out;
            const std::vector<ChangeRecord>& changes = engine_->ledger().changes();
            for (; replayed_ < changes.size(); ++replayed_) {
                const ChangeRecord& ch = changes[replayed_];
                if (ch.old_color != ch.new_color)
                    out.push_back({ch.v,
                                   ch.old_color == kNoColor ? kNoColor : ch.old_color + 1,
                                   ch.new_color + 1});
            }
            return out;
        }

        Color color_of(VertexId v) const override
        {
            // Arena colors are 1-based; engine palettes start at 0.
            Color c = engine_->ledger().color_of(v);
            return c == kNoColor ? kNoColor : c + 1;
        }

        std::string name() const override
        {
            return std::string("engine:") + engine_kind_name(kind_);
        }

        const DynamicGraph& graph() const override { return engine_->graph(); }

    private:
        EngineKind kind_;
        int d_;
        std::unique_ptr<Engine> engine_;
        std::size_t replayed_ = 0;
    };
} // namespace

std::unique_ptr<ColoringAlgorithm> make_engine_opponent(const std::string& engine_name,
                                                        int d)
{
    return std::make_unique<EngineOpponent>(engine_kind_from_name(engine_name), d);
}

} // namespace recolor
