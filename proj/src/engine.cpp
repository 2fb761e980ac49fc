#include "recolor/engine.hpp"

#include <algorithm>

#include "recolor/big_buckets.hpp"
#include "recolor/deamortized.hpp"
#include "recolor/small_buckets.hpp"

namespace recolor {

const char* engine_kind_name(EngineKind k)
{
    switch (k) {
    case EngineKind::Small: return "small";
    case EngineKind::Big: return "big";
    case EngineKind::SmallDeam: return "small-deam";
    case EngineKind::BigDeam: return "big-deam";
    }
    return "?";
}

EngineKind engine_kind_from_name(const std::string& name)
{
    if (name == "small")
        return EngineKind::Small;
    if (name == "big")
        return EngineKind::Big;
    if (name == "small-deam")
        return EngineKind::SmallDeam;
    if (name == "big-deam")
        return EngineKind::BigDeam;
    throw Error(ErrorCode::ValidationError, "unknown engine '" + name + "'");
}

long long ipow(long long base, int exp)
{
    long long r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

long long bucket_base(long long n, int d, long long floor_s)
{
    long long s = floor_s;
    while (ipow(s, d) < n)
        ++s;
    return s;
}

Engine::Engine(int d, ColorerKind colorer, bool checked)
    : d_(d)
    , checked_(checked)
{
    if (d < 1)
        throw Error(ErrorCode::ValidationError, "d must be >= 1");
    colorer_.kind = colorer;
}

long long Engine::s_max() const
{
    long long m = 0;
    for (long long v : s_history_)
        m = std::max(m, v);
    return m;
}

ColoringResult Engine::color_only(const std::vector<VertexId>& subset, Palette& palette)
{
    ColoringResult res = colorer_(graph_, subset, palette);
    c_bkt_max_ = std::max(c_bkt_max_, res.distinct_used);
    return res;
}

void Engine::recolor_and_record(const std::vector<VertexId>& subset, Palette& palette)
{
    ColoringResult res = color_only(subset, palette);
    for (const auto& [v, c] : res.colors)
        record_color(v, c);
}

void Engine::record_color(VertexId v, Color new_color)
{
    ledger_.record(metrics_, update_index_, v, ledger_.color_of(v), new_color);
}

void Engine::note_reset()
{
    epoch_++;
    metrics_.resets++;
    s_history_.push_back(s_);
}

long long Engine::apply(const UpdateOp& op)
{
    update_index_++;
    metrics_.recolorings_per_update.push_back(0);
    long long before_budget = per_update_budget();
    try {
        apply_impl(op);
    } catch (const Error&) {
        // Validation errors reject the update before any mutation; keep the
        // metrics consistent so a caller may continue after catching.
        metrics_.recolorings_per_update.pop_back();
        update_index_--;
        throw;
    }
    metrics_.updates_applied++;
    metrics_.distinct_colors_now = ledger_.distinct_colors_now();
    metrics_.distinct_colors_max
        = std::max(metrics_.distinct_colors_max, metrics_.distinct_colors_now);
    long long count = metrics_.recolorings_per_update.back();
    // Budget in force for this update: s may only grow mid-update, so the
    // larger of the before/after budgets is the valid cap.
    long long budget = std::max(before_budget, per_update_budget());
    budgets_.push_back(budget);
    if (budget >= 0 && count > budget)
        throw Error(ErrorCode::InvariantViolation,
                    "update " + std::to_string(update_index_) + " used "
                        + std::to_string(count) + " recolorings, budget "
                        + std::to_string(budget));
    if (checked_) {
        graph_.check_consistency();
        if (!check_proper(graph_, ledger_))
            throw Error(ErrorCode::InvariantViolation,
                        "improper coloring after update " + std::to_string(update_index_));
        check_invariants();
    }
    return count;
}

std::unique_ptr<Engine> make_engine(EngineKind kind, int d, const DynamicGraph& initial,
                                    ColorerKind colorer, bool checked)
{
    switch (kind) {
    case EngineKind::Small:
        return std::make_unique<SmallBucketEngine>(d, initial, colorer, checked);
    case EngineKind::Big:
        return std::make_unique<BigBucketEngine>(d, initial, colorer, checked);
    case EngineKind::SmallDeam:
        return std::make_unique<DeamSmallEngine>(d, initial, colorer, checked);
    case EngineKind::BigDeam:
        return std::make_unique<DeamBigEngine>(d, initial, colorer, checked);
    }
    throw Error(ErrorCode::ValidationError, "bad engine kind");
}

} // namespace recolor
