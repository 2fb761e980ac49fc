#pragma once

#include <memory>
#include <string>
#include <vector>

#include "recolor/colorers.hpp"
#include "recolor/graph.hpp"

namespace recolor {

enum class EngineKind { Small, Big, SmallDeam, BigDeam };

const char* engine_kind_name(EngineKind k);
EngineKind engine_kind_from_name(const std::string& name);

// Shared chassis for the four recoloring engines. One instance owns its
// graph, ledger and metrics; instances share nothing.
class Engine {
public:
    virtual ~Engine() = default;

    // Applies one update and returns the number of counted recolorings.
    long long apply(const UpdateOp& op);

    const DynamicGraph& graph() const { return graph_; }
    const ColoringLedger& ledger() const { return ledger_; }
    const Metrics& metrics() const { return metrics_; }

    virtual EngineKind kind() const = 0;
    int d() const { return d_; }
    long long s() const { return s_; }
    long long epoch() const { return epoch_; }
    long long n_reset() const { return n_reset_; }
    const std::vector<long long>& s_history() const { return s_history_; }
    long long s_max() const;
    long long c_bkt_max() const { return c_bkt_max_; }

    // Hard per-update recoloring budget; -1 when only amortized bounds apply.
    virtual long long per_update_budget() const { return -1; }

    // Per-update budget actually in force when each update ran (de-amortized
    // engines only; parallel to metrics().recolorings_per_update).
    const std::vector<long long>& budget_per_update() const { return budgets_; }

    void set_checked(bool on) { checked_ = on; }
    bool checked() const { return checked_; }

    // Validates every module invariant; throws InvariantViolation.
    virtual void check_invariants() const = 0;

protected:
    Engine(int d, ColorerKind colorer, bool checked);

    virtual void apply_impl(const UpdateOp& op) = 0;

    // Runs the colorer on `subset` against `palette`, recording every
    // assignment in the ledger under the current update index.
    void recolor_and_record(const std::vector<VertexId>& subset, Palette& palette);
    // Same, but returns the assignments without touching the ledger
    // (shadow coloring in the de-amortized engines).
    ColoringResult color_only(const std::vector<VertexId>& subset, Palette& palette);

    void record_color(VertexId v, Color new_color);
    void note_reset();

    DynamicGraph graph_;
    ColoringLedger ledger_;
    Metrics metrics_;
    StaticColorer colorer_;
    PaletteBook palettes_;

    int d_;
    long long s_ = 1;
    long long epoch_ = 0;
    long long n_reset_ = 0; // N_R: vertex count at the last reset
    std::vector<long long> s_history_;
    long long update_index_ = 0;
    long long c_bkt_max_ = 0;
    std::vector<long long> budgets_;
    bool checked_ = false;
};

// Smallest s >= floor with s^d >= n, i.e. ceil(n^(1/d)) guarded below.
long long bucket_base(long long n, int d, long long floor_s);
long long ipow(long long base, int exp);

std::unique_ptr<Engine> make_engine(EngineKind kind, int d, const DynamicGraph& initial,
                                    ColorerKind colorer, bool checked);

} // namespace recolor
