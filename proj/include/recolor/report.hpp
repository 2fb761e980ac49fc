#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recolor/adversary.hpp"
#include "recolor/engine.hpp"
#include "recolor/stream.hpp"

namespace recolor {

struct AdversarySpec {
    int c = 2;
    long long n = 9;
    long long m = 100;

    static AdversarySpec parse(const std::string& text); // "c=2,n=9,m=100"
};

struct RunConfig {
    EngineKind engine = EngineKind::Small;
    int d = 2;
    ColorerKind colorer = ColorerKind::Greedy;
    std::optional<std::string> input_path;    // exactly one input source
    std::optional<AdversarySpec> adversary;
    std::optional<BaselineKind> baseline;     // arena opponent
    std::uint64_t seed = 1;
    bool checked = false;
    std::string out_path;                     // empty = no file written
    std::string dump_stream_path;             // arena replay dump
};

struct RunReport {
    std::string engine;
    int d = 0;
    std::string colorer;
    bool checked = false;
    long long updates = 0;
    long long insertion_updates = 0;
    long long recolorings_total = 0;
    long long max_recolorings_per_update = 0;
    std::vector<long long> recolorings_per_update;
    std::vector<long long> s_history;
    long long s_final = 0;
    long long s_max = 0;
    long long resets = 0;
    long long distinct_colors_final = 0;
    long long distinct_colors_max = 0;
    long long c_bkt_max = 0;
    long long vertices_final = 0;
    long long edges_final = 0;
    long long budget_max = -1; // de-amortized engines only

    // Canonical machine-readable form; wall time deliberately excluded so
    // identical runs serialize byte-identically.
    std::string to_json() const;
};

RunReport run_engine(EngineKind engine, int d, ColorerKind colorer,
                     const std::vector<UpdateOp>& ops, bool checked);

RunReport run(const RunConfig& config);

struct SweepRow {
    int d;
    long long colors_max;
    long long recolorings_total;
    long long s_max;
};

std::vector<SweepRow> sweep(EngineKind engine, ColorerKind colorer,
                            const std::vector<UpdateOp>& ops, const std::vector<int>& ds,
                            bool checked);

struct ArenaReport {
    ChargeLedger ledger;
    long long updates = 0;
    std::string baseline;
    int c = 0;
    long long n = 0;

    std::string to_json() const;
};

ArenaReport run_arena(const AdversarySpec& spec, BaselineKind baseline,
                      std::vector<UpdateOp>* emitted = nullptr);

} // namespace recolor
