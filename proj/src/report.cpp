#include "recolor/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace recolor {

AdversarySpec AdversarySpec::parse(const std::string& text)
{
    AdversarySpec spec;
    std::string item;
    std::istringstream in(text);
    bool saw_c = false, saw_n = false, saw_m = false;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError, "bad adversary spec item '" + item + "'");
        std::string key = item.substr(0, eq);
        long long value = std::stoll(item.substr(eq + 1));
        if (key == "c") {
            spec.c = (int)value;
            saw_c = true;
        } else if (key == "n") {
            spec.n = value;
            saw_n = true;
        } else if (key == "m") {
            spec.m = value;
            saw_m = true;
        } else {
            throw Error(ErrorCode::ParseError, "unknown adversary key '" + key + "'");
        }
    }
    if (!saw_c || !saw_n || !saw_m)
        throw Error(ErrorCode::ParseError, "adversary spec needs c=,n=,m=");
    return spec;
}

std::string RunReport::to_json() const
{
    nlohmann::json j;
    j["engine"] = engine;
    j["d"] = d;
    j["colorer"] = colorer;
    j["checked"] = checked;
    j["updates"] = updates;
    j["insertion_updates"] = insertion_updates;
    j["recolorings_total"] = recolorings_total;
    j["max_recolorings_per_update"] = max_recolorings_per_update;
    j["recolorings_per_update"] = recolorings_per_update;
    j["s_history"] = s_history;
    j["s_final"] = s_final;
    j["s_max"] = s_max;
    j["resets"] = resets;
    j["distinct_colors_final"] = distinct_colors_final;
    j["distinct_colors_max"] = distinct_colors_max;
    j["c_bkt_max"] = c_bkt_max;
    j["vertices_final"] = vertices_final;
    j["edges_final"] = edges_final;
    j["budget_max"] = budget_max;
    return j.dump(2) + "\n";
}

std::string ArenaReport::to_json() const
{
    nlohmann::json j;
    j["baseline"] = baseline;
    j["c"] = c;
    j["n"] = n;
    j["updates"] = updates;
    j["insertions"] = ledger.insertions;
    j["deletions"] = ledger.deletions;
    j["links"] = ledger.links;
    j["invalidations"] = ledger.invalidations;
    j["wasted_insertions"] = ledger.wasted_insertions;
    j["charged_recolorings"] = ledger.charged_recolorings;
    j["observed_recolorings"] = ledger.observed_recolorings;
    nlohmann::json resets = nlohmann::json::array();
    for (const ResetRecord& r : ledger.resets) {
        nlohmann::json e;
        e["level"] = r.level;
        e["case"] = r.case_id;
        e["wasted"] = r.wasted;
        e["charged"] = r.charged;
        resets.push_back(e);
    }
    j["resets"] = resets;
    return j.dump(2) + "\n";
}

RunReport run_engine(EngineKind engine, int d, ColorerKind colorer,
                     const std::vector<UpdateOp>& ops, bool checked)
{
    DynamicGraph empty;
    std::unique_ptr<Engine> eng = make_engine(engine, d, empty, colorer, checked);
    long long applied = 0;
    try {
        for (const UpdateOp& op : ops) {
            eng->apply(op);
            ++applied;
        }
    } catch (const Error& e) {
        throw Error(e.code(),
                    std::string(e.what()) + " (update " + std::to_string(applied + 1) + ")");
    }

    RunReport report;
    report.engine = engine_kind_name(engine);
    report.d = d;
    report.colorer = colorer_kind_name(colorer);
    report.checked = checked;
    const Metrics& m = eng->metrics();
    report.updates = m.updates_applied;
    report.insertion_updates = m.insertion_updates;
    report.recolorings_total = m.recolorings_total;
    report.recolorings_per_update = m.recolorings_per_update;
    for (long long r : m.recolorings_per_update)
        report.max_recolorings_per_update = std::max(report.max_recolorings_per_update, r);
    report.s_history = eng->s_history();
    report.s_final = eng->s();
    report.s_max = eng->s_max();
    report.resets = m.resets;
    report.distinct_colors_final = m.distinct_colors_now;
    report.distinct_colors_max = m.distinct_colors_max;
    report.c_bkt_max = eng->c_bkt_max();
    report.vertices_final = (long long)eng->graph().num_vertices();
    report.edges_final = eng->graph().num_edges();
    for (long long b : eng->budget_per_update())
        report.budget_max = std::max(report.budget_max, b);
    return report;
}

RunReport run(const RunConfig& config)
{
    if (config.input_path.has_value() == config.adversary.has_value())
        throw Error(ErrorCode::ValidationError,
                    "exactly one of --input and --adversary is required");
    std::vector<UpdateOp> ops;
    if (config.input_path) {
        ops = parse_stream_file(*config.input_path);
    } else {
        run_arena(*config.adversary, config.baseline.value_or(BaselineKind::ExactRepair),
                  &ops);
    }
    RunReport report = run_engine(config.engine, config.d, config.colorer, ops,
                                  config.checked);
    if (!config.out_path.empty()) {
        std::ofstream out(config.out_path);
        out << report.to_json();
    }
    return report;
}

std::vector<SweepRow> sweep(EngineKind engine, ColorerKind colorer,
                            const std::vector<UpdateOp>& ops, const std::vector<int>& ds,
                            bool checked)
{
    std::vector<int> sorted = ds;
    std::sort(sorted.begin(), sorted.end());
    std::vector<SweepRow> rows;
    for (int d : sorted) {
        RunReport r = run_engine(engine, d, colorer, ops, checked);
        rows.push_back({d, r.distinct_colors_max, r.recolorings_total, r.s_max});
    }
    return rows;
}

ArenaReport run_arena(const AdversarySpec& spec, BaselineKind baseline,
                      std::vector<UpdateOp>* emitted)
{
    std::unique_ptr<AdversaryGenerator> gen;
    switch (spec.c) {
    case 2: gen = std::make_unique<StarsC2Generator>(spec.n); break;
    case 3:
        // The dedicated 3-coloring construction when n is a cube of the
        // right size; the general machinery otherwise.
        try {
            gen = std::make_unique<C3Generator>(spec.n);
        } catch (const Error&) {
            gen = make_general_adversary(3, spec.n);
        }
        break;
    default: gen = make_general_adversary(spec.c, spec.n); break;
    }
    std::unique_ptr<ColoringAlgorithm> alg = make_baseline(baseline, spec.c);
    ArenaResult result = arena_run(*gen, *alg, spec.m);
    if (emitted)
        *emitted = result.full_stream();

    ArenaReport report;
    report.ledger = result.ledger;
    report.updates = result.updates_applied;
    report.baseline = baseline_kind_name(baseline);
    report.c = spec.c;
    report.n = spec.n;
    return report;
}

} // namespace recolor
