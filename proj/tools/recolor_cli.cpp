#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "recolor/report.hpp"

using namespace recolor;

namespace {

    std::vector<int> parse_d_list(const std::string& text)
    {
        std::vector<int> ds;
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
            ds.push_back(std::stoi(item));
        if (ds.empty())
            throw Error(ErrorCode::ValidationError, "--d needs at least one value");
        for (int d : ds)
            if (d < 1)
                throw Error(ErrorCode::ValidationError, "d must be >= 1");
        return ds;
    }

    void print_run_summary(const RunReport& r, double seconds)
    {
        std::cout << "engine=" << r.engine << " d=" << r.d << " colorer=" << r.colorer
                  << "\n"
                  << "  updates            " << r.updates << "\n"
                  << "  insertion updates  " << r.insertion_updates << "\n"
                  << "  recolorings total  " << r.recolorings_total << "\n"
                  << "  max per update     " << r.max_recolorings_per_update;
        if (r.budget_max >= 0)
            std::cout << " (budget " << r.budget_max << ")";
        std::cout << "\n"
                  << "  resets             " << r.resets << "\n"
                  << "  s final/max        " << r.s_final << "/" << r.s_max << "\n"
                  << "  colors now/max     " << r.distinct_colors_final << "/"
                  << r.distinct_colors_max << " (C_bkt " << r.c_bkt_max << ")\n"
                  << "  graph              " << r.vertices_final << " vertices, "
                  << r.edges_final << " edges\n"
                  << "  wall time          " << seconds << " s\n";
    }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bucket-based dynamic graph recoloring engines and lower-bound arena"};

    std::string engine = "small";
    std::string d_text = "2";
    std::string colorer = "greedy";
    std::string input;
    std::string adversary;
    std::string baseline = "exact";
    std::string out;
    std::string dump_stream;
    std::uint64_t seed = 1;
    bool checked = false;

    app.add_option("--engine", engine, "small | big | small-deam | big-deam");
    app.add_option("--d", d_text, "trade-off parameter; a comma list runs a sweep");
    app.add_option("--colorer", colorer, "greedy | bipartite");
    app.add_option("--input", input, "update stream file");
    app.add_option("--adversary", adversary, "adversary spec c=<c>,n=<n>,m=<m>");
    app.add_option("--baseline", baseline, "arena opponent: exact | bfsflip | greedy");
    app.add_option("--seed", seed, "seed for seeded runs (reports are deterministic)");
    app.add_option("--out", out, "write the machine-readable report here");
    app.add_option("--dump-stream", dump_stream, "write the arena update stream here");
    app.add_flag("--checked", checked, "validate every invariant after every update");

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<int> ds = parse_d_list(d_text);
        bool have_input = !input.empty();
        bool have_adversary = !adversary.empty();
        if (have_input == have_adversary)
            throw Error(ErrorCode::ValidationError,
                        "exactly one of --input and --adversary is required");

        if (have_adversary && ds.size() == 1 && engine.empty())
            throw Error(ErrorCode::ValidationError, "missing engine");

        auto t0 = std::chrono::steady_clock::now();
        if (have_adversary) {
            AdversarySpec spec = AdversarySpec::parse(adversary);
            std::vector<UpdateOp> emitted;
            ArenaReport report
                = run_arena(spec, baseline_kind_from_name(baseline), &emitted);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                              .count();
            std::cout << "arena c=" << report.c << " n=" << report.n << " baseline="
                      << report.baseline << "\n"
                      << "  updates              " << report.updates << "\n"
                      << "  insertions/deletions " << report.ledger.insertions << "/"
                      << report.ledger.deletions << "\n"
                      << "  links                " << report.ledger.links << "\n"
                      << "  wasted insertions    " << report.ledger.wasted_insertions << "\n"
                      << "  charged recolorings  " << report.ledger.charged_recolorings
                      << "\n"
                      << "  observed recolorings " << report.ledger.observed_recolorings
                      << "\n"
                      << "  resets               " << report.ledger.resets.size() << "\n"
                      << "  wall time            " << secs << " s\n";
            if (!out.empty()) {
                std::ofstream f(out);
                f << report.to_json();
            }
            if (!dump_stream.empty()) {
                std::ofstream f(dump_stream);
                f << format_stream(emitted); // setup + updates, replayable
            }
            return 0;
        }

        std::vector<UpdateOp> ops = parse_stream_file(input);
        EngineKind ek = engine_kind_from_name(engine);
        ColorerKind ck = colorer_kind_from_name(colorer);
        if (ds.size() > 1) {
            std::vector<SweepRow> rows = sweep(ek, ck, ops, ds, checked);
            std::cout << "d\tcolors_max\trecolorings_total\ts_max\n";
            std::ostringstream table;
            table << "d\tcolors_max\trecolorings_total\ts_max\n";
            for (const SweepRow& row : rows) {
                std::cout << row.d << '\t' << row.colors_max << '\t'
                          << row.recolorings_total << '\t' << row.s_max << '\n';
                table << row.d << '\t' << row.colors_max << '\t' << row.recolorings_total
                      << '\t' << row.s_max << '\n';
            }
            if (!out.empty()) {
                std::ofstream f(out);
                f << table.str();
            }
            return 0;
        }

        RunConfig config;
        config.engine = ek;
        config.d = ds[0];
        config.colorer = ck;
        config.input_path = input;
        config.seed = seed;
        config.checked = checked;
        config.out_path = out;
        RunReport report = run(config);
        double secs
            = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        print_run_summary(report, secs);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
