#pragma once

// Command-line front end. Kept in a header so the tests can drive it in-process.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dacos.hpp"

namespace dacos::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kCapExceeded = 3 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CodeSpec {
    std::string label;
    Tableau tableau;
    StandardFormOptions options;
    std::optional<std::size_t> distance;
    std::optional<DecoderTable> table;  // hand-made table valid for the native layout
};

inline CodeSpec load_code(const std::string& preset_name, const std::string& path) {
    if (preset_name.empty() == path.empty()) throw ConfigError("give exactly one of --preset or --code");
    CodeSpec spec;
    if (!preset_name.empty()) {
        CodePreset p;
        try {
            p = preset(preset_name);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        spec.label = p.name;
        spec.tableau = p.tableau;
        spec.options = p.native;
        spec.distance = p.d;
        if (p.name == "five_one_three") spec.table = table_513();
        if (p.name == "steane") spec.table = table_713();
        return spec;
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open code file '" + path + "'");
    try {
        spec.tableau = parse_tableau(in);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    spec.label = std::filesystem::path(path).stem().string();
    return spec;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
    out << text;
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") out << text;
    else write_file(path, text);
}

// ---- compile ----

struct CompileArgs {
    std::string preset, code, out_dir;
    std::size_t exact_limit = 24;
};

inline int cmd_compile(const CompileArgs& a, std::ostream& out) {
    const auto spec = load_code(a.preset, a.code);
    const auto c = compile_code(spec.tableau, spec.options);
    if (!verify_encoding(c, spec.tableau)) throw std::logic_error("compiled circuit failed verification");
    const auto g = build_multigraph(c);
    ScheduleOptions so;
    so.exact_limit = a.exact_limit;
    const auto la = chromatic_index(g, so);
    so.hadamard_boundary = &c;
    const auto prog = build_program(c, chromatic_index(g, so));
    if (!a.out_dir.empty()) {
        std::filesystem::create_directories(a.out_dir);
        const std::filesystem::path dir(a.out_dir);
        write_file(dir / (spec.label + ".circuit.json"), circuit_json(c).dump(2) + "\n");
        write_file(dir / (spec.label + ".layers.json"), layers_json(la).dump(2) + "\n");
        write_file(dir / (spec.label + ".graph.dot"), graph_dot(g, &c));
    }
    out << "code=" << spec.label << " n=" << c.n << " k=" << c.k << " cz=" << c.cz_count() << " layers=" << la.size()
        << " program_layers=" << prog.cz_layers() << " mode=" << (la.exact ? "exact" : "heuristic") << "\n";
    return kOk;
}

// ---- simulate ----

struct SimulateArgs {
    std::string preset, code, out, decoder = "auto", mode = "auto";
    std::vector<double> p;
    std::vector<double> p_range;  // lo, hi, points
    double q = 0.0;
    std::optional<std::uint64_t> shots, seed;
    unsigned threads = 0;
    double p_prior = 0.01;
};

inline std::vector<double> p_grid(const SimulateArgs& a) {
    std::vector<double> g = a.p;
    if (!a.p_range.empty()) {
        if (a.p_range.size() != 3 || a.p_range[2] < 1 || a.p_range[2] != static_cast<long>(a.p_range[2]))
            throw ConfigError("--p-range takes lo,hi,points");
        const auto pts = static_cast<long>(a.p_range[2]);
        for (long i = 0; i < pts; ++i)
            g.push_back(pts == 1 ? a.p_range[0] : a.p_range[0] + (a.p_range[1] - a.p_range[0]) * i / (pts - 1));
    }
    if (g.empty()) throw ConfigError("no p values given (use --p or --p-range)");
    for (double p : g)
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p outside [0, 1]");
    return g;
}

inline std::optional<DecoderTable> pick_decoder(const SimulateArgs& a, CodeSpec& spec, const CompiledCircuit& c) {
    if (a.decoder == "none") return std::nullopt;
    if (!spec.distance) {
        try {
            spec.distance = minimum_distance(spec.tableau);
        } catch (const std::out_of_range& e) {
            throw CapExceeded(std::string("distance enumeration: ") + e.what());
        }
    }
    if (a.decoder == "auto" && *spec.distance <= 2) return std::nullopt;
    validate_protocol(*spec.distance, DecoderTable{});
    if (a.decoder == "table" || (a.decoder == "auto" && spec.table)) {
        if (!spec.table) throw ConfigError("no hand-made decoder table for this code");
        return spec.table;
    }
    if (a.decoder == "ml" || a.decoder == "auto") {
        try {
            return generate_ml_decoder(c, a.p_prior);
        } catch (const std::out_of_range& e) {
            throw CapExceeded(e.what());
        }
    }
    throw ConfigError("unknown decoder '" + a.decoder + "'");
}

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    auto spec = load_code(a.preset, a.code);
    const auto grid = p_grid(a);
    if (!(a.q >= 0.0 && a.q <= 1.0)) throw ConfigError("q outside [0, 1]");
    if (a.mode != "auto" && a.mode != "exact" && a.mode != "mc") throw ConfigError("--mode must be auto, exact or mc");
    const auto c = compile_code(spec.tableau, spec.options);
    std::optional<DecoderTable> dec;
    try {
        dec = pick_decoder(a, spec, c);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    bool exact = a.mode == "exact" || (a.mode == "auto" && a.q == 0.0 && c.n <= 10);
    if (a.mode == "auto" && a.q > 0.0 && !a.shots) throw ConfigError("--shots is required when q > 0");
    if (!exact && !a.shots) throw CapExceeded("exact enumeration cap exceeded and no --shots given for sampling");
    if (!exact && !a.seed) throw ConfigError("--seed is required for Monte Carlo runs");

    std::ostringstream csv;
    csv << "code," << sim_csv_header(c.k) << "\n";
    for (double p : grid) {
        const NoiseModel noise{p, a.q};
        SimResult r;
        if (exact) r = a.q == 0.0 ? simulate_exact(c, dec, p) : simulate_exact_noisy(c, dec, noise);
        else r = simulate_mc(c, dec, noise, *a.shots, *a.seed, a.threads);
        csv << spec.label << ',' << sim_csv_row(p, a.q, r) << "\n";
    }
    emit(a.out, csv.str(), out);
    return kOk;
}

// ---- rates ----

struct RatesArgs {
    double pmax = 0.8;
    int points = 81;
    std::string protocol = "all", format = "csv", out;
    std::size_t n = 4, rmax = 20;
};

inline int cmd_rates(const RatesArgs& a, std::ostream& out) {
    if (!(a.pmax > 0.0 && a.pmax <= 1.0)) throw ConfigError("--pmax must lie in (0, 1]");
    if (a.points < 2) throw ConfigError("--points must be at least 2");
    if (a.n < 4 || a.n % 2 || a.n > 10) throw ConfigError("--n must be even, 4..10");
    if (a.format != "csv" && a.format != "svg") throw ConfigError("--format must be csv or svg");
    std::vector<double> grid;
    for (int i = 0; i < a.points; ++i) grid.push_back(a.pmax * i / (a.points - 1));

    using detail::num;
    const std::string ns = std::to_string(a.n);
    std::ostringstream os;
    if (a.protocol == "all") {
        const auto rows = rate_curve(grid, a.rmax);
        os << (a.format == "csv" ? rates_csv(rows) : rates_svg(rows));
    } else if (a.protocol == "fidelity") {
        if (a.format == "svg") {
            os << fidelity_svg(grid);
        } else {
            os << "p,input,recurrence,macchiavello2,iceberg4,iceberg6\n";
            for (double p : grid)
                os << num(p) << ',' << num(f_out_red("input", p)) << ',' << num(f_out_red("recurrence", p)) << ','
                   << num(f_out_red("macchiavello2", p)) << ',' << num(f_out_red("iceberg4", p)) << ','
                   << num(f_out_red("iceberg6", p)) << "\n";
        }
    } else {
        std::vector<std::string> cols;
        std::vector<std::vector<double>> vals;
        for (double p : grid) {
            std::vector<double> v;
            if (a.protocol == "ls") {
                cols = {"D_LS_" + ns};
                v = {rate_LS(a.n, p)};
            } else if (a.protocol == "sh") {
                const auto s = rate_Sh_series(a.n, p, a.rmax, 1e-12);
                const auto it = std::max_element(s.begin(), s.end());
                cols = {"D_Sh_best_" + ns, "r_Sh_best_" + ns};
                v = {*it, static_cast<double>(it - s.begin())};
            } else if (a.protocol == "best") {
                const auto b = rate_best(a.n, p, a.rmax);
                cols = {"D_best_" + ns, "r_best_" + ns, "best_" + ns + "_is_LS"};
                v = {b.value, static_cast<double>(b.rounds), b.leung_shor ? 1.0 : 0.0};
            } else if (a.protocol == "recurrence") {
                const auto rr = recurrence_rates(p, a.rmax);
                cols = {"D_R", "D_M", "r_R", "r_M"};
                v = {rr.d_r.value, rr.d_m.value, static_cast<double>(rr.d_r.rounds), static_cast<double>(rr.d_m.rounds)};
            } else if (a.protocol == "hashing") {
                cols = {"D_H", "Rains"};
                v = {hashing_bound(p), rains_bound(p)};
            } else {
                throw ConfigError("unknown protocol '" + a.protocol + "'");
            }
            vals.push_back(v);
        }
        if (a.format == "csv") {
            os << "p";
            for (const auto& c : cols) os << ',' << c;
            os << "\n";
            for (std::size_t i = 0; i < grid.size(); ++i) {
                os << num(grid[i]);
                for (double v : vals[i]) os << ',' << num(v);
                os << "\n";
            }
        } else {
            Series s{cols[0], "#d62728", {}};
            for (const auto& v : vals) s.y.push_back(v[0]);
            os << line_chart_svg(grid, {s}, "p", cols[0], true);
        }
    }
    emit(a.out, os.str(), out);
    return kOk;
}

// ---- dispatch ----

inline void report_error(std::ostream& err, int code, const std::string& message) {
    ordered_json j;
    j["error"] = message;
    j["exit_code"] = code;
    err << j.dump() << "\n";
}

// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Encoding-circuit compiler, Pauli-frame simulator and rate calculator for two-way purification"};
    app.require_subcommand(1);

    CompileArgs ca;
    auto* compile = app.add_subcommand("compile", "Compile a code and schedule its CZ layers");
    compile->add_option("--preset", ca.preset, "iceberg<N>, five_one_three or steane");
    compile->add_option("--code", ca.code, "Stabilizer file, one Pauli string per line");
    compile->add_option("--out-dir", ca.out_dir, "Write circuit JSON, layer JSON and DOT graph here");
    compile->add_option("--exact-limit", ca.exact_limit, "Largest edge count solved exactly")->capture_default_str();

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Simulate the purification protocol");
    simulate->add_option("--preset", sa.preset);
    simulate->add_option("--code", sa.code);
    simulate->add_option("--p", sa.p, "Input noise values")->delimiter(',');
    simulate->add_option("--p-range", sa.p_range, "lo,hi,points")->delimiter(',');
    simulate->add_option("--q", sa.q, "Gate depolarizing strength")->capture_default_str();
    simulate->add_option("--shots", sa.shots, "Monte Carlo shots");
    simulate->add_option("--seed", sa.seed, "Monte Carlo seed");
    simulate->add_option("--decoder", sa.decoder, "auto, table, ml or none")->capture_default_str();
    simulate->add_option("--p-prior", sa.p_prior, "Prior for the generated ML decoder")->capture_default_str();
    simulate->add_option("--mode", sa.mode, "auto, exact or mc")->capture_default_str();
    simulate->add_option("--threads", sa.threads, "Worker threads (0: DACOS_THREADS or all cores)");
    simulate->add_option("--out", sa.out, "Output CSV path (default stdout)");

    RatesArgs ra;
    auto* rates = app.add_subcommand("rates", "Distillation rates and reduced fidelities over a p grid");
    rates->add_option("--pmax", ra.pmax)->capture_default_str();
    rates->add_option("--points", ra.points)->capture_default_str();
    rates->add_option("--protocol", ra.protocol, "all, ls, sh, best, recurrence, hashing or fidelity")
        ->capture_default_str();
    rates->add_option("--n", ra.n, "Block size for ls/sh/best")->capture_default_str();
    rates->add_option("--rmax", ra.rmax, "Maximum number of rounds")->capture_default_str();
    rates->add_option("--format", ra.format, "csv or svg")->capture_default_str();
    rates->add_option("--out", ra.out, "Output path (default stdout)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, kConfigError, e.what());
        return kConfigError;
    }

    try {
        if (compile->parsed()) return cmd_compile(ca, out);
        if (simulate->parsed()) return cmd_simulate(sa, out);
        return cmd_rates(ra, out);
    } catch (const ConfigError& e) {
        report_error(err, kConfigError, e.what());
        return kConfigError;
    } catch (const CapExceeded& e) {
        report_error(err, kCapExceeded, e.what());
        return kCapExceeded;
    } catch (const std::exception& e) {
        report_error(err, 1, e.what());
        return 1;
    }
}

}  // namespace dacos::cli
