// Batch front door: every experiment is driven by a flat key/value config
// file; flags only select the command and the output directory. Exit codes:
// 0 success (for `scan`: no in-S difference reached length L), 1 some in-S
// difference reached L, 2 bad configuration.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bohrboard/chessboard.hpp"
#include "bohrboard/config.hpp"
#include "bohrboard/diophantine.hpp"
#include "bohrboard/halesjewett.hpp"
#include "bohrboard/orbits.hpp"
#include "bohrboard/rational.hpp"
#include "bohrboard/verifier.hpp"

namespace fs = std::filesystem;
using namespace bohrboard;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct RunContext {
    std::string command;
    fs::path output_dir;
    ExperimentConfig config;
    std::vector<std::string> artifacts;
    std::optional<std::uint64_t> board_hash;

    void write_manifest() const {
        std::string m;
        m += "command = " + command + "\n";
        m += "config_hash = " + hex16(config.hash()) + "\n";
        if (board_hash) m += "board_hash = " + hex16(*board_hash) + "\n";
        for (const std::string& a : artifacts) m += "artifact = " + a + "\n";
        write_file(output_dir / "manifest.txt", m);
    }
};

ExperimentConfig load_config(const std::string& path) {
    ExperimentConfig cfg = ExperimentConfig::parse(read_file(path));
    // The environment may override only the seed (for CI sweeps).
    if (const char* seed_env = std::getenv("BOHRBOARD_SEED")) {
        if (cfg.has("seed")) cfg.set("seed", seed_env);
    }
    return cfg;
}

std::set<std::string> with_board_keys(std::initializer_list<std::string> extra) {
    std::set<std::string> keys = board_config_keys();
    keys.insert(extra.begin(), extra.end());
    return keys;
}

std::string divisibility_report_text(const ChessboardParams& p) {
    const DivisibilityReport& r = p.report;
    std::string out;
    out += "d = " + std::to_string(p.d) + "\n";
    out += "alphas = " + to_pq_list_string(p.alphas.alphas) + "\n";
    out += "delta = " + to_pq_string(p.delta.delta) + "\n";
    out += "requested_N0 = " + std::to_string(r.requested_N0) + "\n";
    out += "N0 = " + std::to_string(p.N0) + "\n";
    out += "k = " + std::to_string(p.k) + "\n";
    out += "C = " + std::to_string(p.C) + "\n";
    out += "N1 = " + std::to_string(p.N1) + "\n";
    out += "N2 = " + std::to_string(p.N2) + "\n";
    out += "seed = " + std::to_string(p.seed) + "\n";
    out += "lcm_bound = " + std::to_string(r.lcm_bound) + "\n";
    out += "lcm_value = " + r.lcm_value.str() + "\n";
    out += "pigeonhole_bound = " + r.pigeonhole_bound.str() + "\n";
    out += "divisible_up_to_Ck = " + std::string(r.divisible_up_to_Ck ? "true" : "false") + "\n";
    out += "divisors_of_N1 =";
    for (std::int64_t t : r.divisors_of_N1) out += " " + std::to_string(t);
    out += "\n";
    for (const std::string& note : r.regime_notes) out += "note: " + note + "\n";
    return out;
}

int cmd_params(RunContext& ctx) {
    ctx.config.require_keys_subset_of(board_config_keys());
    ChessboardParams p = params_from_config(ctx.config);
    write_file(ctx.output_dir / "params.txt", divisibility_report_text(p));
    ctx.artifacts.push_back("params.txt");
    ctx.board_hash = random_chessboard(p).board_hash;
    ctx.write_manifest();
    std::cout << "N1 = " << p.N1 << ", " << p.report.divisors_of_N1.size()
              << " divisors of N1 within the pigeonhole bound\n";
    return 0;
}

int cmd_board(RunContext& ctx) {
    ctx.config.require_keys_subset_of(board_config_keys());
    Chessboard board = random_chessboard(params_from_config(ctx.config));
    write_file(ctx.output_dir / "board.txt", board_to_text(board));
    ctx.artifacts.push_back("board.txt");
    ctx.board_hash = board.board_hash;
    ctx.write_manifest();
    std::cout << "board_hash = " << hex16(board.board_hash) << "\n";
    return 0;
}

int cmd_scan(RunContext& ctx) {
    ctx.config.require_keys_subset_of(
        with_board_keys({"y_lo", "y_hi", "L", "x_lo", "x_hi", "threads"}));
    ChessboardParams p = params_from_config(ctx.config);
    Chessboard board = random_chessboard(p);
    std::int64_t y_lo = ctx.config.get_int("y_lo");
    std::int64_t y_hi = ctx.config.get_int("y_hi");
    std::int64_t L = ctx.config.get_int("L");
    std::int64_t x_lo = ctx.config.get_int_or("x_lo", 0);
    std::int64_t x_hi = ctx.config.get_int_or("x_hi", p.N2);
    std::int64_t threads_raw = ctx.config.get_int_or("threads", 1);
    if (threads_raw < 1 || threads_raw > 64) {
        throw std::invalid_argument("config key 'threads' must lie in [1, 64]");
    }
    unsigned threads = static_cast<unsigned>(threads_raw);
    auto rows = scan_differences(board, y_lo, y_hi, L, x_lo, x_hi, threads);
    write_file(ctx.output_dir / "scan.csv", scan_to_csv(rows));
    ctx.artifacts.push_back("scan.csv");
    ctx.board_hash = board.board_hash;
    ctx.write_manifest();
    bool defeated = true;
    for (const ScanRow& r : rows) {
        if (r.in_s && r.max_len_seen >= L) defeated = false;
    }
    std::cout << (defeated ? "no in-S difference reached length " : "an in-S difference reached length ")
              << L << "\n";
    return defeated ? 0 : 1;
}

int cmd_return_cert(RunContext& ctx) {
    ctx.config.require_keys_subset_of(with_board_keys({"x", "y"}));
    ChessboardParams p = params_from_config(ctx.config);
    std::int64_t x = ctx.config.get_int("x");
    std::int64_t y = ctx.config.get_int("y");
    ReturnCertificate cert = pigeonhole_return(x, y, p);
    std::string csv = "t,a,b,mini,disp,divides_N1\n";
    csv += std::to_string(cert.t) + "," + std::to_string(cert.a) + "," + std::to_string(cert.b) +
           ",";
    for (std::size_t i = 0; i < cert.mini.idx.size(); ++i) {
        if (i) csv += ';';
        csv += std::to_string(cert.mini.idx[i]);
    }
    csv += ",";
    for (std::size_t i = 0; i < cert.disp.size(); ++i) {
        if (i) csv += ';';
        csv += to_pq_string(cert.disp[i]);
    }
    csv += ",";
    csv += cert.divides_N1 ? "true" : "false";
    csv += "\n";
    write_file(ctx.output_dir / "certificate.csv", csv);
    ctx.artifacts.push_back("certificate.csv");
    ctx.board_hash = random_chessboard(p).board_hash;
    ctx.write_manifest();
    std::cout << "t = " << cert.t << " (a = " << cert.a << ", b = " << cert.b
              << "), divides_N1 = " << (cert.divides_N1 ? "true" : "false") << "\n";
    return 0;
}

int cmd_eta(RunContext& ctx) {
    ctx.config.require_keys_subset_of(with_board_keys({"y", "t_max"}));
    ChessboardParams p = params_from_config(ctx.config);
    std::int64_t y = ctx.config.get_int("y");
    std::int64_t t_max = ctx.config.get_int("t_max");
    std::string csv = "y,t,eta,applicable,holds\n";
    bool all_hold = true;
    for (std::int64_t t = 1; t <= t_max && t <= p.N1; ++t) {
        if (p.N1 % t != 0) continue;
        EtaResult res = eta_check(y, t, p);
        all_hold = all_hold && res.holds;
        csv += std::to_string(y) + "," + std::to_string(t) + "," + to_pq_string(res.eta) + "," +
               (res.applicable ? "true" : "false") + "," + (res.holds ? "true" : "false") + "\n";
    }
    write_file(ctx.output_dir / "eta.csv", csv);
    ctx.artifacts.push_back("eta.csv");
    ctx.board_hash = random_chessboard(p).board_hash;
    ctx.write_manifest();
    std::cout << (all_hold ? "eta >= delta holds on every applicable divisor\n"
                           : "eta lemma violated\n");
    return all_hold ? 0 : 1;
}

int cmd_orbit_census(RunContext& ctx) {
    ctx.config.require_keys_subset_of(with_board_keys({"R", "n_steps", "chord_threshold"}));
    ChessboardParams p = params_from_config(ctx.config);
    std::int64_t R = ctx.config.get_int("R");
    std::int64_t n_steps = ctx.config.get_int("n_steps");
    Rational threshold = ctx.config.has("chord_threshold")
                             ? ctx.config.get_rational("chord_threshold")
                             : Rational(1, 4);
    std::vector<CensusRow> rows;
    OrbitCensus census = orbit_census(p, R, n_steps, threshold, &rows);
    write_file(ctx.output_dir / "census.csv", census_to_csv(rows));
    ctx.artifacts.push_back("census.csv");
    ctx.board_hash = random_chessboard(p).board_hash;
    ctx.write_manifest();
    std::cout << census_summary_line(census) << "\n";
    return 0;
}

int cmd_trace(RunContext& ctx) {
    ctx.config.require_keys_subset_of(with_board_keys({"base", "step", "n_steps"}));
    ChessboardParams p = params_from_config(ctx.config);
    Chessboard board = random_chessboard(p);
    TracedLine line;
    line.base.coords = ctx.config.get_rational_list("base");
    line.step = ctx.config.get_rational_list("step");
    line.n_steps = ctx.config.get_int("n_steps");
    write_file(ctx.output_dir / "trace.svg", render_trace_svg(board, line));
    ctx.artifacts.push_back("trace.svg");
    ctx.board_hash = board.board_hash;
    ctx.write_manifest();
    std::cout << "traced " << trace_cells(line, p).size() << " cell visits\n";
    return 0;
}

int cmd_hj(RunContext& ctx, std::int64_t d, std::uint64_t budget) {
    HJSearchResult result = search_line_free(d, budget);
    std::string line;
    switch (result.status) {
        case HJSearchStatus::found:
            line = coloring_to_string(*result.coloring);
            break;
        case HJSearchStatus::none_complete:
            line = "NONE (complete)";
            break;
        case HJSearchStatus::none_budget:
            line = "NONE (budget)";
            break;
    }
    std::cout << line << "\n";
    write_file(ctx.output_dir / "hj.txt", line + "\n");
    ctx.artifacts.push_back("hj.txt");
    ctx.write_manifest();
    return 0;
}

int cmd_classic(RunContext& ctx) {
    static const std::set<std::string> keys = {"alpha", "delta", "y_lo", "y_hi",
                                               "L",     "x_lo",  "x_hi"};
    ctx.config.require_keys_subset_of(keys);
    Rational alpha = ctx.config.get_rational("alpha");
    BohrThreshold delta(ctx.config.get_rational("delta"));
    std::int64_t y_lo = ctx.config.get_int("y_lo");
    std::int64_t y_hi = ctx.config.get_int("y_hi");
    std::int64_t L = ctx.config.get_int("L");
    std::int64_t x_lo = ctx.config.get_int_or("x_lo", 0);
    std::int64_t x_hi = ctx.config.get_int("x_hi");
    if (y_lo < 1) throw std::invalid_argument("y_lo must be >= 1");
    ClassicColoring coloring(alpha);
    AlphaVector av{{alpha}, "", ""};
    std::string csv = "y,bohr_gap,in_S,max_len_seen,witness_x\n";
    std::int64_t overall = 0;
    for (std::int64_t y = y_lo; y <= y_hi; ++y) {
        APReport rep = mono_ap_exists(coloring, APQuery{y, L, x_lo, x_hi});
        Rational gap = bohr_gap(y, av);
        bool in_s = gap > delta.delta;
        if (in_s) overall = std::max(overall, rep.max_len_seen);
        csv += std::to_string(y) + "," + to_pq_string(gap) + "," + (in_s ? "true" : "false") +
               "," + std::to_string(rep.max_len_seen) + ",";
        if (rep.witness_x) csv += std::to_string(*rep.witness_x);
        csv += "\n";
    }
    write_file(ctx.output_dir / "classic.csv", csv);
    ctx.artifacts.push_back("classic.csv");
    ctx.write_manifest();
    std::cout << "max monochromatic length over in-S differences: " << overall << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chessboard colorings of Z and their verification oracles"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = ".";

    auto add_common = [&](CLI::App* sub, bool config_required = true) {
        sub->add_option("--config", config_path, "experiment config file")
            ->required(config_required);
        sub->add_option("--output-dir", output_dir, "artifact directory");
    };

    CLI::App* sub_params = app.add_subcommand("params", "build parameters and divisibility report");
    add_common(sub_params);
    CLI::App* sub_board = app.add_subcommand("board", "build and export the seeded chessboard");
    add_common(sub_board);
    CLI::App* sub_scan = app.add_subcommand("scan", "monochromatic-AP scan over a difference range");
    add_common(sub_scan);
    CLI::App* sub_cert = app.add_subcommand("return-cert", "pigeonhole return certificate");
    add_common(sub_cert);
    CLI::App* sub_eta = app.add_subcommand("eta", "eta >= delta divisibility lemma sweep");
    add_common(sub_eta);
    CLI::App* sub_census = app.add_subcommand("orbit-census", "orbit census and union bound");
    add_common(sub_census);
    CLI::App* sub_trace = app.add_subcommand("trace", "SVG of a traced line over the board");
    add_common(sub_trace);
    CLI::App* sub_classic = app.add_subcommand("classic", "classical half-interval coloring scan");
    add_common(sub_classic);

    CLI::App* sub_hj = app.add_subcommand("hj", "Hales-Jewett line-free coloring search");
    std::string hj_mode = "search";
    std::int64_t hj_d = 0;
    std::int64_t hj_budget = 20000000;
    sub_hj->add_option("mode", hj_mode, "only 'search' is supported");
    sub_hj->add_option("-d", hj_d, "dimension");
    sub_hj->add_option("--budget", hj_budget, "node budget");
    add_common(sub_hj, /*config_required=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        RunContext ctx;
        ctx.output_dir = output_dir;
        if (!config_path.empty()) ctx.config = load_config(config_path);

        if (sub_params->parsed()) {
            ctx.command = "params";
            return cmd_params(ctx);
        }
        if (sub_board->parsed()) {
            ctx.command = "board";
            return cmd_board(ctx);
        }
        if (sub_scan->parsed()) {
            ctx.command = "scan";
            return cmd_scan(ctx);
        }
        if (sub_cert->parsed()) {
            ctx.command = "return-cert";
            return cmd_return_cert(ctx);
        }
        if (sub_eta->parsed()) {
            ctx.command = "eta";
            return cmd_eta(ctx);
        }
        if (sub_census->parsed()) {
            ctx.command = "orbit-census";
            return cmd_orbit_census(ctx);
        }
        if (sub_trace->parsed()) {
            ctx.command = "trace";
            return cmd_trace(ctx);
        }
        if (sub_classic->parsed()) {
            ctx.command = "classic";
            return cmd_classic(ctx);
        }
        if (sub_hj->parsed()) {
            ctx.command = "hj";
            if (hj_mode != "search") {
                throw std::invalid_argument("unknown hj mode '" + hj_mode + "'");
            }
            if (!config_path.empty()) {
                ctx.config.require_keys_subset_of({"hj_d", "node_budget"});
                if (hj_d == 0) hj_d = ctx.config.get_int("hj_d");
                if (ctx.config.has("node_budget")) {
                    hj_budget = ctx.config.get_int("node_budget");
                }
            }
            if (hj_d < 1) throw std::invalid_argument("hj requires -d or config key hj_d");
            ctx.config.set("hj_d", std::to_string(hj_d));
            ctx.config.set("node_budget", std::to_string(hj_budget));
            return cmd_hj(ctx, hj_d, static_cast<std::uint64_t>(hj_budget));
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
