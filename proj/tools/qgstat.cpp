// qgstat: command-line front end for the quantum-graph variance pipelines.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgstat/classify.hpp"
#include "qgstat/graph_io.hpp"
#include "qgstat/report.hpp"

using namespace qgstat;

namespace {

struct Options {
    RunConfig config;
    std::string graph_file;
    std::string mode = "bond-distinct";
    std::string out;
    bool with_lengths = false;
};

void emit(const Options& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(opts.out, text);
    }
}

RunConfig finalize(const Options& opts) {
    RunConfig config = opts.config;
    if (!opts.graph_file.empty()) config.graph_file = opts.graph_file;
    if (opts.mode == "general") {
        config.mode = EnumerationMode::general;
    } else if (opts.mode == "bond-distinct" || opts.mode == "bond_distinct") {
        config.mode = EnumerationMode::bond_distinct;
    } else {
        throw std::invalid_argument("--mode must be bond-distinct or general");
    }
    return config;
}

void add_graph_flags(CLI::App* cmd, Options& opts) {
    cmd->add_option("--p", opts.config.p, "Odd factor p of V = p 2^r")->capture_default_str();
    cmd->add_option("--r", opts.config.r, "Exponent r of V = p 2^r")->capture_default_str();
    cmd->add_option("--graph-file", opts.graph_file, "Graph JSON file (overrides --p/--r)");
    cmd->add_option("--seed", opts.config.seed, "Seed for bond lengths and k sampling")->capture_default_str();
}

void add_range_flags(CLI::App* cmd, Options& opts) {
    cmd->add_option("--n", opts.config.n, "Single coefficient index");
    cmd->add_option("--n-min", opts.config.n_min, "First coefficient index")->capture_default_str();
    cmd->add_option("--n-max", opts.config.n_max, "Last coefficient index (default B/2)");
}

void add_mc_flags(CLI::App* cmd, Options& opts) {
    cmd->add_option("--samples", opts.config.samples, "Monte Carlo samples (0 disables)")->capture_default_str();
    cmd->add_option("--kmax", opts.config.k_max, "Upper end of the k interval")->capture_default_str();
    cmd->add_option("--threads", opts.config.threads, "Worker threads")->capture_default_str();
}

TableReport empty_report(const LoadedSystem& system, const std::vector<int>& indices) {
    TableReport report;
    report.source = system.source;
    report.content_hash = system.content_hash;
    report.vertex_count = system.graph.vertex_count();
    report.bond_count = system.graph.bond_count();
    for (int n : indices) {
        TableRow row;
        row.n = n;
        report.rows.push_back(std::move(row));
    }
    return report;
}

int cmd_graph_gen(const Options& opts) {
    const DirectedGraph g = build_binary_graph(opts.config.p, opts.config.r);
    if (opts.with_lengths) {
        const BondLengths lengths = sample_bond_lengths(g, opts.config.seed);
        emit(opts, graph_to_json(g, &lengths, opts.config.seed));
    } else {
        emit(opts, graph_to_json(g));
    }
    return 0;
}

int cmd_graph_validate(const Options& opts) {
    const RunConfig config = finalize(opts);
    const DirectedGraph g = config.graph_file ? load_graph_file(*config.graph_file, false).graph
                                              : build_binary_graph(config.p, config.r);
    const ValidationReport report = validate_graph(g);
    nlohmann::json doc;
    doc["V"] = g.vertex_count();
    doc["B"] = g.bond_count();
    doc["regular"] = report.regular;
    doc["bond_count_matches"] = report.bond_count_matches;
    doc["strongly_connected"] = report.strongly_connected;
    doc["ok"] = report.ok();
    doc["problems"] = report.problems;
    nlohmann::json ports = nlohmann::json::array();
    for (const auto& p : report.ports) ports.push_back({{"in", p.in_bonds}, {"out", p.out_bonds}});
    doc["ports"] = std::move(ports);
    emit(opts, doc.dump(2) + "\n");
    return report.ok() ? 0 : static_cast<int>(ExitStatus::config_error);
}

int cmd_orbits_enumerate(const Options& opts) {
    const RunConfig config = finalize(opts);
    const LoadedSystem system = load_system(config);
    std::ostringstream out;
    for (int n : selected_indices(config, system.graph.bond_count())) {
        for (const auto& po : enumerate_pseudo_orbits(system.graph, n, config.mode, config.limits)) {
            out << orbit_dump_line(system.graph, po) << '\n';
        }
    }
    emit(opts, out.str());
    return 0;
}

int cmd_orbits_classify(const Options& opts) {
    const RunConfig config = finalize(opts);
    const LoadedSystem system = load_system(config);
    const auto indices = selected_indices(config, system.graph.bond_count());
    std::vector<ClassCounts> all;
    int top = 1;
    for (int n : indices) {
        all.push_back(class_counts(system.graph, n, config.mode, config.limits));
        if (!all.back().phat.empty()) top = std::max(top, all.back().phat.rbegin()->first);
    }
    std::ostringstream out;
    out << "n,P0";
    for (int N = 1; N <= top; ++N) out << ",P" << N;
    out << ",excluded,exact_fraction,exact_decimal\n";
    for (const auto& c : all) {
        const Dyadic v = variance_from_classes(c);
        out << c.n << ',' << c.p0;
        for (int N = 1; N <= top; ++N) out << ',' << c.phat_at(N);
        out << ',' << c.excluded << ',' << v.to_fraction() << ',' << format_double(v.to_double()) << '\n';
    }
    emit(opts, out.str());
    return 0;
}

int cmd_variance(const Options& opts, const std::string& which) {
    const RunConfig config = finalize(opts);
    const LoadedSystem system = load_system(config);
    const int B = system.graph.bond_count();
    const auto indices = selected_indices(config, B);

    if (which == "diagonal") {
        std::ostringstream out;
        out << "n,pseudo_orbits,diagonal_fraction,diagonal_decimal\n";
        for (int n : indices) {
            const DiagonalEstimate d = diagonal_approximation(system.graph, n, config.limits);
            out << n << ',' << d.pseudo_orbits << ',' << d.value.to_fraction() << ',' << format_double(d.value.to_double())
                << '\n';
        }
        emit(opts, out.str());
        return 0;
    }

    TableReport report = empty_report(system, indices);
    const BondScattering S(system.graph);
    if (which == "exact") {
        for (auto& row : report.rows) {
            const int source_n = row.n <= B / 2 ? row.n : B - row.n;
            row.exact = variance_from_classes(class_counts(system.graph, source_n, config.mode, config.limits));
        }
    } else if (which == "oracle") {
        for (auto& row : report.rows) row.oracle = minor_sum_variance(S, row.n);
    } else {
        if (config.samples < 2) throw std::invalid_argument("--samples must be at least 2");
        MonteCarloOptions mc{config.samples, config.seed, config.k_max, config.threads};
        const auto estimates = mc_variance(S, system.lengths, indices, mc);
        for (std::size_t i = 0; i < estimates.size(); ++i) report.rows[i].mc = estimates[i];
    }
    emit(opts, variance_csv(report));
    return 0;
}

int cmd_report_table(const Options& opts) {
    const RunConfig config = finalize(opts);
    const TableReport report = run_table_report(config);
    emit(opts, table_csv(report));
    if (!opts.out.empty()) write_text_file(opts.out + ".json", table_sidecar_json(report, config));
    for (const auto& note : report.notes) std::cerr << "note: " << note << '\n';
    return static_cast<int>(report.status);
}

int cmd_report_convergence(const Options& opts) {
    const RunConfig config = finalize(opts);
    const auto points = run_convergence_study(config);
    emit(opts, convergence_csv(points));
    // Largest graph should sit closer to 1/2 than the smallest one.
    if (points.size() >= 2) {
        const auto& first = points.front();
        const auto& last = points.back();
        const double margin = 3.0 * std::hypot(first.estimate.std_error, last.estimate.std_error);
        if (!(first.distance - last.distance > margin)) {
            std::cerr << "note: no resolved convergence toward 1/2 between r=" << first.r << " and r=" << last.r
                      << '\n';
            return static_cast<int>(ExitStatus::mc_nonconvergence);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance of characteristic-polynomial coefficients of 4-regular quantum graphs"};
    app.require_subcommand(1);
    Options opts;

    auto* graph = app.add_subcommand("graph", "Build or validate graphs");
    graph->require_subcommand(1);
    auto* gen = graph->add_subcommand("gen", "Write a binary graph as JSON");
    gen->add_option("--p", opts.config.p, "Odd factor p")->capture_default_str();
    gen->add_option("--r", opts.config.r, "Exponent r")->capture_default_str();
    gen->add_option("--seed", opts.config.seed, "Seed for sampled bond lengths")->capture_default_str();
    gen->add_flag("--lengths", opts.with_lengths, "Include sampled bond lengths");
    gen->add_option("--out", opts.out, "Output path (default stdout)");
    auto* validate = graph->add_subcommand("validate", "Check 4-regularity and strong connectivity");
    add_graph_flags(validate, opts);
    validate->add_option("--out", opts.out, "Output path (default stdout)");

    auto* orbits = app.add_subcommand("orbits", "Pseudo-orbit enumeration");
    orbits->require_subcommand(1);
    auto* enumerate = orbits->add_subcommand("enumerate", "Dump pseudo orbits as JSON lines");
    auto* classify = orbits->add_subcommand("classify", "Class counts per n as CSV");
    for (auto* cmd : {enumerate, classify}) {
        add_graph_flags(cmd, opts);
        add_range_flags(cmd, opts);
        cmd->add_option("--mode", opts.mode, "bond-distinct or general")->capture_default_str();
        cmd->add_option("--out", opts.out, "Output path (default stdout)");
    }

    auto* variance = app.add_subcommand("variance", "Single variance pipeline as CSV");
    variance->require_subcommand(1);
    std::string which;
    for (const char* name : {"exact", "oracle", "mc", "diagonal"}) {
        auto* cmd = variance->add_subcommand(name);
        add_graph_flags(cmd, opts);
        add_range_flags(cmd, opts);
        add_mc_flags(cmd, opts);
        cmd->add_option("--mode", opts.mode, "Enumeration mode for exact")->capture_default_str();
        cmd->add_option("--out", opts.out, "Output path (default stdout)");
        cmd->callback([&which, name] { which = name; });
    }

    auto* report = app.add_subcommand("report", "Full cross-checked reports");
    report->require_subcommand(1);
    auto* table = report->add_subcommand("table", "Class counts, exact, oracle and Monte Carlo per n");
    add_graph_flags(table, opts);
    add_range_flags(table, opts);
    add_mc_flags(table, opts);
    table->add_option("--mode", opts.mode, "bond-distinct or general")->capture_default_str();
    table->add_option("--out", opts.out, "CSV path; a .json sidecar is written next to it");
    auto* convergence = report->add_subcommand("convergence", "Monte Carlo variance at n = B/2 across r");
    convergence->add_option("--p", opts.config.p, "Odd factor p")->capture_default_str();
    convergence->add_option("--r", opts.config.r_values, "Exponents r (repeat or comma-separate)")
        ->delimiter(',')
        ->capture_default_str();
    convergence->add_option("--n", opts.config.n, "Fixed index instead of B/2");
    convergence->add_option("--seed", opts.config.seed, "Seed")->capture_default_str();
    add_mc_flags(convergence, opts);
    convergence->add_option("--out", opts.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : static_cast<int>(ExitStatus::config_error);
    }

    try {
        if (gen->parsed()) return cmd_graph_gen(opts);
        if (validate->parsed()) return cmd_graph_validate(opts);
        if (enumerate->parsed()) return cmd_orbits_enumerate(opts);
        if (classify->parsed()) return cmd_orbits_classify(opts);
        if (variance->parsed()) return cmd_variance(opts, which);
        if (table->parsed()) return cmd_report_table(opts);
        if (convergence->parsed()) return cmd_report_convergence(opts);
    } catch (const std::exception& e) {
        std::cerr << "qgstat: " << e.what() << '\n';
        return static_cast<int>(ExitStatus::config_error);
    }
    return static_cast<int>(ExitStatus::config_error);
}
