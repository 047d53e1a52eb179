#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qgstat/classify.hpp"
#include "qgstat/dyadic.hpp"
#include "qgstat/graph.hpp"
#include "qgstat/quantize.hpp"
#include "qgstat/spectral.hpp"

namespace qgstat {

/// Process exit codes shared by the CLI and the report runners.
enum class ExitStatus : int {
    ok = 0,
    config_error = 1,
    oracle_mismatch = 2,
    table_mismatch = 3,
    mc_nonconvergence = 4,
};

struct RunConfig {
    int p = 1;
    int r = 3;
    std::optional<std::filesystem::path> graph_file;  // overrides p, r
    std::optional<int> n;                             // single index
    int n_min = 0;
    std::optional<int> n_max;                         // default B/2
    EnumerationMode mode = EnumerationMode::bond_distinct;
    std::int64_t samples = 1'000'000;                 // 0 disables Monte Carlo
    std::uint64_t seed = 1;
    double k_max = 1e5;
    int threads = 1;
    std::vector<int> r_values{2, 3, 4, 5};            // convergence study
    int exhaustive_max_bonds = 24;                    // larger graphs skip exact columns
    EnumerationLimits limits;
};

/// Graph plus bond lengths as used by a run, with provenance.
struct LoadedSystem {
    DirectedGraph graph;
    BondLengths lengths;
    std::string source;        // "binary p=1 r=3" or the file path
    std::string content_hash;  // git blob hash of the graph document
};

LoadedSystem load_system(const RunConfig& config);

/// Git blob object id (SHA-1 of "blob <size>\0" + contents), lowercase hex.
std::string git_blob_hash(std::string_view contents);

/// Indices selected by n / n_min / n_max for a graph with `bond_count` bonds.
std::vector<int> selected_indices(const RunConfig& config, int bond_count);

/// Published class counts and variances for the two tabulated binary graphs.
struct ReferenceRow {
    int n = 0;
    std::int64_t p0 = 0;
    std::vector<std::int64_t> phat;  // |P^1|, |P^2|, ...
    Dyadic variance;
    double numerics = 0.0;
    /// Printed p0 is inconsistent with the printed variance; enumeration
    /// disagrees with it and the run reports the difference instead of failing.
    bool p0_inconsistent = false;
};

std::optional<std::vector<ReferenceRow>> reference_table(int p, int r);

struct TableRow {
    int n = 0;
    std::optional<ClassCounts> counts;
    bool mirrored = false;  // counts taken from index B - n
    std::optional<Dyadic> exact;
    std::optional<double> oracle;
    std::optional<VarianceEstimate> mc;
    std::optional<DiagonalEstimate> diagonal;
};

struct TableReport {
    std::string source;
    std::string content_hash;
    int vertex_count = 0;
    int bond_count = 0;
    std::vector<TableRow> rows;
    std::vector<std::string> notes;
    ExitStatus status = ExitStatus::ok;
    double enumeration_seconds = 0.0;
    double oracle_seconds = 0.0;
    double mc_seconds = 0.0;
};

/// Class counts, exact formula value, minor oracle and Monte Carlo estimate
/// for every selected n, plus cross-checks folded into `status`.
TableReport run_table_report(const RunConfig& config);

/// n,P0,P1,...,exact_fraction,exact_decimal,oracle,mc_mean,mc_stderr,abs_error
std::string table_csv(const TableReport& report);

/// n,exact,oracle,mc_mean,mc_stderr,samples,seed
std::string variance_csv(const TableReport& report);

/// Config echo, graph hash, notes and timings.
std::string table_sidecar_json(const TableReport& report, const RunConfig& config);

struct ConvergencePoint {
    int r = 0;
    int bond_count = 0;
    int n = 0;
    VarianceEstimate estimate;
    double distance = 0.0;  // |estimate - 1/2|
};

/// Monte Carlo variance at n = B/2 (or config.n when set) for each r in
/// config.r_values, on binary graphs with the configured p.
std::vector<ConvergencePoint> run_convergence_study(const RunConfig& config);

/// r,B,n,estimate,stderr,abs_diff_half
std::string convergence_csv(const std::vector<ConvergencePoint>& points);

/// One JSON line: {"orbits": [[...]], "n", "m", "N", "class"}.
std::string orbit_dump_line(const DirectedGraph& g, const PseudoOrbit& pseudo_orbit);

/// Shortest round-trip decimal rendering.
std::string format_double(double x);

}  // namespace qgstat
