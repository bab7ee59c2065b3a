#pragma once

// Command implementations behind the dualrank CLI: single-variety reports,
// the dimension table, and focus reports for leaf lines.

#include "dualrank/duality.hpp"
#include "dualrank/registry.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dualrank {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
    std::string variety_spec;
    std::uint64_t seed{42};
    double rank_tol{kDefaultRankTol};
    GhMode gh_mode{GhMode::Auto};
    int samples{5};
    OutputFormat output{OutputFormat::Json};
    int threads{1};

    /// Throws InputError unless rank_tol is in (0, 1e-2), samples >= 1 and threads >= 1.
    void validate() const;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int bad_spec = 2;
inline constexpr int ambiguous = 3;
inline constexpr int inconsistent = 4;
} // namespace exit_code

GhMode parse_gh_mode(const std::string& text);
OutputFormat parse_format(const std::string& text);

AnalysisConfig analysis_config(const RunConfig& config);

struct CommandResult {
    int exit_code{exit_code::ok};
    std::string output;
};

Json audit_json(const Audit& audit);
Json report_json(const DualityReport& report, const RunConfig& config);
std::string report_text(const DualityReport& report, const RunConfig& config);
int report_exit_code(const DualityReport& report);

CommandResult cmd_analyze(const RunConfig& config);

struct TableRow {
    int example_id{0};
    std::string name;
    std::string spec;
    int N{0}, n{0}, l{0}, r{0};
    int l_star{0}, n_star{0};
    int delta_star{0};
    bool gh_all_singular{false};
    std::optional<std::string> dual_name;
    std::string status; // ok | ambiguous | fail
    TableColumns expected{};
    std::string message;

    bool pass() const { return status == "ok"; }
};

/// One row per table instance, ordered by example id. Rows are analysed on
/// `config.threads` workers; the result does not depend on the thread count.
std::vector<TableRow> table_rows(const RunConfig& config);

std::string table_csv(const std::vector<TableRow>& rows);
Json table_json(const std::vector<TableRow>& rows, const RunConfig& config);
int table_exit_code(const std::vector<TableRow>& rows);

CommandResult cmd_table(const RunConfig& config);

struct FociRequest {
    Eigen::VectorXd at;        // full parameter point (base and leaf) of the leaf's base point
    Eigen::VectorXd direction; // l affine leaf coordinates, or l + 1 homogeneous ones
};

/// Parses a comma-separated list of reals.
Eigen::VectorXd parse_vector(const std::string& text);

CommandResult cmd_foci(const RunConfig& config, const FociRequest& request);

} // namespace dualrank
