#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qwsink {

/// Everything a CLI run needs; JSON config file and command line flags both
/// fill this in (flags win).
struct RunConfig {
    double omega = 1.0;
    double kappa = 1.0;
    int s0 = 1;
    double t_max = 30.0;
    double dt = 0.1;
    int m_max = 40;
    int k_nodes = 128;
    int sites = 0; ///< optional site-sum cutoff override; 0 = automatic
    std::string format = "csv"; ///< "csv" or "json"
    std::string output;         ///< empty = stdout
    std::vector<double> eta_list;
    std::vector<double> snapshots;

    /// Serialize to a JSON object at full precision (17 significant digits).
    std::string to_json() const;
    /// Parse from a JSON object; unknown keys rejected, missing keys keep defaults.
    static RunConfig from_json(const std::string& text);

    bool operator==(const RunConfig&) const = default;
};

/// Column-oriented numeric table; the common shape of every command output.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Format a double with 17 significant digits ("%.17g"), locale-independent.
std::string format_full(double v);

/// CSV with a header row; every number at full precision.
void write_csv(std::ostream& os, const Table& table);

/// JSON document {"schema_version": 1, "config": ..., "columns": ..., "data": ...}
/// mirroring the CSV layout.  config_json must already be a JSON object.
void write_json(std::ostream& os, const Table& table, const std::string& config_json);

/// Parse a comma-separated list of numbers ("0.25,1,4").
std::vector<double> parse_number_list(const std::string& text);

} // namespace qwsink
