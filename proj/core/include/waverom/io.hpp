#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "waverom/diagnostics.hpp"
#include "waverom/snapshot.hpp"

namespace waverom {

/// Deterministic decimal formatting used by every text artifact:
/// scientific notation with 13 significant digits, '.' decimal separator.
std::string format_number(double value);

/// Full matrix, row-major, comma-separated (Gramian/factor inspection dump).
void write_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path);

/// Debug dump of a snapshot family: node positions in the first column, one
/// column per snapshot.
void write_snapshot_debug_csv(const SnapshotMatrix& u, const std::filesystem::path& path);

/// One CSV with a header row and formatted numeric rows.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// BoundReport as JSON (schema documented in the README).
std::string bound_report_json(const BoundReport& report);
void write_bound_report(const BoundReport& report, const std::filesystem::path& path);

/// Reads a CSV written by write_table_csv; returns header + rows.
/// Throws IoError on unreadable files, ConfigError on malformed content.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    int column(const std::string& name) const;  ///< -1 when absent
};
CsvTable read_table_csv(const std::filesystem::path& path);

}  // namespace waverom
