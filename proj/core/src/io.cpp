#include "waverom/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "waverom/errors.hpp"

namespace waverom {

std::string format_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12e", value);
    return buffer;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                          ec.message());
        }
    }
    std::ofstream out(path);
    if (!out.is_open()) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out.good()) {
        throw IoError("write failed for " + path.string());
    }
}

}  // namespace

void write_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    for (long i = 0; i < m.rows(); ++i) {
        for (long j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_number(m(i, j));
        }
        out << '\n';
    }
    finish_output(out, path);
}

void write_snapshot_debug_csv(const SnapshotMatrix& u, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "x";
    for (int k = 0; k < u.snapshot_count(); ++k) {
        out << ",t" << format_number(u.times()[k]);
    }
    out << '\n';
    for (int i = 0; i < u.grid().node_count(); ++i) {
        out << format_number(u.grid().node(i));
        for (int k = 0; k < u.snapshot_count(); ++k) {
            out << ',' << format_number(u.matrix()(i, k));
        }
        out << '\n';
    }
    finish_output(out, path);
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_output(path);
    for (size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw ConfigError("write_table_csv: row width does not match header");
        }
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << format_number(row[j]);
        }
        out << '\n';
    }
    finish_output(out, path);
}

std::string bound_report_json(const BoundReport& report) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n"] = report.n;
    j["tau"] = report.tau;
    j["eps"] = report.eps;
    j["kappa"] = report.kappa;
    j["r_frobenius"] = report.r_frobenius;
    j["best_error"] = report.best_error;
    j["lift_vs_projection"] = report.lift_vs_projection;
    j["lift_error"] = report.lift_error;
    j["bound_rhs"] = report.bound_rhs;
    j["mass_gap"] = report.mass_gap;
    j["diag_ratio_max"] = report.diag_ratio_max;
    j["diag_ratios"] = report.diag_ratios;
    j["in_regime"] = report.in_regime;
    j["bound_satisfied"] = report.bound_satisfied;
    j["stewart_sun"] = {{"eps", report.stewart_sun.eps},
                        {"kappa", report.stewart_sun.kappa},
                        {"bound", report.stewart_sun.bound},
                        {"actual", report.stewart_sun.actual},
                        {"ratio", report.stewart_sun.ratio},
                        {"in_regime", report.stewart_sun.in_regime},
                        {"within_factor", report.stewart_sun.within_factor}};
    return j.dump(2) + "\n";
}

void write_bound_report(const BoundReport& report, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << bound_report_json(report);
    finish_output(out, path);
}

int CsvTable::column(const std::string& name) const {
    for (size_t j = 0; j < header.size(); ++j) {
        if (header[j] == name) return static_cast<int>(j);
    }
    return -1;
}

CsvTable read_table_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("empty CSV: " + path.string());
    }
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(cell);

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) {
            // strtod accepts subnormals that std::stod would reject
            char* end = nullptr;
            const double value = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0') {
                throw ConfigError("malformed CSV cell '" + cell + "' in " + path.string());
            }
            row.push_back(value);
        }
        if (row.size() != table.header.size()) {
            throw ConfigError("ragged CSV row in " + path.string());
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace waverom
