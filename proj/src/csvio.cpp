#include "runup/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "runup/common.hpp"

namespace runup {

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& data) {
    require(columns.size() == data.size(), "write_csv: header/column mismatch");
    const size_t rows = data.empty() ? 0 : data[0].size();
    for (const auto& col : data)
        require(col.size() == rows, "write_csv: ragged columns");
    std::ofstream f(path);
    if (!f) numerical_error("cannot open '" + path + "' for writing");
    for (const auto& c : comments) f << "# " << c << "\n";
    for (size_t c = 0; c < columns.size(); ++c)
        f << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    char buf[40];
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", data[c][r]);
            f << buf << (c + 1 < columns.size() ? "," : "\n");
        }
    }
    if (!f) numerical_error("short write to '" + path + "'");
}

std::vector<std::vector<double>> read_csv_columns(const std::string& path) {
    std::ifstream f(path);
    if (!f) numerical_error("cannot open '" + path + "'");
    std::vector<std::vector<double>> cols;
    std::string line;
    size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (...) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (cols.empty()) continue;  // header row
            numerical_error(path + ":" + std::to_string(lineno) + ": non-numeric cell");
        }
        if (row.empty()) continue;
        if (cols.empty()) cols.resize(row.size());
        if (row.size() != cols.size())
            numerical_error(path + ":" + std::to_string(lineno) + ": ragged row");
        for (size_t c = 0; c < row.size(); ++c) cols[c].push_back(row[c]);
    }
    if (cols.empty()) numerical_error(path + ": no data rows");
    return cols;
}

}
