#pragma once
#include <string>
#include <vector>

namespace runup {

// Writes `# `-prefixed comment lines, a header row, then the column data.
// All columns must share one length. Values are printed with %.17g.
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& data);

// Reads numeric columns; skips blank lines, `#` comments, and a non-numeric
// header row. Throws std::runtime_error on ragged rows.
std::vector<std::vector<double>> read_csv_columns(const std::string& path);

}
