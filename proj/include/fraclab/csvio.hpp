#pragma once

#include <string>
#include <vector>

namespace fraclab {

// 17 significant digits: doubles round-trip bit-exactly through the file.
std::string format_g17(double v);

// Writes header + rows to a temporary file in the target directory, then
// renames it into place, so readers never observe a partial file.
void write_csv_atomic(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows);

} // namespace fraclab
