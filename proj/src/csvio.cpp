#include <fraclab/csvio.hpp>
#include <fraclab/errors.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fraclab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv_atomic(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out)
            throw config_error("cannot open output file '" + tmp.string() + "'");
        out << header << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                out << format_g17(row[i]);
            }
            out << '\n';
        }
        if (!out)
            throw config_error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw config_error("cannot move '" + tmp.string() + "' into place: " +
                           ec.message());
}

} // namespace fraclab
