#pragma once

#include <fraclab/errors.hpp>
#include <fraclab/fdsolver.hpp>

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fraclab {

// Flat key-value config with [section] headers and '#' comments. Values keep
// the line they came from so errors can point at the offending entry.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_stream(std::istream& in, const std::string& name);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_number(const std::string& section, const std::string& key) const;
    double get_number_or(const std::string& section, const std::string& key,
                         double fallback) const;
    int get_int_or(const std::string& section, const std::string& key, int fallback) const;

    // Context string "file:line" for diagnostics.
    std::string where(const std::string& section, const std::string& key) const;
    const std::string& name() const { return name_; }

private:
    struct Entry {
        std::string value;
        int line;
    };
    std::string name_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

enum class OutputFormat { csv, table };

struct NumericsConfig {
    int N = 64;
    int M = 256;
    double grading = 1.0;
    double quad_tol = 1e-8;
    double series_tol = 1e-12;
    std::vector<int> M_list;  // converge only
};

struct ReferenceConfig {
    enum class Kind { none, eigenmodes, expr } kind = Kind::none;
    std::vector<EigenMode> modes;
    SpaceTimeFn u;
};

struct RunConfig {
    std::optional<ProblemSpec> problem;
    NumericsConfig numerics;
    ReferenceConfig reference;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
};

// Assembles a validated RunConfig from a parsed file. The [problem] section
// is required unless `problem_optional`; tolerances must be positive.
RunConfig build_run_config(const ConfigFile& cfg, bool problem_optional = false);

// Applies the FRACLAB_OUTDIR override to a relative output path.
std::string resolve_output_path(const std::string& path);

} // namespace fraclab
