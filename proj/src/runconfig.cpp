#include <fraclab/runconfig.hpp>
#include <fraclab/expr.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fraclab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    return parse_stream(in, path);
}

ConfigFile ConfigFile::parse_stream(std::istream& in, const std::string& name) {
    ConfigFile cfg;
    cfg.name_ = name;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string s = trim(line);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                std::ostringstream os;
                os << name << ":" << lineno << ": unterminated section header";
                throw config_error(os.str());
            }
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) {
                std::ostringstream os;
                os << name << ":" << lineno << ": empty section name";
                throw config_error(os.str());
            }
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << name << ":" << lineno << ": expected key = value";
            throw config_error(os.str());
        }
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream os;
            os << name << ":" << lineno << ": empty key";
            throw config_error(os.str());
        }
        cfg.sections_[section][key] = Entry{value, lineno};
    }
    return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s != sections_.end()) {
        auto k = s->second.find(key);
        if (k != s->second.end()) return k->second.value;
    }
    throw config_error(name_ + ": missing required key '" + key + "' in section [" +
                       section + "]");
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

std::string ConfigFile::where(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s != sections_.end()) {
        auto k = s->second.find(key);
        if (k != s->second.end()) {
            std::ostringstream os;
            os << name_ << ":" << k->second.line;
            return os.str();
        }
    }
    return name_;
}

double ConfigFile::get_number(const std::string& section, const std::string& key) const {
    std::string v = get(section, key);
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw config_error(where(section, key) + ": value of '" + key +
                           "' is not a number: '" + v + "'");
    }
}

double ConfigFile::get_number_or(const std::string& section, const std::string& key,
                                 double fallback) const {
    return has(section, key) ? get_number(section, key) : fallback;
}

int ConfigFile::get_int_or(const std::string& section, const std::string& key,
                           int fallback) const {
    if (!has(section, key)) return fallback;
    double v = get_number(section, key);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw config_error(where(section, key) + ": '" + key + "' must be an integer");
    return i;
}

namespace {

SpaceTimeFn expr_or_fail(const ConfigFile& cfg, const std::string& section,
                         const std::string& key) {
    std::string text = cfg.get(section, key);
    try {
        return parse_expr(text);
    } catch (const config_error& e) {
        throw config_error(cfg.where(section, key) + ": " + e.what());
    }
}

TimeFn boundary_expr(const ConfigFile& cfg, const std::string& key) {
    SpaceTimeFn e = expr_or_fail(cfg, "problem", key);
    return [e](double t) { return e(0.0, t); };
}

std::vector<int> parse_int_list(const ConfigFile& cfg, const std::string& section,
                                const std::string& key) {
    std::string text = cfg.get(section, key);
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw config_error(cfg.where(section, key) + ": bad integer '" + item + "'");
        }
    }
    if (out.empty())
        throw config_error(cfg.where(section, key) + ": empty list for '" + key + "'");
    return out;
}

std::vector<EigenMode> parse_modes(const ConfigFile& cfg, const std::string& section,
                                   const std::string& key) {
    // Format: "1:1.0, 3:0.5" meaning sum of c_k sin(kx).
    std::string text = cfg.get(section, key);
    std::vector<EigenMode> modes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t colon = item.find(':');
        try {
            int k = std::stoi(item.substr(0, colon));
            double c = colon == std::string::npos ? 1.0 : std::stod(item.substr(colon + 1));
            modes.push_back({k, c});
        } catch (const std::exception&) {
            throw config_error(cfg.where(section, key) + ": bad mode '" + item +
                               "', expected k:coefficient");
        }
    }
    if (modes.empty())
        throw config_error(cfg.where(section, key) + ": no modes given");
    return modes;
}

} // namespace

RunConfig build_run_config(const ConfigFile& cfg, bool problem_optional) {
    RunConfig rc;

    if (cfg.has("problem", "delta") || !problem_optional) {
        ProblemData d;
        d.delta = [&] {
            double v = cfg.get_number("problem", "delta");
            try {
                return FractionalOrder(v);
            } catch (const std::domain_error& e) {
                throw config_error(cfg.where("problem", "delta") + ": " + e.what());
            }
        }();
        d.a = cfg.get_number_or("problem", "a", 0.0);
        d.b = cfg.get_number_or("problem", "b", 3.141592653589793);
        d.T = cfg.get_number_or("problem", "T", 1.0);
        d.p = expr_or_fail(cfg, "problem", "p");
        d.q = expr_or_fail(cfg, "problem", "q");
        d.r = expr_or_fail(cfg, "problem", "r");
        d.f = expr_or_fail(cfg, "problem", "f");
        {
            SpaceTimeFn pa = expr_or_fail(cfg, "problem", "psi_a");
            SpaceTimeFn pb = expr_or_fail(cfg, "problem", "psi_b");
            double a = d.a, b = d.b;
            d.psi_a = [pa, a](double t) { return pa(a, t); };
            d.psi_b = [pb, b](double t) { return pb(b, t); };
        }
        {
            SpaceTimeFn e = expr_or_fail(cfg, "problem", "phi0");
            d.phi0 = [e](double x) { return e(x, 0.0); };
        }
        if (cfg.has("problem", "phi1")) {
            SpaceTimeFn e = expr_or_fail(cfg, "problem", "phi1");
            d.phi1 = [e](double x) { return e(x, 0.0); };
        }
        for (auto [key, slot] :
             {std::pair<const char*, SpaceFn ProblemData::*>{"phi0_dx", &ProblemData::phi0_dx},
              {"phi0_dxx", &ProblemData::phi0_dxx},
              {"q_dx", &ProblemData::q_dx}}) {
            if (cfg.has("problem", key)) {
                SpaceTimeFn e = expr_or_fail(cfg, "problem", key);
                d.*slot = [e](double x) { return e(x, 0.0); };
            }
        }
        try {
            rc.problem.emplace(std::move(d));
        } catch (const std::invalid_argument& e) {
            throw config_error(cfg.name() + ": [problem] rejected: " + e.what());
        }
    }

    rc.numerics.N = cfg.get_int_or("numerics", "N", 64);
    rc.numerics.M = cfg.get_int_or("numerics", "M", 256);
    rc.numerics.grading = cfg.get_number_or("numerics", "grading", 1.0);
    rc.numerics.quad_tol = cfg.get_number_or("numerics", "quad_tol", 1e-8);
    rc.numerics.series_tol = cfg.get_number_or("numerics", "series_tol", 1e-12);
    if (cfg.has("numerics", "M_list"))
        rc.numerics.M_list = parse_int_list(cfg, "numerics", "M_list");
    if (rc.numerics.N < 2)
        throw config_error(cfg.where("numerics", "N") + ": N must be >= 2");
    if (rc.numerics.M < 1)
        throw config_error(cfg.where("numerics", "M") + ": M must be >= 1");
    if (!(rc.numerics.grading >= 1.0))
        throw config_error(cfg.where("numerics", "grading") + ": grading must be >= 1");
    if (!(rc.numerics.quad_tol > 0.0) || !(rc.numerics.series_tol > 0.0))
        throw config_error(cfg.name() + ": tolerances must be positive");

    std::string ref_kind = cfg.get_or("reference", "type", "none");
    if (ref_kind == "eigenmodes") {
        rc.reference.kind = ReferenceConfig::Kind::eigenmodes;
        rc.reference.modes = parse_modes(cfg, "reference", "modes");
    } else if (ref_kind == "expr") {
        rc.reference.kind = ReferenceConfig::Kind::expr;
        rc.reference.u = expr_or_fail(cfg, "reference", "u");
    } else if (ref_kind != "none") {
        throw config_error(cfg.where("reference", "type") +
                           ": type must be eigenmodes, expr or none");
    }

    rc.output_path = cfg.get_or("output", "path", "");
    std::string fmt = cfg.get_or("output", "format", "csv");
    if (fmt == "csv")
        rc.format = OutputFormat::csv;
    else if (fmt == "table")
        rc.format = OutputFormat::table;
    else
        throw config_error(cfg.where("output", "format") +
                           ": format must be csv or table");
    return rc;
}

std::string resolve_output_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (path.empty()) return path;
    fs::path p(path);
    if (p.is_absolute()) return path;
    const char* root = std::getenv("FRACLAB_OUTDIR");
    if (!root || !*root) return path;
    return (fs::path(root) / p).string();
}

} // namespace fraclab
