#include <doctest.h>

#include <fraclab/csvio.hpp>
#include <fraclab/expr.hpp>
#include <fraclab/runconfig.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace fraclab;

TEST_CASE("expression grammar: values and precedence") {
    CHECK(parse_expr("2+3*4^2")(0, 0) == doctest::Approx(50.0));
    CHECK(parse_expr("-x^2")(3.0, 0) == doctest::Approx(-9.0));
    CHECK(parse_expr("2^-1")(0, 0) == doctest::Approx(0.5));
    CHECK(parse_expr("pi")(0, 0) == doctest::Approx(std::numbers::pi));
    CHECK(parse_expr("sin(x)*cos(t)+exp(-t)")(1.2, 0.4) ==
          doctest::Approx(std::sin(1.2) * std::cos(0.4) + std::exp(-0.4)));
    CHECK(parse_expr("t^1.5")(0, 0.36) == doctest::Approx(std::pow(0.36, 1.5)));
    CHECK(parse_expr(" ( 1 + t ^ 2 ) * sin( x )")(0.7, 0.3) ==
          doctest::Approx((1.0 + 0.09) * std::sin(0.7)));
    CHECK(parse_expr("1e-3 + 2.5E2")(0, 0) == doctest::Approx(250.001));
    CHECK(parse_expr("6/3/2")(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("expression grammar: rejects malformed input with position info") {
    for (const char* bad : {"2*+", "sin 3", "foo(x)", "(1+2", "1+2)", "", "4..5", "x y"}) {
        CHECK_THROWS_AS(parse_expr(bad), config_error);
    }
    try {
        parse_expr("1 + foo(x)");
    } catch (const config_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("position") != std::string::npos);
        CHECK(msg.find("foo") != std::string::npos);
    }
}

namespace {

ConfigFile parse_text(const std::string& text) {
    std::istringstream in(text);
    return ConfigFile::parse_stream(in, "test.cfg");
}

} // namespace

TEST_CASE("config file parsing") {
    ConfigFile cfg = parse_text("# comment\n[problem]\ndelta = 0.5 # trailing\n\n"
                                "[numerics]\nN = 32\nM = 64\n");
    CHECK(cfg.has("problem", "delta"));
    CHECK(cfg.get_number("problem", "delta") == 0.5);
    CHECK(cfg.get_int_or("numerics", "N", 0) == 32);
    CHECK(cfg.get_or("output", "path", "fallback") == "fallback");
    CHECK(cfg.where("problem", "delta").find("test.cfg:3") != std::string::npos);

    CHECK_THROWS_AS(parse_text("[problem\nx = 1\n"), config_error);
    CHECK_THROWS_AS(parse_text("[]\n"), config_error);
    CHECK_THROWS_AS(parse_text("justaword\n"), config_error);
    CHECK_THROWS_AS(parse_text("= 3\n"), config_error);
    CHECK_THROWS_AS(parse_text("[n]\nk = abc\n").get_number("n", "k"), config_error);
    CHECK_THROWS_AS(parse_text("[n]\nk = 1.5\n").get_int_or("n", "k", 0), config_error);
    CHECK_THROWS_AS(parse_text("[n]\n").get("n", "missing"), config_error);
}

namespace {

std::string full_problem_text() {
    return R"([problem]
delta = 0.5
a = 0
b = 3.141592653589793
T = 1.0
p = 1
q = 0
r = 0
f = 0
phi0 = sin(x)
phi0_dxx = -sin(x)
psi_a = 0
psi_b = 0

[numerics]
N = 16
M = 8
grading = 1.0

[reference]
type = eigenmodes
modes = 1:1, 3:0.5

[output]
path = out.csv
format = csv
)";
}

} // namespace

TEST_CASE("run config assembly") {
    ConfigFile cfg = parse_text(full_problem_text());
    RunConfig rc = build_run_config(cfg);
    REQUIRE(rc.problem.has_value());
    CHECK(rc.problem->delta().value() == 0.5);
    CHECK(rc.problem->data().phi0(std::numbers::pi / 2.0) == doctest::Approx(1.0));
    CHECK(rc.problem->data().f(0.3, 0.7) == 0.0);
    CHECK(rc.numerics.N == 16);
    CHECK(rc.reference.kind == ReferenceConfig::Kind::eigenmodes);
    REQUIRE(rc.reference.modes.size() == 2);
    CHECK(rc.reference.modes[1].k == 3);
    CHECK(rc.reference.modes[1].coefficient == 0.5);
    CHECK(rc.output_path == "out.csv");
}

TEST_CASE("run config rejects inconsistent entries") {
    {
        std::string text = full_problem_text();
        text.replace(text.find("delta = 0.5"), 11, "delta = 1.0");
        CHECK_THROWS_AS(build_run_config(parse_text(text)), config_error);
    }
    {
        std::string text = full_problem_text();
        text.replace(text.find("grading = 1.0"), 13, "grading = 0.2");
        CHECK_THROWS_AS(build_run_config(parse_text(text)), config_error);
    }
    {
        std::string text = full_problem_text();
        text.replace(text.find("format = csv"), 12, "format = xml");
        CHECK_THROWS_AS(build_run_config(parse_text(text)), config_error);
    }
    {
        std::string text = full_problem_text();
        text.replace(text.find("phi0 = sin(x)"), 13, "phi0 = sin(x");
        CHECK_THROWS_AS(build_run_config(parse_text(text)), config_error);
    }
    {
        // incompatible corner: phi0(0) = 1 but psi_a(0) = 0
        std::string text = full_problem_text();
        text.replace(text.find("phi0 = sin(x)"), 13, "phi0 = cos(x)");
        CHECK_THROWS_AS(build_run_config(parse_text(text)), config_error);
    }
    {
        std::string text = full_problem_text();
        text.replace(text.find("type = eigenmodes"), 17, "type = wrong");
        CHECK_THROWS_AS(build_run_config(parse_text(text)), config_error);
    }
}

TEST_CASE("expression reference in config") {
    std::string text = full_problem_text();
    text.replace(text.find("type = eigenmodes"), 17, "type = expr");
    text.replace(text.find("modes = 1:1, 3:0.5"), 18, "u = (1+t^2)*sin(x)");
    RunConfig rc = build_run_config(parse_text(text));
    CHECK(rc.reference.kind == ReferenceConfig::Kind::expr);
    CHECK(rc.reference.u(0.5, 2.0) == doctest::Approx(5.0 * std::sin(0.5)));
}

TEST_CASE("g17 formatting round-trips doubles bit-exactly") {
    for (double v : {0.1, 1.0 / 3.0, 6.02e23, -1.2345678901234567e-7, 0.0}) {
        CHECK(std::stod(format_g17(v)) == v);
    }
}

TEST_CASE("atomic csv writes: no temp residue, byte-identical reruns") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "fraclab_csv_test";
    fs::remove_all(dir);
    std::string path = (dir / "out.csv").string();
    std::vector<std::vector<double>> rows = {{1.0, 0.1}, {2.0, 1.0 / 3.0}};
    write_csv_atomic(path, "a,b", rows);
    write_csv_atomic(path, "a,b", rows);
    CHECK(fs::exists(path));
    CHECK(!fs::exists(path + ".tmp"));
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b");
    std::getline(in, line);
    CHECK(line == "1,0.10000000000000001");
    fs::remove_all(dir);
}

TEST_CASE("output root override applies to relative paths only") {
    setenv("FRACLAB_OUTDIR", "/tmp/fraclab_root", 1);
    CHECK(resolve_output_path("x.csv") == "/tmp/fraclab_root/x.csv");
    CHECK(resolve_output_path("/abs/x.csv") == "/abs/x.csv");
    unsetenv("FRACLAB_OUTDIR");
    CHECK(resolve_output_path("x.csv") == "x.csv");
}
