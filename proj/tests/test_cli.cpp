#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return LOGSCH_CLI_PATH; }

fs::path work_dir() {
    static fs::path p = [] {
        fs::path d = fs::temp_directory_path() /
                     ("logsch_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return p;
}

void write_text(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& stderr_file) {
    std::string cmd = std::string("\"") + cli_path() + "\" " + args + " >/dev/null 2>" +
                      stderr_file.string();
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

const char* kSpectrumCfg = R"({
  "grid": {"extents": [[-8.0, 8.0]], "counts": [65]},
  "potential": "harmonic",
  "count": 10
})";

} // namespace

TEST_CASE("identical config and seed produce byte-identical output") {
    fs::path d = work_dir();
    write_text(d / "spectrum.json", kSpectrumCfg);
    fs::create_directories(d / "out1");
    fs::create_directories(d / "out2");

    int rc1 = run_cli("spectrum --config " + (d / "spectrum.json").string() + " --out " +
                          (d / "out1").string() + " --seed 3",
                      d / "e1.txt");
    int rc2 = run_cli("spectrum --config " + (d / "spectrum.json").string() + " --out " +
                          (d / "out2").string() + " --seed 3",
                      d / "e2.txt");
    REQUIRE(rc1 == 0);
    REQUIRE(rc2 == 0);

    std::string a = read_text(d / "out1" / "spectrum.csv");
    std::string b = read_text(d / "out2" / "spectrum.csv");
    REQUIRE_FALSE(a.empty());
    CHECK(a == b);

    // header plus requested rows, smallest eigenvalue near one
    std::istringstream ss(a);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "k,lambda");
    std::getline(ss, line);
    double lambda1 = std::stod(line.substr(line.find(',') + 1));
    CHECK(lambda1 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("configuration errors exit with code 2 and a json diagnostic") {
    fs::path d = work_dir();

    write_text(d / "unknown_key.json", R"({
      "grid": {"extents": [[-8.0, 8.0]], "counts": [65]},
      "potential": "harmonic",
      "bogus_key": 1
    })");
    int rc = run_cli("spectrum --config " + (d / "unknown_key.json").string() + " --out " +
                         d.string(),
                     d / "err_unknown.txt");
    CHECK(rc == 2);
    std::string diag = read_text(d / "err_unknown.txt");
    CHECK(diag.find('{') != std::string::npos);
    CHECK(diag.find("bogus_key") != std::string::npos);

    write_text(d / "broken.json", "{ not json at all");
    CHECK(run_cli("spectrum --config " + (d / "broken.json").string() + " --out " + d.string(),
                  d / "err_broken.txt") == 2);

    CHECK(run_cli("spectrum --config " + (d / "no_such_file.json").string() + " --out " +
                      d.string(),
                  d / "err_missing.txt") == 2);

    // missing a required block inside an otherwise valid config
    write_text(d / "no_potential.json", R"({
      "grid": {"extents": [[-8.0, 8.0]], "counts": [65]}
    })");
    CHECK(run_cli("spectrum --config " + (d / "no_potential.json").string() + " --out " +
                      d.string(),
                  d / "err_nopot.txt") == 2);
}

TEST_CASE("numeric failures exit with code 3 and carry the partial value") {
    fs::path d = work_dir();
    // a one-panel budget cannot resolve the semigroup integral
    write_text(d / "starved.json", R"({
      "grid": {"extents": [[-8.0, 8.0]], "counts": [65]},
      "potential": "harmonic",
      "function": {"type": "gaussian_bump", "center": [0.0], "width": 1.0},
      "times": [0.25],
      "route": "quadrature",
      "quadrature": {"max_panels": 1}
    })");
    int rc = run_cli("cauchy --config " + (d / "starved.json").string() + " --out " + d.string(),
                     d / "err_starved.txt");
    CHECK(rc == 3);
    std::string diag = read_text(d / "err_starved.txt");
    CHECK(diag.find("partial_value") != std::string::npos);
}

TEST_CASE("apply subcommand emits the transformed field") {
    fs::path d = work_dir();
    write_text(d / "apply.json", R"({
      "grid": {"extents": [[-10.0, 10.0]], "counts": [129]},
      "potential": "harmonic",
      "function": {"type": "gaussian_bump", "center": [0.0], "width": 1.0},
      "transform": {"role": "log"}
    })");
    fs::create_directories(d / "out_apply");
    int rc = run_cli("apply --config " + (d / "apply.json").string() + " --out " +
                         (d / "out_apply").string(),
                     d / "err_apply.txt");
    REQUIRE(rc == 0);
    std::string csv = read_text(d / "out_apply" / "apply.csv");
    REQUIRE_FALSE(csv.empty());
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "x0,f,result");
    // count data rows
    int rows = 0;
    while (std::getline(ss, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 129);
}
