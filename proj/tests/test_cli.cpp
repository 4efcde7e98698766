#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end tests against the built binary; the path comes from the
// SHARPCERT_CLI environment variable (set by CTest), with a fallback to
// the build-tree layout.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string cli_path() {
    if (const char* env = std::getenv("SHARPCERT_CLI"))
        return env;
    return "../tools/sharpcert";
}

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
    const std::string out_file = "cli_capture.tmp";
    const std::string command = cli_path() + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(command.c_str());

    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    result.output = buf.str();
    std::remove(out_file.c_str());
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("certify writes the expected certificate fields") {
    const CliResult r = run_cli("certify --p 4 --out cert4.tmp");
    CHECK(r.exit_code == 0);
    const std::string cert = read_file("cert4.tmp");
    CHECK(cert.find("sharpcert-v1") == 0);
    CHECK(cert.find("sharp_constant = 3/2") != std::string::npos);
    CHECK(cert.find("kernel = 1, 1/3, 1/3, 1/3") != std::string::npos);
    std::remove("cert4.tmp");
}

TEST_CASE("certify p=1 reports the degenerate case, p=0 is a usage error") {
    const CliResult one = run_cli("certify --p 1");
    CHECK(one.exit_code == 0);
    CHECK(one.output.find("p=1: equality for all x; constant 1") != std::string::npos);

    CHECK(run_cli("certify --p 0").exit_code == 2);
    CHECK(run_cli("certify --p -3").exit_code == 2);
}

TEST_CASE("verify round-trips certify output") {
    REQUIRE(run_cli("certify --p 7 --out cert7.tmp").exit_code == 0);
    const CliResult ok = run_cli("verify cert7.tmp");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("verified") != std::string::npos);

    // machine format names the verdict
    const CliResult machine = run_cli("verify cert7.tmp --format machine");
    CHECK(machine.exit_code == 0);
    CHECK(machine.output.find("verified = true") != std::string::npos);
    std::remove("cert7.tmp");
}

TEST_CASE("verify rejects tampered and truncated certificates") {
    REQUIRE(run_cli("certify --p 7 --out cert7b.tmp").exit_code == 0);
    const std::string cert = read_file("cert7b.tmp");

    // tamper with the constant: verification fails on the boundary minor
    std::string tampered = cert;
    const std::string key = "sharp_constant = 1/2 + 1/2*sqrt(7)";
    REQUIRE(tampered.find(key) != std::string::npos);
    tampered.replace(tampered.find(key), key.size(), "sharp_constant = 1/2 + 1/3*sqrt(7)");
    write_file("tampered.tmp", tampered);
    const CliResult bad = run_cli("verify tampered.tmp");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("minor_values[p] != 0") != std::string::npos);

    // truncation is a parse error
    write_file("truncated.tmp", cert.substr(0, cert.size() / 2));
    CHECK(run_cli("verify truncated.tmp").exit_code == 2);

    CHECK(run_cli("verify does_not_exist.tmp").exit_code == 2);

    std::remove("cert7b.tmp");
    std::remove("tampered.tmp");
    std::remove("truncated.tmp");
}

TEST_CASE("check evaluates vectors and maps exit codes") {
    const CliResult ones = run_cli("check --vector 1,1");
    CHECK(ones.exit_code == 0);
    CHECK(ones.output.find("1.2071067811865475") != std::string::npos);

    const CliResult near = run_cli(
        "check --vector 1,0.3333333333,0.3333333333,0.3333333333 --format machine");
    CHECK(near.exit_code == 0);
    CHECK(near.output.find("holds = true") != std::string::npos);

    CHECK(run_cli("check --vector 0,0").exit_code == 2);
    CHECK(run_cli("check --vector 1,nope").exit_code == 2);
    CHECK(run_cli("check --vector ''").exit_code == 2);
}

TEST_CASE("minors and eigen subcommands run") {
    const CliResult m = run_cli("minors --p 4 --format machine");
    CHECK(m.exit_code == 0);
    CHECK(m.output.find("minor_4 = 0") != std::string::npos);
    CHECK(m.output.find("polynomial = 0 + 0*C + -3/4*C^2 + -1*C^3 + 1*C^4") !=
          std::string::npos);
    CHECK(m.output.find("positive_definite = false") != std::string::npos);

    const CliResult m2 = run_cli("minors --p 4 --c 2 --format machine");
    CHECK(m2.exit_code == 0);
    CHECK(m2.output.find("positive_definite = true") != std::string::npos);

    // rational and decimal parameters are both exact
    const CliResult m3 = run_cli("minors --p 4 --c 1.5 --format machine");
    CHECK(m3.output.find("c = 3/2") != std::string::npos);

    const CliResult e = run_cli("eigen --p 4 --format machine");
    CHECK(e.exit_code == 0);
    CHECK(e.output.find("exact_1 = 0 x 1") != std::string::npos);
    CHECK(e.output.find("exact_2 = 3/2 x 2") != std::string::npos);
    CHECK(e.output.find("exact_3 = 2 x 1") != std::string::npos);
}

TEST_CASE("search is deterministic byte for byte") {
    const CliResult a = run_cli("search --p 5 --trials 2000 --seed 42 --format machine");
    const CliResult b = run_cli("search --p 5 --trials 2000 --seed 42 --format machine");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("search-v1") == 0);

    const CliResult dumped =
        run_cli("search --p 3 --trials 50 --seed 1 --dump-samples dump.tmp");
    CHECK(dumped.exit_code == 0);
    std::ifstream dump("dump.tmp");
    int lines = 0;
    std::string line;
    while (std::getline(dump, line))
        ++lines;
    CHECK(lines == 50);
    std::remove("dump.tmp");
}

TEST_CASE("oracle subcommand reports the grid maximum") {
    const CliResult r = run_cli("oracle --p 2 --resolution 10000 --format machine");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("grid_max = 1.207106781") != std::string::npos);
}

TEST_CASE("adversarial arguments never crash") {
    for (const std::string args :
         {"", "frobnicate", "certify", "certify --p notanumber", "certify --p",
          "search --p 4 --trials -5", "check", "--p 4", "minors --p 4 --c 'x y'",
          "verify", "oracle --p 4 --resolution 1", "certify --p 99999999999999999999"}) {
        const CliResult r = run_cli(args);
        CHECK(r.exit_code == 2);
    }
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("certify --help").exit_code == 0);
}
