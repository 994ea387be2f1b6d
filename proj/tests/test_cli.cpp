#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cbpenta/problems.hpp"
#include "cbpenta/system_io.hpp"

using namespace cbpenta;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("cbpenta_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    const fs::path out = scratch_dir() / "cli_output.txt";
    const std::string cmd = std::string(CBPENTA_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());

    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::ostringstream text;
    text << in.rdbuf();
    result.output = text.str();
    return result;
}

fs::path write_worked_example_file() {
    const fs::path path = scratch_dir() / "worked_example.cbp";
    const Problem p = worked_example();
    write_system_file(path, p.mat, p.f);
    return path;
}

/// Strips the two timing columns off every data row of a bench table.
std::string drop_timing_columns(const std::string& table) {
    std::istringstream in(table);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t tabs = 0;
        std::size_t cut = std::string::npos;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '\t' && ++tabs == 5) {
                cut = i;
                break;
            }
        }
        out << line.substr(0, cut) << '\n';
    }
    return out.str();
}

double parse_metric(const std::string& output, const std::string& key) {
    const std::size_t pos = output.find(key + "=");
    REQUIRE(pos != std::string::npos);
    return std::stod(output.substr(pos + key.size() + 1));
}

}  // namespace

TEST_CASE("solve produces a solution file of ones") {
    const fs::path sys_file = write_worked_example_file();
    const fs::path sol_file = scratch_dir() / "solution.cbp";

    const CliResult r = run_cli("solve " + sys_file.string() + " " + sol_file.string());
    CHECK(r.exit_code == 0);
    CHECK(parse_metric(r.output, "res") <= 1e-12);

    const BlockVector x = read_solution_file(sol_file);
    REQUIRE(x.n() == 5);
    for (double v : x.flat()) CHECK(std::abs(v - 1.0) <= 1e-12);
}

TEST_CASE("solve reports err with --exact ones") {
    const fs::path sys_file = write_worked_example_file();
    const fs::path sol_file = scratch_dir() / "solution_exact.cbp";

    const CliResult r =
        run_cli("solve " + sys_file.string() + " " + sol_file.string() + " --exact ones");
    CHECK(r.exit_code == 0);
    CHECK(parse_metric(r.output, "err") <= 1e-12);
}

TEST_CASE("solve --in-place matches the default path") {
    const fs::path sys_file = write_worked_example_file();
    const fs::path a = scratch_dir() / "sol_a.cbp";
    const fs::path b = scratch_dir() / "sol_b.cbp";

    CHECK(run_cli("solve " + sys_file.string() + " " + a.string()).exit_code == 0);
    CHECK(run_cli("solve " + sys_file.string() + " " + b.string() + " --in-place").exit_code == 0);
    const BlockVector xa = read_solution_file(a);
    const BlockVector xb = read_solution_file(b);
    for (std::size_t i = 0; i < xa.flat().size(); ++i)
        CHECK(std::abs(xa.flat()[i] - xb.flat()[i]) <= 1e-12);
}

TEST_CASE("solve rejects n = 4 files with exit 2") {
    const fs::path bad = scratch_dir() / "bad_n4.cbp";
    std::ofstream(bad) << "cbpenta 1\n1 4\n";
    const CliResult r = run_cli("solve " + bad.string() + " " + (scratch_dir() / "x.cbp").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("n must be >= 5") != std::string::npos);
}

TEST_CASE("solve exits 3 on a singular parameter choice") {
    const fs::path sys_file = write_worked_example_file();
    const CliResult r = run_cli("solve " + sys_file.string() + " " +
                                (scratch_dir() / "y.cbp").string() +
                                " --alpha 1 --beta -3 --gamma 1 --delta 1");
    CHECK(r.exit_code == 3);
}

TEST_CASE("solve exits 4 when the input file is missing") {
    const CliResult r =
        run_cli("solve /nonexistent/input.cbp " + (scratch_dir() / "z.cbp").string());
    CHECK(r.exit_code == 4);
}

TEST_CASE("solve exits 4 when the output path is unwritable") {
    const fs::path sys_file = write_worked_example_file();
    const CliResult r = run_cli("solve " + sys_file.string() + " /nonexistent/dir/out.cbp");
    CHECK(r.exit_code == 4);
}

TEST_CASE("bench bvp matches the reference magnitudes") {
    const CliResult r = run_cli("bench bvp --sizes 20,40,80");
    CHECK(r.exit_code == 0);

    std::istringstream in(r.output);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n\tm\terr\tres\tavg_err\tfactor_s\tsolve_s");

    const double expect[3] = {6.806e-5, 4.299e-6, 2.693e-7};
    for (int row = 0; row < 3; ++row) {
        int n = 0, m = 0;
        double err = 0, res = 0, avg = 0, tf = 0, ts = 0;
        in >> n >> m >> err >> res >> avg >> tf >> ts;
        CHECK(m == 2);
        CHECK(avg >= expect[row] / 2);
        CHECK(avg <= expect[row] * 2);
    }
}

TEST_CASE("bench circulant stays at machine accuracy for small n") {
    const CliResult r = run_cli("bench circulant --m 7 --sizes 500,1000");
    CHECK(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string header;
    std::getline(in, header);
    for (int row = 0; row < 2; ++row) {
        int n = 0, m = 0;
        double err = 0;
        in >> n >> m >> err;
        std::string rest;
        std::getline(in, rest);
        CHECK(m == 7);
        CHECK(err <= 1e-9);
    }
}

TEST_CASE("bench random is deterministic apart from timings") {
    const CliResult a = run_cli("bench random --m 2 --sizes 1000 --seed 1");
    const CliResult b = run_cli("bench random --m 2 --sizes 1000 --seed 1");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(drop_timing_columns(a.output) == drop_timing_columns(b.output));
    CHECK(drop_timing_columns(a.output) != drop_timing_columns(
        run_cli("bench random --m 2 --sizes 1000 --seed 2").output));
}

TEST_CASE("bench rejects unknown families and empty sizes") {
    CHECK(run_cli("bench cubic --sizes 10").exit_code == 2);
    CHECK(run_cli("bench random").exit_code == 2);
}

TEST_CASE("verify passes on a small grid") {
    const CliResult r = run_cli("verify --m 1,2 --n 5,8 --trials 3 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("max=") != std::string::npos);
}

TEST_CASE("verify self-test exercises the singular exit") {
    const CliResult r = run_cli("verify --inject-singular");
    CHECK(r.exit_code == 3);
}

TEST_CASE("missing subcommand is a usage error") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}
