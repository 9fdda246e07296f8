// Drives the installed binary end to end through a shell, checking reports,
// artifacts, and exit codes against the library it links.

#include "doctest.h"

#include "mdpcc/serialization.hpp"
#include "mdpcc/state_space.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mdpcc;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("mdpcc_cli_" + std::to_string(static_cast<long>(::getpid())));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string write_fixture(const std::string& name, const std::string& text) {
    fs::path path = work_dir() / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

CliRun run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = work_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    fs::path err = work_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = std::string(MDPCC_CLI_PATH) + " " + args + " >" + out.string() +
                      " 2>" + err.string();
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CliRun result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

StateSpace example_code(std::uint32_t d_entry) {
    Field f3(3);
    FieldMatrix A(f3, 1, 1), B(f3, 1, 1), C(f3, 1, 1), D(f3, 1, 1);
    A.set_code(0, 0, 2);
    B.set_code(0, 0, 1);
    C.set_code(0, 0, 1);
    D.set_code(0, 0, d_entry);
    return StateSpace(CodeParams(2, 1, 1), f3, A, B, C, D);
}

const std::string& example_path() {
    static const std::string path =
        write_fixture("example.json", dump_json(system_to_json(example_code(1))));
    return path;
}

Json parse_report(const std::string& text) { return parse_json_text(text, "report"); }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("check affirms the MDP example and reports the singleton index") {
    CliRun run = run_cli("check " + example_path());
    CHECK(run.code == 0);
    Json report = parse_report(run.out);
    CHECK(report.at("mdp") == true);
    CHECK(report.at("witness").is_null());
    CHECK(report.at("indices").at("L") == 2);
    CHECK(report.at("indices").at("singleton") == 4);
    CHECK(report.at("manifest").at("command") == "check");
    CHECK(report.at("manifest").at("arguments").at("brute") == "false");
}

TEST_CASE("check rejects the zero-feedthrough variant with a witness minor") {
    std::string path = write_fixture("zero_d.json", dump_json(system_to_json(example_code(0))));
    CliRun run = run_cli("check " + path);
    CHECK(run.code == 1);
    Json report = parse_report(run.out);
    CHECK(report.at("mdp") == false);
    CHECK(report.at("witness").at("rows") == Json::array({1}));
    CHECK(report.at("witness").at("cols") == Json::array({1}));
}

TEST_CASE("check cross-checks distances and the stronger properties on demand") {
    CliRun run = run_cli("check " + example_path() + " --brute --mds --strong");
    CHECK(run.code == 0);
    Json report = parse_report(run.out);
    CHECK(report.at("mdp_bruteforce") == true);
    CHECK(report.at("free_distance") == 4);
    CHECK(report.at("mds") == true);
    CHECK(report.at("d_M") == 4);
    CHECK(report.at("strongly_mds") == true);
}

TEST_CASE("distances emits the profile as CSV under a manifest comment") {
    CliRun run = run_cli("distances " + example_path() + " --max-j 3");
    CHECK(run.code == 0);
    std::vector<std::string> lines = lines_of(run.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0].rfind("# manifest {", 0) == 0);
    CHECK(lines[1] == "j,d_j,bound,maximal");
    CHECK(lines[2] == "0,2,2,true");
    CHECK(lines[3] == "1,3,3,true");
    CHECK(lines[4] == "2,4,4,true");
    CHECK(lines[5] == "3,4,5,false");
}

TEST_CASE("the distance scan is independent of the worker count") {
    CliRun one = run_cli("distances " + example_path() + " --max-j 2 --jobs 1");
    CliRun three = run_cli("distances " + example_path() + " --max-j 2 --jobs 3");
    REQUIRE(one.code == 0);
    REQUIRE(three.code == 0);
    std::vector<std::string> a = lines_of(one.out);
    std::vector<std::string> b = lines_of(three.out);
    REQUIRE(a.size() == b.size());
    // manifests differ in the jobs argument; the data must not
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("an exhaustive search returns the first MDP code over GF(3)") {
    std::string artifact = (work_dir() / "found.json").string();
    CliRun run = run_cli("search --n 2 --k 1 --delta 1 --q 3 --exhaustive --out " + artifact);
    CHECK(run.code == 0);
    Json report = parse_report(run.out);
    CHECK(report.at("found") == true);
    CHECK(report.at("attempts") == 15);
    CHECK(report.at("route") == "constructive");
    CHECK(report.at("controllable") == true);
    CHECK(report.at("observable") == true);

    // the written code file passes verification on its own
    Json file = parse_json_text(slurp(artifact), "artifact");
    CHECK_FALSE(file.at("manifest").contains("elapsed_ms"));
    CliRun back = run_cli("check " + artifact);
    CHECK(back.code == 0);
}

TEST_CASE("an exhausted exhaustive search certifies nonexistence") {
    CliRun run = run_cli("search --n 2 --k 1 --delta 1 --q 2 --exhaustive");
    CHECK(run.code == 4);
    Json report = parse_report(run.out);
    CHECK(report.at("found") == false);
    CHECK(report.at("certified_nonexistent") == true);
    CHECK(report.at("attempts") == 8);
}

TEST_CASE("identical seeds produce byte-identical artifacts and reports") {
    std::string a = (work_dir() / "det_a.json").string();
    std::string b = (work_dir() / "det_b.json").string();
    CliRun first = run_cli("search --n 2 --k 1 --delta 1 --q 5 --seed 7 --out " + a);
    CliRun second = run_cli("search --n 2 --k 1 --delta 1 --q 5 --seed 7 --out " + b);
    REQUIRE(first.code == 0);
    REQUIRE(second.code == 0);
    CHECK(slurp(a) == slurp(b));

    Json ra = parse_report(first.out);
    Json rb = parse_report(second.out);
    ra["manifest"].erase("elapsed_ms");
    rb["manifest"].erase("elapsed_ms");
    CHECK(ra == rb);
}

TEST_CASE("realize reconstructs the degree-1 system from three Markov blocks") {
    std::string path = write_fixture(
        "markov.json",
        R"({"field": {"p": 3}, "n_minus_k": 1, "k": 1, "blocks": [[[1]], [[1]], [[2]]]})");
    CliRun run = run_cli("realize " + path);
    CHECK(run.code == 0);
    Json report = parse_report(run.out);
    CHECK(report.at("degree") == 1);
    CHECK(report.at("verified") == true);
    CHECK(report.at("blocks_reproduced") == 3);
    CHECK(report.at("system").at("A") == Json::array({Json::array({2})}));
    CHECK(report.at("system").at("D") == Json::array({Json::array({1})}));
}

TEST_CASE("convert emits the pinned parity-check matrix of the example") {
    CliRun run = run_cli("convert " + example_path() + " --to parity");
    CHECK(run.code == 0);
    Json artifact = parse_report(run.out);
    CHECK(artifact.at("role") == "parity");
    CHECK(artifact.at("verified") == true);
    CHECK(artifact.at("rows") == 1);
    CHECK(artifact.at("cols") == 2);
    // H = [1 + z, 1 + 2z]
    CHECK(artifact.at("coeffs") == Json::array({Json::array({Json::array({1, 1})}),
                                                Json::array({Json::array({1, 2})})}));
}

TEST_CASE("convert refuses a non-minimal realization") {
    std::string path =
        write_fixture("padded.json", dump_json(system_to_json(pad_realization(example_code(1), 1))));
    CliRun run = run_cli("convert " + path + " --to generator");
    CHECK(run.code == 6);
    CHECK(run.err.find("controllable") != std::string::npos);
}

TEST_CASE("sweep finds the smallest workable field size") {
    CliRun run = run_cli("sweep --n 2 --k 1 --delta 1 --q-list 2,3,4 --budget-encodings 100000");
    CHECK(run.code == 0);
    Json report = parse_report(run.out);
    REQUIRE(report.at("entries").size() == 3);
    CHECK(report.at("entries")[0].at("outcome") == "not_found");
    CHECK(report.at("entries")[0].at("certified") == true);
    CHECK(report.at("entries")[1].at("outcome") == "found");
    CHECK(report.at("smallest_q") == 3);
}

TEST_CASE("a starved encoding budget aborts with the required count") {
    CliRun run = run_cli("distances " + example_path() + " --max-j 2 --budget-encodings 10");
    CHECK(run.code == 3);
    CHECK(run.err.find("27") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").code == 2);                       // no subcommand
    CHECK(run_cli("frobnicate").code == 2);             // unknown subcommand
    CHECK(run_cli("distances " + example_path()).code == 2); // missing --max-j
    CHECK(run_cli("convert " + example_path() + " --to hessian").code == 2);
    CHECK(run_cli("search --n 2 --k 1 --delta 1 --q 6").code == 2); // 6 is not a prime power
    CHECK(run_cli("check " + example_path() + " --jobs 0").code == 2);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("malformed input files are reported with their path") {
    std::string path = write_fixture("truncated.json", "{\"field\": {");
    CliRun run = run_cli("check " + path);
    CHECK(run.code == 2);
    CHECK(run.err.find("truncated.json") != std::string::npos);
}

TEST_CASE("--out redirects the check report to a file") {
    std::string path = (work_dir() / "report.json").string();
    CliRun run = run_cli("check " + example_path() + " --out " + path);
    CHECK(run.code == 0);
    CHECK(run.out.empty());
    Json report = parse_json_text(slurp(path), "report");
    CHECK(report.at("mdp") == true);
}
