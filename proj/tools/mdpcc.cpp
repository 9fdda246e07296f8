// mdpcc: command line front end for the MDP convolutional code library.
//
// Subcommands:
//   check      verify the MDP property of a code file, optionally more
//   distances  column distance profile as CSV
//   search     find a code with maximal distance profile at given parameters
//   realize    minimal realization of a Markov block file
//   convert    code file -> polynomial generator or parity-check matrix
//   sweep      run the search across a list of field sizes
//
// Exit codes: 0 success (or affirmative verdict), 1 negative verdict,
// 2 input error, 3 budget exhausted, 4 search exhausted without a hit,
// 5 realization failure, 6 conversion precondition failure.

#include "CLI11.hpp"

#include "mdpcc/distance.hpp"
#include "mdpcc/errors.hpp"
#include "mdpcc/field.hpp"
#include "mdpcc/matrix.hpp"
#include "mdpcc/minor_criterion.hpp"
#include "mdpcc/poly.hpp"
#include "mdpcc/realization.hpp"
#include "mdpcc/serialization.hpp"
#include "mdpcc/state_space.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using mdpcc::Json;

constexpr const char* kToolVersion = "0.1.0";

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::uint32_t jobs = 1;
    std::uint64_t budget_encodings = mdpcc::kDefaultEncodingBudget;
    std::uint64_t budget_minors = mdpcc::kDefaultMinorBudget;
    std::string out;
};

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw mdpcc::ParseError("cannot open input file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw mdpcc::Error("cannot write output file: " + path);
    }
    out << text;
}

// Reports go to stdout unless --out redirects them.
void emit(const GlobalOptions& globals, const std::string& text) {
    if (globals.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(globals.out, text);
    }
}

Json load_json_file(const std::string& path) {
    return mdpcc::parse_json_text(read_text_file(path), path);
}

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}

    std::uint64_t elapsed_ms() const {
        auto delta = std::chrono::steady_clock::now() - start_;
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(delta).count());
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

using ArgumentMap = std::map<std::string, std::string>;

mdpcc::RunManifest make_manifest(const std::string& command,
                                 const ArgumentMap& arguments,
                                 std::uint64_t seed,
                                 std::uint64_t elapsed_ms) {
    mdpcc::RunManifest manifest;
    manifest.command = command;
    manifest.arguments = arguments;
    manifest.seed = seed;
    manifest.tool_version = kToolVersion;
    manifest.elapsed_ms = elapsed_ms;
    return manifest;
}

// File artifacts must be byte identical across reruns with the same seed, so
// their embedded manifest omits the wall-clock field. Reports keep it.
Json file_manifest_json(const mdpcc::RunManifest& manifest) {
    Json j = mdpcc::manifest_to_json(manifest);
    j.erase("elapsed_ms");
    return j;
}

int command_check(const GlobalOptions& globals,
                  const std::string& in_path,
                  bool brute,
                  bool strong,
                  bool mds) {
    Stopwatch watch;
    const ArgumentMap args{
        {"file", in_path},
        {"brute", brute ? "true" : "false"},
        {"strong", strong ? "true" : "false"},
        {"mds", mds ? "true" : "false"},
        {"budget-minors", std::to_string(globals.budget_minors)},
        {"budget-encodings", std::to_string(globals.budget_encodings)},
        {"jobs", std::to_string(globals.jobs)},
    };
    mdpcc::StateSpace sys = mdpcc::system_from_json(load_json_file(in_path));
    const mdpcc::CodeParams params = sys.params();
    const mdpcc::CodeIndices indices = mdpcc::code_indices(params);

    auto markov = mdpcc::markov_parameters(sys, indices.L);
    auto toeplitz = mdpcc::toeplitz_matrix(markov);
    auto witness = mdpcc::first_vanishing_minor(toeplitz, params.n, params.k,
                                                indices.L, globals.budget_minors);
    const bool mdp = !witness.has_value();

    Json report;
    report["field"] = mdpcc::field_to_json(sys.field());
    report["params"] = mdpcc::params_to_json(params);
    report["indices"] = {{"L", indices.L}, {"M", indices.M}, {"singleton", indices.singleton}};
    report["mdp"] = mdp;
    if (witness) {
        report["witness"] = {{"rows", witness->rows}, {"cols", witness->cols}};
    } else {
        report["witness"] = nullptr;
    }
    if (brute) {
        report["mdp_bruteforce"] =
            mdpcc::is_mdp_bruteforce(sys, globals.budget_encodings, globals.jobs);
    }
    if (mds) {
        std::uint32_t dfree = mdpcc::free_distance(sys, globals.budget_encodings);
        report["free_distance"] = dfree;
        report["mds"] = (dfree == indices.singleton);
    }
    if (strong) {
        std::uint32_t d_m = mdpcc::column_distance_bruteforce(
            sys, indices.M, globals.budget_encodings, globals.jobs);
        report["d_M"] = d_m;
        report["strongly_mds"] = (d_m == indices.singleton);
    }
    report["manifest"] =
        mdpcc::manifest_to_json(make_manifest("check", args, globals.seed, watch.elapsed_ms()));
    emit(globals, mdpcc::dump_json(report));
    return mdp ? 0 : 1;
}

int command_distances(const GlobalOptions& globals,
                      const std::string& in_path,
                      std::uint32_t max_j) {
    Stopwatch watch;
    const ArgumentMap args{
        {"file", in_path},
        {"max-j", std::to_string(max_j)},
        {"budget-encodings", std::to_string(globals.budget_encodings)},
        {"jobs", std::to_string(globals.jobs)},
    };
    mdpcc::StateSpace sys = mdpcc::system_from_json(load_json_file(in_path));

    std::ostringstream rows;
    for (std::uint32_t j = 0; j <= max_j; ++j) {
        std::uint32_t dj = mdpcc::column_distance_bruteforce(sys, j, globals.budget_encodings,
                                                             globals.jobs);
        std::uint32_t bound = mdpcc::column_bound(j, sys.params());
        rows << j << ',' << dj << ',' << bound << ',' << (dj == bound ? "true" : "false") << '\n';
    }

    mdpcc::RunManifest manifest =
        make_manifest("distances", args, globals.seed, watch.elapsed_ms());
    std::ostringstream csv;
    csv << "# manifest " << mdpcc::manifest_to_json(manifest).dump() << '\n';
    csv << "j,d_j,bound,maximal\n";
    csv << rows.str();
    emit(globals, csv.str());
    return 0;
}

mdpcc::SearchConfig make_search_config(const GlobalOptions& globals,
                                       std::uint64_t attempts,
                                       bool exhaustive) {
    mdpcc::SearchConfig config;
    config.seed = globals.seed;
    config.max_attempts = attempts;
    config.strategy = exhaustive ? mdpcc::SearchStrategy::exhaustive
                                 : mdpcc::SearchStrategy::random;
    config.exhaustive_ceiling = globals.budget_encodings;
    config.minor_budget = globals.budget_minors;
    config.jobs = globals.jobs;
    return config;
}

int command_search(const GlobalOptions& globals,
                   std::uint32_t n,
                   std::uint32_t k,
                   std::uint32_t delta,
                   std::uint64_t q,
                   bool exhaustive,
                   std::uint64_t attempts) {
    Stopwatch watch;
    const ArgumentMap args{
        {"n", std::to_string(n)},
        {"k", std::to_string(k)},
        {"delta", std::to_string(delta)},
        {"q", std::to_string(q)},
        {"exhaustive", exhaustive ? "true" : "false"},
        {"attempts", std::to_string(attempts)},
        {"budget-minors", std::to_string(globals.budget_minors)},
        {"budget-encodings", std::to_string(globals.budget_encodings)},
        {"jobs", std::to_string(globals.jobs)},
    };
    auto [p, m] = mdpcc::factor_prime_power(q);
    mdpcc::Field field = (m == 1) ? mdpcc::Field(p) : mdpcc::Field(p, m);
    mdpcc::CodeParams params(n, k, delta);
    mdpcc::SearchConfig config = make_search_config(globals, attempts, exhaustive);

    Json report;
    report["params"] = mdpcc::params_to_json(params);
    report["field"] = mdpcc::field_to_json(field);
    int exit_code = 0;
    try {
        mdpcc::MdpSearchResult result = mdpcc::build_mdp_code(params, field, config);
        report["found"] = true;
        report["certified_nonexistent"] = false;
        report["attempts"] = result.attempts;
        report["route"] = result.route;
        report["controllable"] = result.controllable;
        report["observable"] = result.observable;
        report["system"] = mdpcc::system_to_json(result.system);
        if (!globals.out.empty()) {
            Json code_file = mdpcc::system_to_json(result.system);
            code_file["manifest"] = file_manifest_json(
                make_manifest("search", args, globals.seed, 0));
            write_text_file(globals.out, mdpcc::dump_json(code_file));
        }
    } catch (const mdpcc::NotFoundError& miss) {
        report["found"] = false;
        report["certified_nonexistent"] = miss.certified;
        report["attempts"] = miss.attempts;
        exit_code = 4;
    }
    report["manifest"] =
        mdpcc::manifest_to_json(make_manifest("search", args, globals.seed, watch.elapsed_ms()));
    std::cout << mdpcc::dump_json(report);
    return exit_code;
}

int command_realize(const GlobalOptions& globals, const std::string& in_path) {
    Stopwatch watch;
    const ArgumentMap args{{"file", in_path}};
    mdpcc::MarkovSequence markov = mdpcc::markov_from_json(load_json_file(in_path));
    if (markov.blocks.empty()) {
        throw mdpcc::ParseError("markov file needs at least one block (F_0 = D)");
    }

    // File blocks are F_0, F_1, ... and the realization consumes the tail.
    mdpcc::FieldMatrix d_block = markov.blocks.front();
    mdpcc::MarkovSequence tail = markov;
    tail.blocks.erase(tail.blocks.begin());
    mdpcc::RealizationResult result = mdpcc::minimal_partial_realization(tail, d_block);

    auto reproduced = mdpcc::markov_parameters(result.system,
                                               static_cast<std::uint32_t>(markov.blocks.size()) - 1);
    bool blocks_match = true;
    for (std::size_t i = 0; i < markov.blocks.size(); ++i) {
        if (!(reproduced.blocks[i] == markov.blocks[i])) {
            blocks_match = false;
        }
    }

    Json report;
    report["degree"] = result.degree;
    report["verified"] = result.verified && blocks_match;
    report["blocks_reproduced"] = markov.blocks.size();
    report["system"] = mdpcc::system_to_json(result.system);
    if (!globals.out.empty()) {
        Json code_file = mdpcc::system_to_json(result.system);
        code_file["manifest"] = file_manifest_json(
            make_manifest("realize", args, globals.seed, 0));
        write_text_file(globals.out, mdpcc::dump_json(code_file));
    }
    report["manifest"] =
        mdpcc::manifest_to_json(make_manifest("realize", args, globals.seed, watch.elapsed_ms()));
    std::cout << mdpcc::dump_json(report);
    return 0;
}

int command_convert(const GlobalOptions& globals,
                    const std::string& in_path,
                    const std::string& target) {
    Stopwatch watch;
    const ArgumentMap args{{"file", in_path}, {"to", target}};
    mdpcc::StateSpace sys = mdpcc::system_from_json(load_json_file(in_path));
    mdpcc::PolyMatrix generator = mdpcc::generator_matrix(sys);

    Json artifact;
    bool verified = false;
    if (target == "generator") {
        artifact = mdpcc::poly_to_json(generator);
        // Columns stay independent at every degree; re-check the stacked rank.
        std::vector<mdpcc::FieldMatrix> stack;
        for (std::uint32_t i = 0; i <= generator.degree(); ++i) {
            stack.push_back(generator.coeff(i));
        }
        mdpcc::FieldMatrix tall = stack.front();
        for (std::size_t i = 1; i < stack.size(); ++i) {
            tall = mdpcc::vstack(tall, stack[i]);
        }
        verified = (mdpcc::rank(tall) == sys.params().k);
    } else {
        mdpcc::PolyMatrix parity = mdpcc::parity_check_matrix(generator);
        artifact = mdpcc::poly_to_json(parity);
        verified = (parity * generator).is_zero();
    }
    artifact["role"] = target;
    artifact["verified"] = verified;
    artifact["manifest"] =
        mdpcc::manifest_to_json(make_manifest("convert", args, globals.seed, watch.elapsed_ms()));
    emit(globals, mdpcc::dump_json(artifact));
    return 0;
}

int command_sweep(const GlobalOptions& globals,
                  std::uint32_t n,
                  std::uint32_t k,
                  std::uint32_t delta,
                  const std::vector<std::uint64_t>& q_list,
                  std::uint64_t attempts) {
    Stopwatch watch;
    std::string joined;
    for (std::size_t i = 0; i < q_list.size(); ++i) {
        if (i) joined += ',';
        joined += std::to_string(q_list[i]);
    }
    const ArgumentMap args{
        {"n", std::to_string(n)},
        {"k", std::to_string(k)},
        {"delta", std::to_string(delta)},
        {"q-list", joined},
        {"attempts", std::to_string(attempts)},
        {"budget-minors", std::to_string(globals.budget_minors)},
        {"budget-encodings", std::to_string(globals.budget_encodings)},
        {"jobs", std::to_string(globals.jobs)},
    };
    mdpcc::CodeParams params(n, k, delta);
    mdpcc::SearchConfig config = make_search_config(globals, attempts, false);
    mdpcc::SweepReport sweep = mdpcc::field_size_sweep(params, q_list, config);

    Json report = mdpcc::sweep_to_json(sweep);
    report["manifest"] =
        mdpcc::manifest_to_json(make_manifest("sweep", args, globals.seed, watch.elapsed_ms()));
    emit(globals, mdpcc::dump_json(report));
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for maximum-distance-profile convolutional codes"};
    app.require_subcommand(1);
    app.fallthrough(true);

    GlobalOptions globals;
    app.add_option("--seed", globals.seed, "base seed for all randomized work");
    app.add_option("--jobs", globals.jobs, "worker threads for brute-force scans")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-encodings", globals.budget_encodings,
                   "max encodings per brute-force distance scan");
    app.add_option("--budget-minors", globals.budget_minors,
                   "max minor evaluations per criterion check");
    app.add_option("--out", globals.out, "write the primary output to this file");

    auto* check = app.add_subcommand("check", "verify the MDP property of a code file");
    std::string check_path;
    bool check_brute = false;
    bool check_strong = false;
    bool check_mds = false;
    check->add_option("file", check_path, "code file (JSON)")->required();
    check->add_flag("--brute", check_brute, "cross-check with brute-force column distances");
    check->add_flag("--strong", check_strong, "also decide the strongly-MDS property");
    check->add_flag("--mds", check_mds, "also decide the MDS property via free distance");

    auto* distances = app.add_subcommand("distances", "column distance profile as CSV");
    std::string distances_path;
    std::uint32_t distances_max_j = 0;
    distances->add_option("file", distances_path, "code file (JSON)")->required();
    distances->add_option("--max-j", distances_max_j, "largest column index j")->required();

    auto* search = app.add_subcommand("search", "find an MDP code at the given parameters");
    std::uint32_t search_n = 0;
    std::uint32_t search_k = 0;
    std::uint32_t search_delta = 0;
    std::uint64_t search_q = 0;
    bool search_exhaustive = false;
    std::uint64_t search_attempts = std::uint64_t{1} << 20;
    search->add_option("--n", search_n, "code length")->required();
    search->add_option("--k", search_k, "code dimension")->required();
    search->add_option("--delta", search_delta, "code degree")->required();
    search->add_option("--q", search_q, "field size (prime power)")->required();
    search->add_flag("--exhaustive", search_exhaustive,
                     "scan every candidate Markov sequence instead of sampling");
    search->add_option("--attempts", search_attempts, "cap on random attempts");

    auto* realize = app.add_subcommand("realize", "minimal realization of a Markov block file");
    std::string realize_path;
    realize->add_option("file", realize_path, "Markov file (JSON, blocks F_0, F_1, ...)")
        ->required();

    auto* convert = app.add_subcommand("convert", "code file to a polynomial matrix");
    std::string convert_path;
    std::string convert_target;
    convert->add_option("file", convert_path, "code file (JSON)")->required();
    convert->add_option("--to", convert_target, "generator or parity")
        ->required()
        ->check(CLI::IsMember({"generator", "parity"}));

    auto* sweep = app.add_subcommand("sweep", "run the search across several field sizes");
    std::uint32_t sweep_n = 0;
    std::uint32_t sweep_k = 0;
    std::uint32_t sweep_delta = 0;
    std::vector<std::string> sweep_q_tokens;
    std::uint64_t sweep_attempts = std::uint64_t{1} << 20;
    sweep->add_option("--n", sweep_n, "code length")->required();
    sweep->add_option("--k", sweep_k, "code dimension")->required();
    sweep->add_option("--delta", sweep_delta, "code degree")->required();
    sweep->add_option("--q-list", sweep_q_tokens, "comma-separated field sizes")
        ->delimiter(',');
    sweep->add_option("--attempts", sweep_attempts, "cap on random attempts per field");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (check->parsed()) {
        return command_check(globals, check_path, check_brute, check_strong, check_mds);
    }
    if (distances->parsed()) {
        return command_distances(globals, distances_path, distances_max_j);
    }
    if (search->parsed()) {
        return command_search(globals, search_n, search_k, search_delta, search_q,
                              search_exhaustive, search_attempts);
    }
    if (realize->parsed()) {
        return command_realize(globals, realize_path);
    }
    if (convert->parsed()) {
        return command_convert(globals, convert_path, convert_target);
    }
    if (sweep->parsed()) {
        std::vector<std::uint64_t> q_list;
        for (const std::string& token : sweep_q_tokens) {
            if (token.empty()) continue;
            std::size_t used = 0;
            unsigned long long value = 0;
            try {
                value = std::stoull(token, &used);
            } catch (const std::exception&) {
                throw mdpcc::ParseError("q-list entry is not a number: " + token);
            }
            if (used != token.size()) {
                throw mdpcc::ParseError("q-list entry is not a number: " + token);
            }
            q_list.push_back(value);
        }
        return command_sweep(globals, sweep_n, sweep_k, sweep_delta, q_list, sweep_attempts);
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const mdpcc::BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const mdpcc::NotFoundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const mdpcc::ExtensionFailedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const mdpcc::NotControllableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 6;
    } catch (const mdpcc::NotObservableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 6;
    } catch (const mdpcc::RankDeficientError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 6;
    } catch (const mdpcc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
