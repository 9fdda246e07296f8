#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdpcc/poly.hpp"
#include "mdpcc/realization.hpp"
#include "mdpcc/state_space.hpp"

namespace mdpcc {

using Json = nlohmann::json;

/// JSON shapes (all matrices are arrays of row arrays; an entry is a bare
/// integer code for prime fields and a low-to-high coefficient list of length
/// m for extension fields):
///   field:   {"p": 3} | {"p": 2, "m": 3, "modulus": [1, 1, 0, 1]}
///   system:  {"field", "n", "k", "delta", "A", "B", "C", "D"}
///   markov:  {"field", "n_minus_k", "k", "blocks"}
///   poly:    {"field", "rows", "cols", "coeffs"}  (ascending degree)
/// Readers throw ParseError naming the offending field; value validation is
/// delegated to the respective constructors.

Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

Json matrix_to_json(const FieldMatrix& M);
FieldMatrix matrix_from_json(const Json& j, const Field& f, std::uint32_t rows,
                             std::uint32_t cols, const std::string& where);

Json system_to_json(const StateSpace& sys);
StateSpace system_from_json(const Json& j);

Json markov_to_json(const MarkovSequence& ms);
MarkovSequence markov_from_json(const Json& j);

Json poly_to_json(const PolyMatrix& P);
PolyMatrix poly_from_json(const Json& j);

Json params_to_json(const CodeParams& p);

/// Provenance block embedded in every tool output. Arguments are a normalized
/// option-name -> value map (defaults resolved, flags as "true", output paths
/// excluded), so equal manifests mean byte-identical outputs except for
/// elapsed_ms.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> arguments;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::uint64_t elapsed_ms = 0;
};

Json manifest_to_json(const RunManifest& m);

Json search_to_json(const MdpSearchResult& r);
Json sweep_to_json(const SweepReport& r);

/// Parses text as JSON; ParseError("<what>: ...") on malformed input.
Json parse_json_text(const std::string& text, const std::string& what);

/// 2-space indented dump with a trailing newline (deterministic key order).
std::string dump_json(const Json& j);

} // namespace mdpcc
