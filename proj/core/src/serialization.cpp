#include "mdpcc/serialization.hpp"

#include <utility>

#include "mdpcc/errors.hpp"

namespace mdpcc {

namespace {

const Json& require_field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

std::uint64_t require_uint(const Json& j, const char* key, const std::string& where) {
    const Json& v = require_field(j, key, where);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0))
        throw ParseError(where + ": field '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::uint32_t entry_from_json(const Json& e, const Field& f, const std::string& where) {
    if (f.extension_degree() == 1) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
            throw ParseError(where + ": prime field entries are non-negative integers");
        const auto code = e.get<std::uint64_t>();
        if (code >= f.order())
            throw ParseError(where + ": entry " + std::to_string(code) + " is out of range for " +
                             f.describe());
        return static_cast<std::uint32_t>(code);
    }
    if (!e.is_array() || e.size() != f.extension_degree())
        throw ParseError(where + ": extension field entries are coefficient lists of length " +
                         std::to_string(f.extension_degree()));
    std::vector<std::uint32_t> coeffs;
    coeffs.reserve(e.size());
    for (const Json& c : e) {
        if (!c.is_number_integer() || c.get<std::int64_t>() < 0 ||
            c.get<std::uint64_t>() >= f.characteristic())
            throw ParseError(where + ": coefficient out of range for characteristic " +
                             std::to_string(f.characteristic()));
        coeffs.push_back(c.get<std::uint32_t>());
    }
    return f.element_from_coeffs(coeffs);
}

Json entry_to_json(std::uint32_t code, const Field& f) {
    if (f.extension_degree() == 1) return code;
    return Json(f.coeffs(code));
}

} // namespace

Json field_to_json(const Field& f) {
    Json j;
    j["p"] = f.characteristic();
    if (f.extension_degree() > 1) {
        j["m"] = f.extension_degree();
        j["modulus"] = f.modulus();
    }
    return j;
}

Field field_from_json(const Json& j) {
    const std::string where = "field";
    const auto p = static_cast<std::uint32_t>(require_uint(j, "p", where));
    std::uint32_t m = 1;
    if (j.is_object() && j.contains("m")) m = static_cast<std::uint32_t>(require_uint(j, "m", where));
    if (j.is_object() && j.contains("modulus")) {
        const Json& mod = j["modulus"];
        if (!mod.is_array()) throw ParseError(where + ": field 'modulus' must be an array");
        std::vector<std::uint32_t> coeffs;
        for (const Json& c : mod) {
            if (!c.is_number_integer() || c.get<std::int64_t>() < 0)
                throw ParseError(where + ": modulus coefficients are non-negative integers");
            coeffs.push_back(c.get<std::uint32_t>());
        }
        return Field(p, m, std::move(coeffs));
    }
    return m == 1 ? Field(p) : Field(p, m);
}

Json matrix_to_json(const FieldMatrix& M) {
    Json rows = Json::array();
    for (std::uint32_t r = 0; r < M.rows(); ++r) {
        Json row = Json::array();
        for (std::uint32_t c = 0; c < M.cols(); ++c) row.push_back(entry_to_json(M.code_at(r, c), M.field()));
        rows.push_back(std::move(row));
    }
    return rows;
}

FieldMatrix matrix_from_json(const Json& j, const Field& f, std::uint32_t rows,
                             std::uint32_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
    FieldMatrix M(f, rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(where + ": row " + std::to_string(r) + " must have " +
                             std::to_string(cols) + " entries");
        for (std::uint32_t c = 0; c < cols; ++c)
            M.set_code(r, c, entry_from_json(row[c], f, where));
    }
    return M;
}

Json system_to_json(const StateSpace& sys) {
    Json j;
    j["field"] = field_to_json(sys.field());
    j["n"] = sys.params().n;
    j["k"] = sys.params().k;
    j["delta"] = sys.params().delta;
    j["A"] = matrix_to_json(sys.A());
    j["B"] = matrix_to_json(sys.B());
    j["C"] = matrix_to_json(sys.C());
    j["D"] = matrix_to_json(sys.D());
    return j;
}

StateSpace system_from_json(const Json& j) {
    const std::string where = "system";
    Field f = field_from_json(require_field(j, "field", where));
    const auto n = static_cast<std::uint32_t>(require_uint(j, "n", where));
    const auto k = static_cast<std::uint32_t>(require_uint(j, "k", where));
    const auto delta = static_cast<std::uint32_t>(require_uint(j, "delta", where));
    CodeParams prm(n, k, delta);
    FieldMatrix A = matrix_from_json(require_field(j, "A", where), f, delta, delta, where + ".A");
    FieldMatrix B = matrix_from_json(require_field(j, "B", where), f, delta, k, where + ".B");
    FieldMatrix C = matrix_from_json(require_field(j, "C", where), f, n - k, delta, where + ".C");
    FieldMatrix D = matrix_from_json(require_field(j, "D", where), f, n - k, k, where + ".D");
    return StateSpace(prm, std::move(f), std::move(A), std::move(B), std::move(C), std::move(D));
}

Json markov_to_json(const MarkovSequence& ms) {
    Json j;
    j["field"] = field_to_json(ms.field);
    j["n_minus_k"] = ms.n_minus_k;
    j["k"] = ms.k;
    Json blocks = Json::array();
    for (const FieldMatrix& b : ms.blocks) blocks.push_back(matrix_to_json(b));
    j["blocks"] = std::move(blocks);
    return j;
}

MarkovSequence markov_from_json(const Json& j) {
    const std::string where = "markov";
    Field f = field_from_json(require_field(j, "field", where));
    const auto p = static_cast<std::uint32_t>(require_uint(j, "n_minus_k", where));
    const auto k = static_cast<std::uint32_t>(require_uint(j, "k", where));
    const Json& bs = require_field(j, "blocks", where);
    if (!bs.is_array()) throw ParseError(where + ": field 'blocks' must be an array");
    std::vector<FieldMatrix> blocks;
    blocks.reserve(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i)
        blocks.push_back(matrix_from_json(bs[i], f, p, k, where + ".blocks[" + std::to_string(i) + "]"));
    return MarkovSequence(std::move(f), p, k, std::move(blocks));
}

Json poly_to_json(const PolyMatrix& P) {
    Json j;
    j["field"] = field_to_json(P.field());
    j["rows"] = P.rows();
    j["cols"] = P.cols();
    Json cs = Json::array();
    for (const FieldMatrix& c : P.coeffs()) cs.push_back(matrix_to_json(c));
    j["coeffs"] = std::move(cs);
    return j;
}

PolyMatrix poly_from_json(const Json& j) {
    const std::string where = "poly";
    Field f = field_from_json(require_field(j, "field", where));
    const auto rows = static_cast<std::uint32_t>(require_uint(j, "rows", where));
    const auto cols = static_cast<std::uint32_t>(require_uint(j, "cols", where));
    const Json& cs = require_field(j, "coeffs", where);
    if (!cs.is_array() || cs.empty())
        throw ParseError(where + ": field 'coeffs' must be a nonempty array");
    std::vector<FieldMatrix> coeffs;
    coeffs.reserve(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
        coeffs.push_back(matrix_from_json(cs[i], f, rows, cols, where + ".coeffs[" + std::to_string(i) + "]"));
    return PolyMatrix(std::move(coeffs));
}

Json params_to_json(const CodeParams& p) {
    Json j;
    j["n"] = p.n;
    j["k"] = p.k;
    j["delta"] = p.delta;
    return j;
}

Json manifest_to_json(const RunManifest& m) {
    Json j;
    j["command"] = m.command;
    j["arguments"] = m.arguments;
    j["seed"] = m.seed;
    j["tool_version"] = m.tool_version;
    j["elapsed_ms"] = m.elapsed_ms;
    return j;
}

Json search_to_json(const MdpSearchResult& r) {
    Json j;
    j["attempts"] = r.attempts;
    j["route"] = r.route;
    j["controllable"] = r.controllable;
    j["observable"] = r.observable;
    j["system"] = system_to_json(r.system);
    return j;
}

Json sweep_to_json(const SweepReport& r) {
    Json j;
    j["params"] = params_to_json(r.params);
    Json entries = Json::array();
    for (const SweepEntry& e : r.entries) {
        Json je;
        je["q"] = e.q;
        je["outcome"] = e.outcome;
        je["certified"] = e.certified;
        je["attempts"] = e.attempts;
        if (e.system) je["system"] = system_to_json(*e.system);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    if (r.smallest_q)
        j["smallest_q"] = *r.smallest_q;
    else
        j["smallest_q"] = nullptr;
    return j;
}

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace mdpcc
