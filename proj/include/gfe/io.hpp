#pragma once

// JSON records: flat solution objects, catalog files and the
// {command, inputs, outputs, status} output record.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gfe/arith.hpp"
#include "gfe/bounds.hpp"
#include "gfe/errors.hpp"
#include "gfe/search.hpp"
#include "gfe/verify.hpp"

namespace gfe::io {

using Json = nlohmann::ordered_json;

enum class RecordStatus { ok, error, contradiction };

inline std::string_view to_string(RecordStatus s) {
    switch (s) {
        case RecordStatus::ok: return "ok";
        case RecordStatus::error: return "error";
        case RecordStatus::contradiction: return "contradiction";
    }
    return "error";
}

inline RecordStatus parse_status(std::string_view s) {
    if (s == "ok") return RecordStatus::ok;
    if (s == "error") return RecordStatus::error;
    if (s == "contradiction") return RecordStatus::contradiction;
    throw ParseError("unknown record status '" + std::string(s) + "'");
}

/// One output line. inputs and outputs are flat objects of scalars; big
/// integers are decimal strings.
struct OutputRecord {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    RecordStatus status = RecordStatus::ok;

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

inline Json to_json(const OutputRecord& rec) {
    Json j;
    j["command"] = rec.command;
    j["inputs"] = rec.inputs;
    j["outputs"] = rec.outputs;
    j["status"] = to_string(rec.status);
    return j;
}

namespace detail {

inline void require_flat(const Json& obj, const char* field) {
    if (!obj.is_object()) throw ParseError(std::string("record field '") + field + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (value.is_structured()) {
            throw ParseError(std::string("record field '") + field + "." + key + "' must be a scalar");
        }
    }
}

inline BigInt integer_field(const Json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_string()) return parse_bigint(v.get<std::string>());
    if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return BigInt(v.get<std::int64_t>());
    throw ParseError(std::string("field '") + key + "' must be a nonnegative integer or decimal string");
}

inline Exponent exponent_field(const Json& j, const char* key) {
    const BigInt v = integer_field(j, key);
    if (v > std::numeric_limits<Exponent>::max()) throw ParseError(std::string("exponent '") + key + "' too large");
    return v.convert_to<Exponent>();
}

}  // namespace detail

inline OutputRecord record_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("record must be an object");
    for (const char* key : {"command", "inputs", "outputs", "status"}) {
        if (!j.contains(key)) throw ParseError(std::string("record is missing '") + key + "'");
    }
    if (j.size() != 4) throw ParseError("record has unexpected fields");
    if (!j.at("command").is_string() || !j.at("status").is_string()) {
        throw ParseError("record command and status must be strings");
    }
    detail::require_flat(j.at("inputs"), "inputs");
    detail::require_flat(j.at("outputs"), "outputs");
    return {j.at("command").get<std::string>(), j.at("inputs"), j.at("outputs"),
            parse_status(j.at("status").get<std::string>())};
}

/// Single-line JSON text of a record.
inline std::string dump(const OutputRecord& rec) { return to_json(rec).dump(); }

inline Json solution_to_json(const Solution& s) {
    Json j;
    j["x"] = s.x.str();
    j["p"] = std::to_string(s.p);
    j["y"] = s.y.str();
    j["q"] = std::to_string(s.q);
    j["z"] = s.z.str();
    j["r"] = std::to_string(s.r);
    return j;
}

/// Accepts decimal strings or JSON integers for every field.
inline Solution solution_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("solution must be an object");
    return {detail::integer_field(j, "x"), detail::exponent_field(j, "p"), detail::integer_field(j, "y"),
            detail::exponent_field(j, "q"), detail::integer_field(j, "z"), detail::exponent_field(j, "r")};
}

inline Json catalog_to_json(std::span<const Solution> sols) {
    Json arr = Json::array();
    for (const auto& s : sols) arr.push_back(solution_to_json(s));
    return arr;
}

/// Parses a catalog array; every entry must verify exactly.
inline std::vector<Solution> parse_catalog(const Json& j) {
    if (!j.is_array()) throw ParseError("catalog must be a JSON array");
    std::vector<Solution> out;
    for (const auto& e : j) out.push_back(solution_from_json(e));
    verify_catalog(out);
    return out;
}

inline std::vector<Solution> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("catalog file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_catalog(j);
}

/// Newline-delimited records.
inline std::vector<OutputRecord> parse_records(std::istream& in) {
    std::vector<OutputRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            out.push_back(record_from_json(Json::parse(line)));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid record line: ") + e.what());
        }
    }
    return out;
}

inline Json exponent_outputs(const ExponentTriple& t) {
    Json j;
    j["chi_num"] = t.chi_num().str();
    j["chi_den"] = t.chi_den().str();
    j["chi"] = t.chi_value();
    j["class"] = to_string(t.signature_class);
    return j;
}

inline Json bound_outputs(const BoundReport& b) {
    Json j;
    j["log_zr"] = b.log_zr;
    j["loglog_zr"] = b.loglog_zr;
    j["phi_zr"] = b.phi_zr;
    j["G"] = b.G.str();
    j["loglog_G"] = b.loglog_G;
    j["lower_bound_L"] = b.lower_bound_L;
    j["wong_ok"] = b.wong_ok;
    j["wong_margin_log"] = b.wong_margin_log;
    if (b.chi_check) {
        j["chi"] = b.chi_check->chi;
        j["chi_exact"] = b.chi_check->exponents.chi_num().str() + "/" + b.chi_check->exponents.chi_den().str();
        j["theorem_satisfied"] = b.chi_check->theorem_satisfied;
        j["margin"] = b.chi_check->margin;
    }
    return j;
}

inline Json chain_outputs(const ChainReport& c) {
    Json j;
    j["G"] = c.radical.radical.str();
    j["chi_exact"] = c.exponents.chi_num().str() + "/" + c.exponents.chi_den().str();
    j["class"] = to_string(c.exponents.signature_class);
    j["x_bound"] = to_string(c.step_x.verdict);
    j["x_margin_log"] = c.step_x.margin;
    j["y_bound"] = to_string(c.step_y.verdict);
    j["y_margin_log"] = c.step_y.margin;
    j["radical_chain"] = to_string(c.step_G.verdict);
    j["radical_margin_log"] = c.step_G.radical_margin_log;
    j["product_margin_log"] = c.step_G.product_margin_log;
    j["wong"] = to_string(c.step_wong.verdict);
    j["wong_margin_log"] = c.step_wong.margin;
    j["final"] = to_string(c.step_final.verdict);
    j["lower_bound_L"] = c.bound.lower_bound_L;
    j["final_margin"] = c.step_final.margin;
    return j;
}

inline Json sweep_outputs(const SweepSummary& s) {
    Json j;
    j["solutions"] = s.solutions;
    for (std::size_t i = 0; i < kChainSteps; ++i) {
        const std::string name(kStepNames[i]);
        j[name + "_pass"] = s.steps[i].pass;
        j[name + "_fail"] = s.steps[i].fail;
        j[name + "_inconclusive"] = s.steps[i].inconclusive;
    }
    j["contradictions"] = s.contradictions.size();
    return j;
}

inline Json table1_outputs(const Table1Row& row) {
    Json j;
    j["z"] = row.z.str();
    j["r"] = std::to_string(row.r);
    j["phi_computed"] = row.phi_computed;
    j["phi_paper"] = row.phi_paper;
    j["pass"] = row.pass;
    return j;
}

inline OutputRecord sweep_record(const SweepSummary& s) {
    return {"verify", Json::object(), sweep_outputs(s),
            s.contradictions.empty() ? RecordStatus::ok : RecordStatus::contradiction};
}

}  // namespace gfe::io
