#pragma once

// JSON wire formats for systems, polynomials, Mobius maps, and CLI reports.

#include "conjalg/charspace.hpp"
#include "conjalg/diskmaps.hpp"
#include "conjalg/dynsys.hpp"
#include "conjalg/mobius.hpp"
#include "conjalg/skewpoly.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conjalg::io {

using nlohmann::json;

/// Malformed or schema-violating input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adding 0.0 folds -0.0 into 0.0.
inline json to_json(Complex z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

/// [re, im] or a bare real number.
inline Complex complex_from_json(const json& j, const std::string& what = "complex number") {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError(what + " must be [re, im] or a number");
}

inline json to_json(const FiniteDynSys& sys) {
    return json{{"n", sys.size()}, {"map", std::vector<Point>(sys.map().begin(), sys.map().end())}};
}

inline FiniteDynSys system_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("map"))
        throw ParseError("system must be an object with \"n\" and \"map\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw ParseError("\"n\" must be a positive integer");
    const auto n = j["n"].get<long long>();
    const auto& m = j["map"];
    if (!m.is_array() || static_cast<long long>(m.size()) != n)
        throw ParseError("\"map\" must be an array of length n");
    std::vector<Point> map;
    map.reserve(m.size());
    for (const auto& v : m) {
        if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= n)
            throw ParseError("map entries must be integers in [0, n)");
        map.push_back(static_cast<Point>(v.get<long long>()));
    }
    return FiniteDynSys(std::move(map));
}

inline json to_json(const SkewPoly& p) {
    json coeffs = json::array();
    for (const auto& f : p.coeffs()) {
        json row = json::array();
        for (auto v : f) row.push_back(to_json(v));
        coeffs.push_back(std::move(row));
    }
    return json{{"system", to_json(p.system())}, {"coeffs", std::move(coeffs)}};
}

/// Resolves a string "system" field (a reference) to a system.
using SystemResolver = std::function<FiniteDynSys(const std::string&)>;

inline SkewPoly poly_from_json(const json& j, const SystemResolver& resolve = {}) {
    if (!j.is_object() || !j.contains("system") || !j.contains("coeffs"))
        throw ParseError("polynomial must be an object with \"system\" and \"coeffs\"");
    FiniteDynSys sys = [&] {
        if (j["system"].is_string()) {
            if (!resolve) throw ParseError("system references are not supported here");
            return resolve(j["system"].get<std::string>());
        }
        return system_from_json(j["system"]);
    }();
    if (!j["coeffs"].is_array()) throw ParseError("\"coeffs\" must be an array");
    std::vector<CoefFn> coeffs;
    for (const auto& row : j["coeffs"]) {
        if (!row.is_array() || row.size() != sys.size())
            throw ParseError("each coefficient row must list one value per point");
        CoefFn f;
        for (const auto& v : row) f.push_back(complex_from_json(v, "coefficient"));
        coeffs.push_back(std::move(f));
    }
    return SkewPoly(std::move(sys), std::move(coeffs));
}

inline json to_json(const MobiusMap& m) {
    return json{{"matrix", json::array({to_json(m.a()), to_json(m.b()), to_json(m.c()), to_json(m.d())})}};
}

inline MobiusMap map_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("map must be a JSON object");
    try {
        if (j.contains("matrix")) {
            const auto& m = j["matrix"];
            if (!m.is_array() || m.size() != 4) throw ParseError("\"matrix\" must list a, b, c, d");
            return MobiusMap(complex_from_json(m[0]), complex_from_json(m[1]), complex_from_json(m[2]),
                             complex_from_json(m[3]));
        }
        if (!j.contains("preset") || !j["preset"].is_string())
            throw ParseError("map needs \"matrix\" or \"preset\"");
        const auto preset = j["preset"].get<std::string>();
        if (preset == "rotation") {
            if (!j.contains("c")) throw ParseError("rotation preset needs \"c\"");
            return MobiusMap::rotation(complex_from_json(j["c"]));
        }
        if (preset == "dilation") {
            if (!j.contains("lambda")) throw ParseError("dilation preset needs \"lambda\"");
            return MobiusMap::dilation(complex_from_json(j["lambda"]));
        }
        if (preset == "remark_eta1") return MobiusMap::remark_eta1();
        if (preset == "remark_eta2") return MobiusMap::remark_eta2();
        if (preset == "identity") return MobiusMap::identity();
        throw ParseError("unknown map preset \"" + preset + "\"");
    } catch (const Error& e) {
        throw ParseError(std::string("invalid map: ") + e.what());
    }
}

inline json to_json(const CharacterCatalog& cat) {
    json pts = json::array();
    for (const auto& e : cat.entries) {
        if (e.kind == CatalogKind::Disc)
            pts.push_back(json{{"x", e.x}, {"kind", "disc"}, {"r", e.radius}});
        else
            pts.push_back(json{{"x", e.x}, {"kind", "point"}});
    }
    return json{{"points", std::move(pts)}};
}

inline json to_json(const ConjugacyWitness& w) { return json(w.bijection); }

inline json to_json(const DiskClassification& cls) {
    json fps = json::array();
    for (const auto& fp : cls.fixed_points) {
        json e{{"location", std::string(to_string(fp.location))}, {"multiplier", to_json(fp.multiplier)}};
        e["z"] = fp.location == Location::Infinity ? json(nullptr) : to_json(fp.z);
        fps.push_back(std::move(e));
    }
    json out{{"kind", std::string(to_string(cls.kind))}, {"fixed_points", std::move(fps)},
             {"multiplier", to_json(cls.multiplier)}};
    out["distinguished"] = cls.distinguished ? json(*cls.distinguished) : json(nullptr);
    return out;
}

inline json to_json(const NormalForm& nf) {
    json out{{"kind", std::string(to_string(nf.kind))}};
    switch (nf.kind) {
    case DiskKind::Identity: break;
    case DiskKind::EllipticAutomorphism:
    case DiskKind::EllipticNonAutomorphism:
        out["lambda"] = to_json(nf.lambda);
        out["kappa_modulus"] = nf.kappa_modulus;
        break;
    case DiskKind::Hyperbolic: out["dilation_ratio"] = nf.dilation_ratio; break;
    case DiskKind::Parabolic: out["translation_sign"] = nf.translation_sign; break;
    case DiskKind::NonEllipticNonAutomorphism:
        out["alpha"] = nf.alpha;
        out["beta_arg"] = nf.beta_arg;
        break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Report schemas. Each entry lists required keys and their JSON types.

enum class FieldType { Boolean, Number, Integer, String, Array, Object, ArrayOrNull, ObjectOrNull };

struct FieldSpec {
    const char* name;
    FieldType type;
};

inline bool matches(const json& v, FieldType t) {
    switch (t) {
    case FieldType::Boolean: return v.is_boolean();
    case FieldType::Number: return v.is_number();
    case FieldType::Integer: return v.is_number_integer();
    case FieldType::String: return v.is_string();
    case FieldType::Array: return v.is_array();
    case FieldType::Object: return v.is_object();
    case FieldType::ArrayOrNull: return v.is_array() || v.is_null();
    case FieldType::ObjectOrNull: return v.is_object() || v.is_null();
    }
    return false;
}

inline std::vector<FieldSpec> report_schema(const std::string& command) {
    using F = FieldType;
    if (command == "finite")
        return {{"command", F::String}, {"conjugate", F::Boolean}, {"witness", F::ArrayOrNull},
                {"canonical_a", F::String}, {"canonical_b", F::String}};
    if (command == "canon")
        return {{"command", F::String}, {"canonical", F::String}, {"cycles", F::Array},
                {"trees", F::Array}, {"fixed_points", F::Array}};
    if (command == "char-space") return {{"command", F::String}, {"points", F::Array}};
    if (command == "norms")
        return {{"command", F::String}, {"estimate", F::Number}, {"N", F::Integer},
                {"monotone_check", F::Boolean}, {"l1_norm", F::Number}, {"convention", F::String}};
    if (command == "pencil-check")
        return {{"command", F::String}, {"passed", F::Boolean}, {"cases", F::Integer},
                {"max_deviation", F::Number}, {"lemma_y_equals_eta_x", F::Boolean}};
    if (command == "disk classify")
        return {{"command", F::String}, {"classification", F::Object}, {"normal_form", F::Object}};
    if (command == "disk conjugate")
        return {{"command", F::String}, {"conjugate", F::Boolean}, {"witness", F::ObjectOrNull}};
    if (command == "disk iso")
        return {{"command", F::String}, {"verdict", F::String}, {"witness", F::ObjectOrNull}};
    if (command == "disk verify-witness")
        return {{"command", F::String}, {"gamma", F::String}, {"max_deviation", F::Number},
                {"samples", F::Integer}};
    if (command == "verify-suite")
        return {{"command", F::String}, {"seed", F::Integer}, {"passed", F::Integer},
                {"failed", F::Integer}, {"properties", F::Array}};
    if (command == "error") return {{"error", F::String}, {"message", F::String}};
    return {};
}

/// Problems found when checking a report against its schema; empty when valid.
inline std::vector<std::string> validate_report(const json& report) {
    std::vector<std::string> problems;
    if (!report.is_object()) return {"report is not a JSON object"};
    std::string command = report.contains("error") ? "error" : "";
    if (command.empty()) {
        if (!report.contains("command") || !report["command"].is_string())
            return {"report has no \"command\" string"};
        command = report["command"].get<std::string>();
    }
    const auto schema = report_schema(command);
    if (schema.empty()) return {"unknown report command \"" + command + "\""};
    for (const auto& f : schema) {
        if (!report.contains(f.name))
            problems.push_back(std::string("missing field \"") + f.name + "\"");
        else if (!matches(report[f.name], f.type))
            problems.push_back(std::string("field \"") + f.name + "\" has the wrong type");
    }
    return problems;
}

} // namespace conjalg::io
