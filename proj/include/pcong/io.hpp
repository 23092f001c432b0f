#pragma once

#include "pcong/branch.hpp"
#include "pcong/congruence.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pcong::io {

// nlohmann::json keeps object keys in a std::map, so dumps are in sorted key order.
using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Json valuation_json(long v) { return v == kInfiniteValuation ? Json("inf") : Json(v); }

inline Json local_json(const LocalElement& x) {
    return {{"value", x.str()}, {"valuation", valuation_json(x.valuation())}, {"precision", x.precision()}};
}

inline Json field_json(const FieldPtr& K) {
    return {{"p", K->p()}, {"e", K->e()}, {"cyclotomic_level", K->cyclotomic_level()}, {"description", K->describe()}};
}

inline FieldPtr field_from_json(const Json& j) {
    return LocalField::cyclotomic(j.at("p").get<long>(), j.value("cyclotomic_level", 0));
}

inline Json character_json(const DirichletCharacter& chi) { return {{"modulus", chi.modulus()}, {"exponents", chi.exponents()}}; }

inline DirichletCharacter character_from_json(const Json& j) {
    return DirichletCharacter(UnitGroup::get(j.at("modulus").get<long>()), j.at("exponents").get<std::vector<long>>());
}

inline Json matrix_json(const QMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json exponent_json(const Exponent& e) { return {{"value", e.value}, {"saturated", e.saturated}, {"text", e.str()}}; }

inline Json eigen_symbol_json(const EigenSymbol& f, std::size_t index, long qexp_bound) {
    Json eig = Json::object();
    for (const auto& [l, a] : f.exact->eigenvalues) eig[std::to_string(l)] = {{"exact", a.str()}, {"embedded", local_json(f.eigenvalue(l))}};
    Json q = Json::array();
    for (const auto& a : f.qexpansion(qexp_bound)) q.push_back(a.str());
    Json values = Json::array();
    for (const auto& x : f.symbol.manin_values) values.push_back(x.str());
    return {{"index", index},
            {"sign", f.sign()},
            {"hecke_field", f.exact->field->modulus.str("x")},
            {"hecke_field_degree", f.exact->degree()},
            {"generating_prime", f.exact->generating_prime},
            {"coefficient_field", field_json(f.field())},
            {"precision", f.precision()},
            {"embedding", local_json(f.theta)},
            {"normalizing_symbol", f.normalizing_symbol},
            {"eigenvalues", std::move(eig)},
            {"qexpansion", std::move(q)},
            {"manin_values", std::move(values)}};
}

inline Json report_json(const CongruenceReport& r) {
    Json out = {{"first", r.first},
                {"second", r.second},
                {"p", r.p},
                {"ramification", r.ramification},
                {"sturm_bound", r.bound},
                {"r_q", exponent_json(r.r_q)},
                {"r_L", exponent_json(r.r_L)},
                {"r_L_plus", exponent_json(r.r_L_plus)},
                {"r_L_minus", exponent_json(r.r_L_minus)},
                {"character_set", r.character_set},
                {"consistent", r.consistent},
                {"verdict", r.verdict}};
    out["r_coordinates"] = r.r_coordinates ? exponent_json(*r.r_coordinates) : Json(nullptr);
    return out;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Power-series documents: a one-line JSON header followed by named sections in the series text format,
// each introduced by a line `--- name`.
struct SeriesDocument {
    Json header;
    std::vector<std::pair<std::string, std::string>> sections;

    const std::string& section(const std::string& name) const {
        for (const auto& [n, text] : sections)
            if (n == name) return text;
        throw InputError("series document has no section '" + name + "'");
    }
};

inline SeriesDocument parse_document(const std::string& text) {
    SeriesDocument doc;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw InputError("empty series document");
    try {
        doc.header = Json::parse(line);
    } catch (const Json::exception& e) {
        throw InputError(std::string("series document header is not JSON: ") + e.what());
    }
    if (!doc.header.is_object()) throw InputError("series document header must be a JSON object");
    if (doc.header.value("schema_version", -1) != kSchemaVersion) throw InputError("unsupported schema_version in series document");
    while (std::getline(is, line)) {
        if (line.rfind("--- ", 0) == 0) doc.sections.emplace_back(line.substr(4), std::string());
        else if (line.empty()) continue;
        else if (doc.sections.empty()) throw InputError("series line before the first section: " + line);
        else doc.sections.back().second += line + "\n";
    }
    return doc;
}

inline std::string write_document(const SeriesDocument& doc) {
    std::string out = doc.header.dump() + "\n";
    for (const auto& [name, text] : doc.sections) out += "--- " + name + "\n" + text;
    return out;
}

inline void require_kind(const SeriesDocument& doc, const std::string& kind) {
    if (doc.header.value("kind", std::string()) != kind)
        throw InputError("expected a series document of kind '" + kind + "'");
}

inline FieldPtr document_field(const SeriesDocument& doc) {
    long p = doc.header.at("p").get<long>();
    if (p < 2 || !is_prime(p)) throw InputError("header p must be prime");
    return LocalField::cyclotomic(p, doc.header.value("cyclotomic_level", 0));
}

inline long document_precision(const SeriesDocument& doc, long override_precision) {
    if (override_precision > 0) return override_precision;
    return doc.header.value("p_precision", 20L);
}

inline PadicPowerSeries document_series(const SeriesDocument& doc, const std::string& name, long precision) {
    return PadicPowerSeries::parse(doc.section(name), document_field(doc), precision);
}

inline SeriesDocument pair_document(const BranchPair& pair) {
    SeriesDocument doc;
    const FieldPtr& K = pair.g1.field();
    doc.header = {{"schema_version", kSchemaVersion}, {"kind", "branch_pair"}, {"p", pair.p},
                  {"N", pair.N}, {"cyclotomic_level", K->cyclotomic_level()},
                  {"p_precision", std::min(pair.g1.p_precision(), pair.g2.p_precision())}};
    doc.sections = {{"g1", pair.g1.str()}, {"g2", pair.g2.str()}};
    return doc;
}

inline BranchPair read_pair(const SeriesDocument& doc, long precision = 0) {
    require_kind(doc, "branch_pair");
    const long prec = document_precision(doc, precision);
    return {doc.header.at("p").get<long>(), doc.header.value("N", 0L), document_series(doc, "g1", prec), document_series(doc, "g2", prec)};
}

inline SeriesDocument model_document(const RamifiedBranchModel& m, long N) {
    SeriesDocument doc;
    const FieldPtr& K = m.u.field();
    doc.header = {{"schema_version", kSchemaVersion}, {"kind", "ramified_model"}, {"p", K->p()},
                  {"N", N}, {"t", m.t}, {"e", m.e}, {"cyclotomic_level", K->cyclotomic_level()},
                  {"p_precision", m.u.p_precision()}};
    doc.sections = {{"u", m.u.str()}};
    return doc;
}

inline RamifiedBranchModel read_model(const SeriesDocument& doc, long precision = 0) {
    require_kind(doc, "ramified_model");
    const long prec = document_precision(doc, precision);
    return {doc.header.value("t", 0L), doc.header.at("e").get<long>(), document_series(doc, "u", prec)};
}

// Section names `label j` hold a_j(Y) of F_label(T, Y) = sum_j a_j(Y) T^j.
inline std::vector<TwoVariableFamily> read_two_variable_families(const SeriesDocument& doc, long precision = 0) {
    require_kind(doc, "two_variable_family");
    const long prec = document_precision(doc, precision);
    std::vector<TwoVariableFamily> out;
    for (const auto& [name, text] : doc.sections) {
        auto space = name.rfind(' ');
        if (space == std::string::npos) throw InputError("two-variable section needs the form 'label j': " + name);
        std::string label = name.substr(0, space);
        long j = 0;
        try {
            j = std::stol(name.substr(space + 1));
        } catch (const std::exception&) {
            throw InputError("bad coefficient index in section " + name);
        }
        if (out.empty() || out.back().label != label) out.push_back({label, {}});
        if (j != static_cast<long>(out.back().a.size())) throw InputError("coefficient sections must be listed as 0, 1, ... for " + label);
        out.back().a.push_back(PadicPowerSeries::parse(text, document_field(doc), prec));
    }
    return out;
}

inline std::vector<LabeledSeries> read_one_variable_family(const SeriesDocument& doc, long precision = 0) {
    require_kind(doc, "one_variable_family");
    const long prec = document_precision(doc, precision);
    std::vector<LabeledSeries> out;
    for (const auto& [name, text] : doc.sections) out.push_back({name, PadicPowerSeries::parse(text, document_field(doc), prec)});
    return out;
}

}  // namespace pcong::io
