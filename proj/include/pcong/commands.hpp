#pragma once

#include "pcong/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace pcong::cli {

using io::Json;

enum ExitStatus : int { kOk = 0, kModuleError = 1, kInputError = 2, kFalsified = 3 };

struct CommandResult {
    int status = kOk;
    std::string output;  // written to --out or stdout
    std::string diagnostic;
};

struct ModsymOptions {
    long level = 0;
    int weight = 2;
    long prime = 0;
    long p_precision = 12;
};

struct CongruenceOptions {
    std::string first, second;  // path[:index]
    long p_precision = 0;       // 0: take the files' precision
    long char_bound = 0;        // 0: reach the first prime of X
};

struct BranchOptions {
    std::string geometry;  // branch_pair or ramified_model document
    std::string family;    // two_variable_family or one_variable_family document
    long p_precision = 0;
    long t_precision = 0;  // 0: the documents' truncation
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline constexpr long kHeckeListBound = 13;

inline Json modsym_document(const ModsymOptions& o) {
    if (o.prime < 2 || !is_prime(o.prime)) throw InputError("--prime must be a prime");
    if (o.p_precision < 1) throw InputError("--p-precision must be positive");
    auto ms = std::make_shared<const ModularSymbols>(GroupType::Gamma0, o.level, o.weight);
    const long bound = ms->sturm();
    Json hecke = Json::object();
    for (long l = 2; l <= kHeckeListBound; ++l)
        if (is_prime(l)) hecke[std::to_string(l)] = io::matrix_json(ms->hecke(l));
    Json symbols = Json::object();
    for (int sign : {1, -1}) {
        auto es = eigen_symbols(ms, sign, o.prime, o.p_precision);
        Json list = Json::array();
        for (std::size_t i = 0; i < es.size(); ++i) list.push_back(io::eigen_symbol_json(es[i], i, bound));
        symbols[sign > 0 ? "plus" : "minus"] = std::move(list);
    }
    return {{"schema_version", io::kSchemaVersion},
            {"command", "modsym"},
            {"parameters", {{"group", "Gamma0"}, {"level", o.level}, {"weight", o.weight}, {"prime", o.prime}, {"p_precision", o.p_precision}}},
            {"space",
             {{"basis_size", ms->space().dimension()},
              {"cuspidal_dimension", ms->cuspidal_dual().rows()},
              {"sturm_bound", bound},
              {"hecke", std::move(hecke)},
              {"involution", io::matrix_json(ms->space().involution_matrix())}}},
            {"eigen_symbols", std::move(symbols)}};
}

// A modsym document rebuilt and checked against its stored eigen-symbol data.
struct LoadedForm {
    SignedEigenSymbols form;
    std::string label;
    long precision = 0;
};

// Rebuilt documents keyed by path, so two forms from one file share their space.
using FormCache = std::map<std::string, std::vector<SignedEigenSymbols>>;

inline LoadedForm load_form(const std::string& selector, long precision_override, FormCache& cache) {
    std::string path = selector;
    std::size_t index = 0;
    if (auto colon = selector.rfind(':'); colon != std::string::npos && colon + 1 < selector.size() &&
                                      selector.find_first_not_of("0123456789", colon + 1) == std::string::npos) {
        path = selector.substr(0, colon);
        index = std::stoul(selector.substr(colon + 1));
    }
    Json doc;
    try {
        doc = Json::parse(read_file(path));
        if (doc.at("schema_version").get<int>() != io::kSchemaVersion) throw InputError(path + ": unsupported schema_version");
        if (doc.at("command").get<std::string>() != "modsym") throw InputError(path + ": not a modsym document");
        const Json& par = doc.at("parameters");
        if (par.at("group").get<std::string>() != "Gamma0") throw InputError(path + ": only Gamma0 documents are supported");
        const long level = par.at("level").get<long>();
        const int weight = par.at("weight").get<int>();
        const long prime = par.at("prime").get<long>();
        const long precision = precision_override > 0 ? precision_override : par.at("p_precision").get<long>();
        const Json& stored = doc.at("eigen_symbols").at("plus");
        if (index >= stored.size()) throw InputError(selector + ": no eigen-symbol with index " + std::to_string(index));
        auto it = cache.find(path);
        if (it == cache.end()) {
            auto ms = std::make_shared<const ModularSymbols>(GroupType::Gamma0, level, weight);
            it = cache.emplace(path, signed_eigen_symbols(ms, prime, precision)).first;
        }
        const auto& forms = it->second;
        if (forms.size() != stored.size()) throw InputError(path + ": eigen-symbol count does not match the rebuilt space");
        const auto& f = forms[index];
        for (const auto& [l, a] : f.plus.exact->eigenvalues)
            if (stored[index].at("eigenvalues").at(std::to_string(l)).at("exact").get<std::string>() != a.str())
                throw InputError(selector + ": stored eigenvalue at " + std::to_string(l) + " does not match the rebuilt space");
        if (precision_override == 0 && stored[index].at("embedding").at("value").get<std::string>() != f.plus.theta.str())
            throw InputError(selector + ": stored embedding does not match the rebuilt space");
        return {f, eigen_label(f.plus, index), precision};
    } catch (const Json::exception& e) {
        throw InputError(path + ": schema error: " + e.what());
    }
}

inline Json congruence_document(const CongruenceOptions& o) {
    FormCache cache;
    LoadedForm a = load_form(o.first, o.p_precision, cache), b = load_form(o.second, o.p_precision, cache);
    if (a.form.plus.p() != b.form.plus.p()) throw InputError("the two documents use different primes");
    const long p = a.form.plus.p();
    const long tame = std::lcm(a.form.plus.level(), b.form.plus.level());
    CharacterSet set{p, 2, tame, 0, o.char_bound > 0 ? o.char_bound : default_x_bound(p, 2, tame)};
    CongruenceReport rep = equivalence_report(a.form, b.form, set, o.first + " (" + a.label + ")", o.second + " (" + b.label + ")");
    return {{"schema_version", io::kSchemaVersion},
            {"command", "congruence"},
            {"parameters", {{"first", o.first}, {"second", o.second}, {"p_precision", std::min(a.precision, b.precision)}, {"char_bound", set.bound}}},
            {"report", io::report_json(rep)}};
}

inline PadicPowerSeries truncate_to(const PadicPowerSeries& f, long t) { return t > 0 && t < f.t_precision() ? f.truncated(t) : f; }

// Sampling at kappa_n = p^n for n = 1..n_last, with n_last * truncation below the p-adic precision.
inline std::optional<long> sampling_depth(long p_precision, long t_precision) {
    long n_last = std::min(8L, p_precision / std::max(1L, t_precision));
    return n_last >= 3 ? std::optional<long>(n_last) : std::nullopt;
}

inline std::pair<Json, bool> branch_pair_verdicts(const BranchPair& pair, const std::vector<TwoVariableFamily>& families) {
    bool falsified = false;
    Json out;
    auto ord = intersection_multiplicity_ord(pair);
    Json inter = {{"ord", ord.value}, {"lower_bound", ord.lower_bound}};
    try {
        auto q = intersection_multiplicity_quotient(pair);
        inter["quotient"] = q.value;
        inter["quotient_truncation"] = q.truncation;
        if (!ord.lower_bound && q.value != ord.value) falsified = true;
        inter["agree"] = !ord.lower_bound && q.value == ord.value;
    } catch (const PrecisionError& e) {
        inter["quotient"] = nullptr;
        inter["quotient_diagnostic"] = e.what();
    }
    out["intersection"] = std::move(inter);

    LIdealData data = lideal_from_families(pair, families);
    auto series_verdict = taylor_agreement_check(pair, data);
    auto verdict_json = [](const TaylorVerdict& v) {
        Json j = {{"describe", v.describe()}, {"witness", v.witness}};
        j["kind"] = v.kind == TaylorVerdict::Kind::Pass ? "pass" : v.kind == TaylorVerdict::Kind::Falsified ? "falsified" : "no_witness";
        j["min_order"] = v.min_order ? Json(*v.min_order) : Json(nullptr);
        return j;
    };
    out["taylor"] = verdict_json(series_verdict);
    if (series_verdict.kind == TaylorVerdict::Kind::Falsified) falsified = true;

    long prec = pair.g1.p_precision(), t = 0;
    for (const auto& e : data.entries) {
        prec = std::min(prec, e.series.p_precision());
        t = std::max(t, e.series.t_precision());
    }
    if (auto n_last = sampling_depth(prec, t)) {
        auto sampled = taylor_agreement_check(pair, lideal_from_samples(data, 1, *n_last));
        out["sampled"] = verdict_json(sampled);
        out["sampled"]["kappa_exponents"] = {1, *n_last};
        if (sampled.kind == TaylorVerdict::Kind::Falsified) falsified = true;
    } else {
        out["sampled"] = {{"kind", "skipped"}, {"describe", "p-adic precision too small for sampling at p^n"}};
    }
    return {out, falsified};
}

inline std::pair<Json, bool> ramified_verdicts(const RamifiedBranchModel& model, const std::vector<LabeledSeries>& family) {
    Json out;
    bool falsified = false;
    if (model.e > 1) {
        try {
            auto pole = ramified_derivative_pole(model);
            out["pole_order"] = pole.pole_order;
            out["pi_shift"] = pole.pi_shift;
        } catch (const InputError& e) {
            out["pole_order"] = nullptr;
            out["pole_diagnostic"] = e.what();
            out["ramification"] = nullptr;
            return {out, false};
        }
    } else {
        out["pole_order"] = 0;
    }
    auto est = ramification_from_lfunction(model, family);
    out["ramification"] = {{"ramified", est.ramified}, {"index", est.index}, {"max_pole", est.max_pole},
                           {"conclusive", est.conclusive}, {"witness", est.witness}, {"diagnostic", est.diagnostic}};
    if (est.conclusive && est.index != model.e) {
        falsified = true;
        out["ramification"]["diagnostic"] = "falsified: index from L-functions is " + std::to_string(est.index) +
                                            " but the model has e = " + std::to_string(model.e);
    }
    return {out, falsified};
}

inline std::pair<Json, bool> branch_document(const BranchOptions& o) {
    auto geometry = io::parse_document(read_file(o.geometry));
    auto family = io::parse_document(read_file(o.family));
    Json out = {{"schema_version", io::kSchemaVersion}, {"command", "branch"}};
    Json params = {{"geometry", o.geometry}, {"family", o.family}, {"p_precision", o.p_precision}, {"t_precision", o.t_precision}};
    const std::string kind = geometry.header.value("kind", std::string());
    params["p_precision"] = io::document_precision(geometry, o.p_precision);
    std::pair<Json, bool> result;
    if (kind == "branch_pair") {
        BranchPair pair = io::read_pair(geometry, o.p_precision);
        pair.g1 = truncate_to(pair.g1, o.t_precision);
        pair.g2 = truncate_to(pair.g2, o.t_precision);
        auto fams = io::read_two_variable_families(family, o.p_precision);
        for (auto& F : fams)
            for (auto& a : F.a) a = truncate_to(a, o.t_precision);
        params["t_precision"] = std::min(pair.g1.t_precision(), pair.g2.t_precision());
        params["p"] = pair.p;
        params["N"] = pair.N;
        result = branch_pair_verdicts(pair, fams);
    } else if (kind == "ramified_model") {
        RamifiedBranchModel model = io::read_model(geometry, o.p_precision);
        model.u = truncate_to(model.u, o.t_precision);
        auto fam = io::read_one_variable_family(family, o.p_precision);
        for (auto& L : fam) L.series = truncate_to(L.series, o.t_precision);
        params["t_precision"] = model.u.t_precision();
        params["p"] = model.u.field()->p();
        params["t"] = model.t;
        params["e"] = model.e;
        result = ramified_verdicts(model, fam);
    } else {
        throw InputError(o.geometry + ": kind must be branch_pair or ramified_model");
    }
    out["parameters"] = std::move(params);
    out["verdicts"] = std::move(result.first);
    out["falsified"] = result.second;
    return {out, result.second};
}

// Runs a command body, mapping module errors onto exit statuses.
template <class Body>
CommandResult run(Body&& body) {
    CommandResult r;
    try {
        body(r);
    } catch (const InputError& e) {
        r = {kInputError, "", std::string("input error: ") + e.what()};
    } catch (const Json::exception& e) {
        r = {kInputError, "", std::string("input error: ") + e.what()};
    } catch (const std::exception& e) {
        r = {kModuleError, "", std::string("error: ") + e.what()};
    }
    return r;
}

inline CommandResult cmd_modsym(const ModsymOptions& o) {
    return run([&](CommandResult& r) { r.output = io::dump(modsym_document(o)); });
}

inline CommandResult cmd_congruence(const CongruenceOptions& o) {
    return run([&](CommandResult& r) {
        Json doc = congruence_document(o);
        r.output = io::dump(doc);
        if (!doc["report"]["consistent"].get<bool>()) {
            r.status = kFalsified;
            r.diagnostic = doc["report"]["verdict"].get<std::string>();
        }
    });
}

inline CommandResult cmd_branch(const BranchOptions& o) {
    return run([&](CommandResult& r) {
        auto [doc, falsified] = branch_document(o);
        r.output = io::dump(doc);
        if (falsified) {
            r.status = kFalsified;
            r.diagnostic = "falsified: the branch data contradicts the crossing or ramification statement";
        }
    });
}

}  // namespace pcong::cli
