#pragma once

#include "pcong/special_values.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace pcong {

// Congruence exponent in units of pi_K; `saturated` when the difference vanished at working precision.
struct Exponent {
    long value = 0;
    bool saturated = false;

    std::string str() const { return saturated ? ">=" + std::to_string(value) : std::to_string(value); }
    friend bool operator==(const Exponent&, const Exponent&) = default;
};

// Lifts an element of Q_p into a larger field with the same residual data.
inline LocalElement lift_to_field(const LocalElement& x, const FieldPtr& field) {
    if (x.field() == field || *x.field() == *field) return x;
    if (x.e() != 1) throw InputError("cannot compare values in " + x.field()->describe() + " and " + field->describe());
    return LocalElement::from_int(field, x.coeffs()[0], x.precision() * field->e());
}

inline FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    if (*a == *b) return a;
    if (a->e() == 1) return b;
    if (b->e() == 1) return a;
    throw InputError("no common coefficient field for " + a->describe() + " and " + b->describe());
}

// Converts a pi_L-adic valuation into pi_K units for K inside L with ramification indices e_K | e_L.
inline Exponent to_exponent(long v_L, long cap_L, long e_L, long e_K) {
    long cap = cap_L * e_K / e_L;
    if (v_L >= cap_L) return {cap, true};
    long r = v_L * e_K / e_L;
    return {std::min(r, cap), false};
}

// max over units u of min_j v(a_j - u b_j), in pi_L units, capped at `cap`.
// With j0 minimizing v(b_j): when v(a_j0) = v(b_j0) the optimum is at u = a_j0 / b_j0,
// otherwise no unit improves on min(v(a), v(b)).
inline long aligned_valuation(const std::vector<LocalElement>& a, const std::vector<LocalElement>& b, long cap) {
    if (a.size() != b.size()) throw std::logic_error("aligned_valuation: size mismatch");
    std::size_t j0 = 0;
    long vb = kInfiniteValuation, va = kInfiniteValuation;
    for (std::size_t j = 0; j < b.size(); ++j) {
        long v = b[j].valuation();
        if (v < vb) {
            vb = v;
            j0 = j;
        }
        va = std::min(va, a[j].valuation());
    }
    if (vb == kInfiniteValuation) return std::min(va, cap);
    if (a[j0].valuation() != vb) return std::min({va, vb, cap});
    LocalElement u = divide_exact(a[j0], b[j0]);
    long r = cap;
    for (std::size_t j = 0; j < a.size(); ++j) r = std::min(r, (a[j] - u * b[j]).valuation());
    return r;
}

// min_j v(a_j - b_j) without alignment, capped.
inline long difference_valuation(const std::vector<LocalElement>& a, const std::vector<LocalElement>& b, long cap) {
    long r = cap;
    for (std::size_t j = 0; j < a.size(); ++j) r = std::min(r, (a[j] - b[j]).valuation());
    return r;
}

// Ramification index of the field generated by the Hecke eigenvalues of f and g.
inline long pair_ramification(const EigenSymbol& f, const EigenSymbol& g) {
    FieldPtr L = common_field(f.field(), g.field());
    std::vector<LocalElement> gens;
    for (const auto* s : {&f, &g})
        for (const auto& [l, a] : s->exact->eigenvalues) gens.push_back(lift_to_field(s->eigenvalue(l), L));
    return ramification_of(gens);
}

inline Exponent qexp_congruence_exponent(const EigenSymbol& f, const EigenSymbol& g, long bound) {
    if (f.weight() != g.weight()) throw InputError("q-expansion comparison needs equal weights");
    FieldPtr L = common_field(f.field(), g.field());
    const long cap = std::min(lift_to_field(f.theta, L).precision(), lift_to_field(g.theta, L).precision());
    // Grow the horizon geometrically; the exponent only decreases, so stop once it reaches 0.
    long v = cap;
    for (long horizon = std::min(bound, 16L);; horizon = std::min(bound, 4 * horizon)) {
        auto af = f.qexpansion(horizon);
        auto ag = g.qexpansion(horizon);
        for (long n = 1; n <= horizon && v > 0; ++n)
            v = std::min(v, (lift_to_field(af[n - 1], L) - lift_to_field(ag[n - 1], L)).valuation());
        if (v == 0 || horizon == bound) break;
    }
    return to_exponent(v, cap, L->e(), pair_ramification(f, g));
}

// The characters tested for L-value congruences: conductors in X up to B, and all primitive
// characters of conductor dividing N p^2 (the trivial character included).
struct CharacterSet {
    long p = 0, r = 2, tame_level = 1, lower = 0, bound = 0;
    bool include_small_conductors = true;
    std::vector<long> x_primes() const { return conductor_set_X(p, r, tame_level, lower, bound); }
    std::vector<long> small_conductors() const {
        if (!include_small_conductors) return {1};
        return divisors(tame_level * p * p);
    }
    std::string describe() const {
        std::string out = "X(p=" + std::to_string(p) + ",r=" + std::to_string(r) + ",N=" + std::to_string(tame_level) +
                          ",B=" + std::to_string(bound) + ")=[";
        auto xs = x_primes();
        for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
        out += "]";
        out += include_small_conductors ? " plus conductors dividing N*p^2" : " plus the trivial character";
        return out;
    }
};

// A default bound B reaching the first `count` primes of X.
inline long default_x_bound(long p, long r, long tame_level, std::size_t count = 1) {
    long B = 1000;
    while (conductor_set_X(p, r, tame_level, 0, B).size() < count) B *= 2;
    return B;
}

// The same symbol with values read in a larger field.
inline PadicSymbol lift_symbol(const PadicSymbol& alpha, const FieldPtr& field) {
    if (*alpha.field == *field) return alpha;
    PadicSymbol out{alpha.space, field, alpha.precision * field->e() / alpha.field->e(), {}};
    for (const auto& x : alpha.manin_values) out.manin_values.push_back(lift_to_field(x, field));
    return out;
}

// Smallest field containing the values of alpha and of every character in the set.
inline FieldPtr profile_field(const FieldPtr& base, const CharacterSet& set) {
    long level = 0;
    for (long D : set.small_conductors()) level = std::max(level, ord_p(Int(D), set.p) - 1);
    if (level == 0 || (base->kind() == LocalField::Kind::Cyclotomic && base->cyclotomic_level() >= level)) return base;
    return LocalField::cyclotomic(set.p, static_cast<int>(level));
}

// All tested special values of alpha, flattened to scalars in L: the L-values of the small-conductor
// characters coefficientwise, and for each q in X the centered twist vectors.
inline std::vector<LocalElement> special_value_profile(const PadicSymbol& symbol, const CharacterSet& set) {
    const PadicSymbol alpha = lift_symbol(symbol, profile_field(symbol.field, set));
    std::vector<LocalElement> out;
    const int n = alpha.weight() - 2;
    std::map<long, ValueRing> rings;
    for (long D : set.small_conductors()) {
        auto chars = primitive_characters(D);
        for (int m = 0; m <= n; ++m) {
            auto w = path_values(alpha, D, m);
            for (const auto& chi : chars) {
                auto it = rings.find(chi.order());
                if (it == rings.end()) it = rings.emplace(chi.order(), ValueRing(alpha.field, chi.order(), alpha.precision)).first;
                EtaleElement v = twisted_sum(w, chi, it->second);
                out.insert(out.end(), v.coeffs().begin(), v.coeffs().end());
            }
        }
    }
    for (long q : set.x_primes())
        for (int m = 0; m <= n; ++m)
            for (auto& w : centered_twist_vector(alpha, q, m)) out.push_back(std::move(w));
    return out;
}

inline std::vector<LocalElement> lift_all(std::vector<LocalElement> xs, const FieldPtr& L) {
    for (auto& x : xs) x = lift_to_field(x, L);
    return xs;
}

// Signed L-value exponent of a pair of same-sign eigen-symbols, aligned by the best unit.
inline Exponent lvalue_congruence_exponent(const EigenSymbol& f, const EigenSymbol& g, const CharacterSet& set) {
    FieldPtr L = profile_field(common_field(f.field(), g.field()), set);
    auto A = lift_all(special_value_profile(f.symbol, set), L);
    auto B = lift_all(special_value_profile(g.symbol, set), L);
    long cap = std::min(f.precision() * L->e() / f.field()->e(), g.precision() * L->e() / g.field()->e());
    return to_exponent(aligned_valuation(A, B, cap), cap, L->e(), pair_ramification(f, g));
}

// Coordinate exponent of two eigen-symbols on the same space, aligned by the best unit.
inline Exponent coordinate_congruence_exponent(const EigenSymbol& f, const EigenSymbol& g) {
    if (f.symbol.space != g.symbol.space) throw InputError("coordinate comparison needs a common space");
    FieldPtr L = common_field(f.field(), g.field());
    auto A = lift_all(f.symbol.manin_values, L);
    auto B = lift_all(g.symbol.manin_values, L);
    long cap = std::min(f.precision() * L->e() / f.field()->e(), g.precision() * L->e() / g.field()->e());
    return to_exponent(aligned_valuation(A, B, cap), cap, L->e(), pair_ramification(f, g));
}

// Unaligned exponents for arbitrary symbols, in pi_L units.
inline Exponent symbol_congruence_exponent(const PadicSymbol& a, const PadicSymbol& b) {
    long cap = std::min(a.precision, b.precision);
    long v = difference_valuation(a.manin_values, b.manin_values, cap);
    return {v, v >= cap};
}

inline Exponent special_value_congruence_exponent(const PadicSymbol& a, const PadicSymbol& b, const CharacterSet& set) {
    FieldPtr L = profile_field(a.field, set);
    long cap = std::min(a.precision, b.precision) * L->e() / a.field->e();
    long v = difference_valuation(special_value_profile(a, set), special_value_profile(b, set), cap);
    return to_exponent(v, cap, L->e(), a.field->e());
}

// Both signs of one eigenform.
struct SignedEigenSymbols {
    EigenSymbol plus;
    EigenSymbol minus;
};

// Matches the +/- eigen-symbols of a space by their embedded eigenvalues.
inline std::vector<SignedEigenSymbols> signed_eigen_symbols(std::shared_ptr<const ModularSymbols> ms, long p, long digits,
                                                            FieldPtr field = nullptr, const EigenformFilter& keep = nullptr) {
    auto plus = eigen_symbols(ms, +1, p, digits, field, keep);
    auto minus = eigen_symbols(ms, -1, p, digits, field, keep);
    std::vector<SignedEigenSymbols> out;
    std::vector<bool> used(minus.size(), false);
    for (auto& f : plus) {
        bool matched = false;
        for (std::size_t j = 0; j < minus.size() && !matched; ++j) {
            if (used[j] || !(*f.field() == *minus[j].field())) continue;
            bool same = true;
            for (const auto& [l, a] : f.exact->eigenvalues)
                if (!congruent(f.eigenvalue(l), minus[j].eigenvalue(l))) same = false;
            if (same) {
                used[j] = matched = true;
                out.push_back({f, minus[j]});
            }
        }
        if (!matched) throw NonSemisimpleError("no minus eigen-symbol matches a plus eigen-symbol");
    }
    return out;
}

struct CongruenceReport {
    std::string first, second;
    long p = 0;
    long ramification = 1;
    long bound = 0;
    Exponent r_q, r_L, r_L_plus, r_L_minus;
    std::optional<Exponent> r_coordinates;
    std::string character_set;
    bool consistent = false;
    std::string verdict;
};

inline std::string eigen_label(const EigenSymbol& f, std::size_t index) {
    return "level=" + std::to_string(f.level()) + ",weight=" + std::to_string(f.weight()) + ",index=" + std::to_string(index);
}

inline CongruenceReport equivalence_report(const SignedEigenSymbols& f, const SignedEigenSymbols& g, const CharacterSet& set,
                                           std::string first = "f", std::string second = "g") {
    CongruenceReport rep;
    rep.first = std::move(first);
    rep.second = std::move(second);
    rep.p = f.plus.p();
    rep.ramification = pair_ramification(f.plus, g.plus);
    rep.bound = sturm_bound(std::lcm(f.plus.level(), g.plus.level()), f.plus.weight());
    rep.r_q = qexp_congruence_exponent(f.plus, g.plus, rep.bound);
    rep.r_L_plus = lvalue_congruence_exponent(f.plus, g.plus, set);
    rep.r_L_minus = lvalue_congruence_exponent(f.minus, g.minus, set);
    rep.r_L = rep.r_L_plus.value <= rep.r_L_minus.value ? rep.r_L_plus : rep.r_L_minus;
    if (f.plus.symbol.space == g.plus.symbol.space) {
        Exponent cp = coordinate_congruence_exponent(f.plus, g.plus);
        Exponent cm = coordinate_congruence_exponent(f.minus, g.minus);
        rep.r_coordinates = cp.value <= cm.value ? cp : cm;
    }
    rep.character_set = set.describe();
    auto agree = [](const Exponent& a, const Exponent& b) {
        if (a.saturated && b.saturated) return true;
        if (a.saturated) return b.value >= a.value;
        if (b.saturated) return a.value >= b.value;
        return a.value == b.value;
    };
    rep.consistent = agree(rep.r_q, rep.r_L) && (!rep.r_coordinates || agree(*rep.r_coordinates, rep.r_L));
    rep.verdict = rep.consistent ? "consistent" : "falsified: q-expansion and special-value exponents differ";
    return rep;
}

}  // namespace pcong
