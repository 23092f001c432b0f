#pragma once

#include "pcong/characters.hpp"
#include "pcong/modsym/padic_symbol.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace pcong {

// Lambda(chi) = sum_{m mod D} conj(chi)(m) ({m/D} - {infinity}), stored as (m, k) with conj(chi)(m) = zeta_order^k.
struct TwistDivisor {
    DirichletCharacter chi;
    std::vector<std::pair<long, long>> terms;

    CyclotomicElement coefficient_sum() const {
        CyclotomicElement acc(chi.order());
        for (auto [m, k] : terms) acc = acc + CyclotomicElement::root_power(chi.order(), k);
        return acc;
    }
};

inline TwistDivisor lambda_divisor(const DirichletCharacter& chi) {
    if (!chi.is_primitive()) throw InputError("lambda_divisor: character is not primitive");
    TwistDivisor out{chi, {}};
    const long D = chi.modulus();
    const long o = chi.order();
    for (long m = 0; m < D; ++m)
        if (auto k = chi.value_exponent(m)) out.terms.push_back({m, mod_floor(-*k, o)});
    return out;
}

// w(a) = alpha(X^m Y^(n-m) (x) {infinity, a/D}) for a in [0, D) prime to D, zero elsewhere.
inline std::vector<LocalElement> path_values(const PadicSymbol& alpha, long D, int m) {
    const int n = alpha.weight() - 2;
    if (m < 0 || m > n) throw InputError("twist degree must lie in [0, k-2]");
    std::vector<LocalElement> w(D, LocalElement(alpha.field, alpha.precision));
    for (long a = 0; a < D; ++a)
        if (std::gcd(a, D) == 1) w[a] = alpha.value_from_infinity(m, a, D);
    return w;
}

// sum_a conj(chi)(a) w(a) for a table from path_values at the modulus of chi.
inline EtaleElement twisted_sum(const std::vector<LocalElement>& w, const DirichletCharacter& chi, const ValueRing& ring) {
    if (ring.order() % chi.order()) throw std::logic_error("twisted_sum: value ring too small for the character");
    const long scale = ring.order() / chi.order();
    const FieldPtr& field = ring.field();
    std::vector<LocalElement> sums(ring.order(), LocalElement(field, ring.precision()));
    auto table = chi.value_exponent_table();
    for (long a = 0; a < static_cast<long>(table.size()); ++a)
        if (table[a] >= 0) sums[mod_floor(-table[a], chi.order()) * scale] += w[a];
    return ring.from_root_sums(sums);
}

// L(alpha, chi, m): alpha evaluated on X^m Y^(n-m) (x) Lambda(chi).
inline EtaleElement special_value(const PadicSymbol& alpha, const DirichletCharacter& chi, int m, const ValueRing& ring) {
    if (!chi.is_primitive()) throw InputError("special_value: character is not primitive");
    return twisted_sum(path_values(alpha, chi.modulus(), m), chi, ring);
}

inline EtaleElement special_value(const PadicSymbol& alpha, const DirichletCharacter& chi, int m) {
    return special_value(alpha, chi, m, ValueRing(alpha.field, chi.order(), alpha.precision));
}

// w(a) - mean(w) over a in (Z/q)^x, w(a) = alpha(X^m Y^(n-m) (x) {infinity, a/q}).
// For q prime with q != 1 mod p, the minimum valuation of this vector equals the minimum valuation
// of L(alpha, chi, m) over nontrivial chi mod q, and congruences between two such vectors match
// congruences of all those L-values.
inline std::vector<LocalElement> centered_twist_vector(const PadicSymbol& alpha, long q, int m) {
    if (!is_prime(q) || mod_floor(q, alpha.p()) == 1) throw InputError("centered_twist_vector: need a prime q != 1 mod p");
    std::vector<LocalElement> w;
    LocalElement total(alpha.field, alpha.precision);
    for (long a = 1; a < q; ++a) {
        w.push_back(alpha.value_from_infinity(m, a, q));
        total += w.back();
    }
    LocalElement mean = total * LocalElement::from_rat(alpha.field, Rat(1, q - 1), alpha.precision);
    for (auto& x : w) x = x - mean;
    return w;
}

struct DeterminationVerdict {
    enum class Kind { ZeroSymbol, Found, NotFound };
    Kind kind = Kind::NotFound;
    long conductor = 0;
    std::vector<long> exponents;
    int twist_degree = 0;
    long valuation = kInfiniteValuation;  // of the witnessing value
    long symbol_valuation = kInfiniteValuation;
    long characters_tested = 0;

    std::string describe() const {
        switch (kind) {
        case Kind::ZeroSymbol: return "zero symbol";
        case Kind::NotFound: return "no witness below the bound (" + std::to_string(characters_tested) + " characters tested)";
        case Kind::Found: break;
        }
        return "witness of conductor " + std::to_string(conductor) + " at twist degree " + std::to_string(twist_degree) +
               " with valuation " + std::to_string(valuation);
    }
};

// Searches the trivial character, then characters of conductor in X up to B, for a special value
// whose valuation equals that of alpha itself (a value nonzero modulo pi after removing the content).
inline DeterminationVerdict determination_check(const PadicSymbol& alpha, long r, long tame_level, long bound) {
    DeterminationVerdict out;
    out.symbol_valuation = alpha.valuation();
    if (out.symbol_valuation == kInfiniteValuation) {
        out.kind = DeterminationVerdict::Kind::ZeroSymbol;
        return out;
    }
    const int n = alpha.weight() - 2;
    auto accept = [&](const EtaleElement& value, const DirichletCharacter& chi, int m) {
        ++out.characters_tested;
        long v = value.valuation();
        if (v != out.symbol_valuation) return false;
        out.kind = DeterminationVerdict::Kind::Found;
        out.conductor = chi.modulus();
        out.exponents = chi.exponents();
        out.twist_degree = m;
        out.valuation = v;
        return true;
    };
    auto trivial = DirichletCharacter::trivial(1);
    for (int m = 0; m <= n; ++m)
        if (accept(special_value(alpha, trivial, m), trivial, m)) return out;
    for (long q : conductor_set_X(alpha.p(), r, tame_level, 0, bound))
        for (const auto& chi : enumerate_characters(q)) {
            if (chi.is_trivial()) continue;
            for (int m = 0; m <= n; ++m)
                if (accept(special_value(alpha, chi, m), chi, m)) return out;
        }
    return out;
}

// CSV rows: chi_modulus,chi_index,m,value,valuation.
inline void write_special_value_csv(std::ostream& os, const PadicSymbol& alpha, const std::vector<DirichletCharacter>& chars) {
    os << "chi_modulus,chi_index,m,value,valuation\n";
    for (const auto& chi : chars)
        for (int m = 0; m <= alpha.weight() - 2; ++m) {
            EtaleElement v = special_value(alpha, chi, m);
            long val = v.valuation();
            os << chi.modulus() << ',' << chi.index() << ',' << m << ',' << v.str() << ','
               << (val == kInfiniteValuation ? std::string("inf") : std::to_string(val)) << '\n';
        }
}

}  // namespace pcong
