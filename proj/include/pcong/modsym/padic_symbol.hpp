#pragma once

#include "pcong/modsym/eigen.hpp"
#include "pcong/padic/cyclotomic.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace pcong {

// A modular symbol with values in O_L, stored by its values on every Manin symbol.
struct PadicSymbol {
    std::shared_ptr<const ManinSpace> space;
    FieldPtr field;
    long precision = 0;  // pi-adic
    std::vector<LocalElement> manin_values;

    LocalElement value(const SymbolCombination& comb) const {
        LocalElement acc(field, precision);
        for (const auto& [sym, c] : comb)
            if (c != 0) acc += c * manin_values[sym];
        return acc;
    }
    // X^i Y^(n-i) (x) {infinity, a/b}.
    LocalElement value_from_infinity(int i, long a, long b) const {
        LocalElement acc(field, precision);
        space->for_each_path_term(i, a, b, [&](std::size_t sym, const Int& c) {
            if (c == 1) acc += manin_values[sym];
            else if (c == -1) acc -= manin_values[sym];
            else acc += c * manin_values[sym];
        });
        return acc;
    }
    long valuation() const {
        long v = kInfiniteValuation;
        for (const auto& x : manin_values) v = std::min(v, x.valuation());
        return v;
    }
    long p() const { return field->p(); }
    int weight() const { return space->weight(); }
    long level() const { return space->level(); }
};

// Primitive integral rescaling of a rational functional, embedded into O_L.
inline PadicSymbol padic_symbol_from_rational(std::shared_ptr<const ManinSpace> space, const std::vector<Rat>& phi,
                                              const FieldPtr& field, long precision) {
    std::vector<Rat> values(space->num_symbols(), Rat(0));
    Int den = 1, content = 0;
    for (std::size_t sym = 0; sym < values.size(); ++sym) {
        for (const auto& [b, r] : space->reduce(sym)) values[sym] += r * phi[b];
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), values[sym].get_den_mpz_t());
    }
    for (auto& v : values) {
        v *= Rat(den);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_num_mpz_t());
    }
    PadicSymbol out{space, field, precision, {}};
    for (auto& v : values) {
        Int n(v.get_num());
        if (content != 0) n /= content;
        out.manin_values.push_back(LocalElement::from_int(field, n, precision));
    }
    return out;
}

// y = Y / p^shift with Y integral in O_L, for y in K = Q[x]/h and x -> theta.
struct EmbeddedNF {
    LocalElement scaled;
    long shift = 0;
    long valuation() const {
        long v = scaled.valuation();
        return v == kInfiniteValuation ? v : v - scaled.e() * shift;
    }
};

inline EmbeddedNF embed_nf(const NFElem& y, const LocalElement& theta) {
    const auto& field = theta.field();
    const long prec = theta.precision();
    Int den = 1;
    for (const auto& q : y.poly().coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    long s = ord_p(den, field->p());
    Int unit_den = den / ipow(field->p(), s);
    LocalElement acc(field, prec);
    const auto& c = y.poly().coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * theta + LocalElement::from_int(field, Int(c[i] * Rat(den)), prec);
    acc = acc * LocalElement::from_rat(field, Rat(1) / Rat(unit_den), prec);
    return {acc, s};
}

inline LocalElement embed_integral(const NFElem& y, const LocalElement& theta) {
    auto e = embed_nf(y, theta);
    if (e.shift == 0) return e.scaled;
    if (e.valuation() < 0) throw std::domain_error("embed_integral: element is not integral at p");
    return e.scaled.div_p_power(e.shift);
}

// Image of pi under zeta -> zeta^a in Q_p(zeta_{p^S}).
inline LocalElement galois_image(const LocalElement& x, long a) {
    const auto& field = x.field();
    if (field->kind() != LocalField::Kind::Cyclotomic) throw std::logic_error("galois_image: needs a cyclotomic field");
    LocalElement one = LocalElement::from_int(field, Int(1), x.precision());
    LocalElement pi_img = (one + LocalElement::uniformizer(field, x.precision())).pow(a) - one;
    LocalElement acc(field, x.precision());
    for (std::size_t i = x.coeffs().size(); i-- > 0;)
        acc = acc * pi_img + LocalElement::from_int(field, x.coeffs()[i], x.precision());
    return acc;
}

// Ramification index of Q_p(x_1, ..., x_k) for elements of a cyclotomic (or trivial) extension:
// the size of their joint Galois orbit, as the extension is totally ramified.
inline long ramification_of(const std::vector<LocalElement>& xs) {
    if (xs.empty()) return 1;
    const auto& field = xs[0].field();
    if (field->e() == 1) return 1;
    if (field->kind() != LocalField::Kind::Cyclotomic)
        throw std::logic_error("ramification_of: only cyclotomic fields are supported");
    long pS = 1;
    for (int i = 0; i < field->cyclotomic_level(); ++i) pS *= field->p();
    std::vector<std::vector<LocalElement>> orbit;
    for (long a = 1; a < pS; ++a) {
        if (a % field->p() == 0) continue;
        std::vector<LocalElement> img;
        for (const auto& x : xs) img.push_back(galois_image(x, a));
        bool known = false;
        for (const auto& o : orbit) {
            bool same = true;
            for (std::size_t i = 0; i < o.size(); ++i)
                if (!congruent(o[i], img[i])) same = false;
            if (same) known = true;
        }
        if (!known) orbit.push_back(img);
    }
    return static_cast<long>(orbit.size());
}

// An eigenform embedded into O_L by one root of its Hecke polynomial, integrally normalized
// so that its first value of minimal valuation on the Manin symbols equals 1.
struct EigenSymbol {
    std::shared_ptr<const ModularSymbols> ms;
    std::shared_ptr<const ExactEigenform> exact;
    LocalElement theta;
    PadicSymbol symbol;
    std::size_t normalizing_symbol = 0;
    long hecke_ramification = 1;  // e of Q_p(eigenvalues)

    int sign() const { return exact->sign; }
    long level() const { return exact->level; }
    int weight() const { return exact->weight; }
    long p() const { return symbol.p(); }
    const FieldPtr& field() const { return symbol.field; }
    long precision() const { return symbol.precision; }

    NFElem exact_eigenvalue(long l) const {
        auto it = exact->eigenvalues.find(l);
        if (it != exact->eigenvalues.end()) return it->second;
        return eigenvalue_at(*ms, exact->functional, l);
    }
    LocalElement eigenvalue(long l) const {
        return embed_integral(exact_eigenvalue(l), theta).with_precision(precision());
    }
    // a_1..a_bound.
    std::vector<LocalElement> qexpansion(long bound) const {
        auto from_int = [&](const Int& n) { return LocalElement::from_int(field(), n, precision()); };
        return qexpansion_from_primes<LocalElement>(level(), weight(), bound, [&](long l) { return eigenvalue(l); }, from_int);
    }
};

inline EigenSymbol embed_eigenform(std::shared_ptr<const ModularSymbols> ms, std::shared_ptr<const ExactEigenform> ef,
                                   const LocalElement& root, long precision) {
    const ManinSpace& M = ms->space();
    const FieldPtr& field = root.field();
    const long e = field->e();
    std::vector<NFElem> exact_values(M.num_symbols(), NFElem(0));
    long max_shift = 0;
    for (std::size_t sym = 0; sym < M.num_symbols(); ++sym) {
        for (const auto& [b, r] : M.reduce(sym)) exact_values[sym] += NFElem(r) * ef->functional[b];
        Int den = 1;
        for (const auto& q : exact_values[sym].poly().coeffs())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        max_shift = std::max(max_shift, ord_p(den, field->p()));
    }
    long work = precision + e * (2 * max_shift + 4) + 8;
    for (int attempt = 0; attempt < 8; ++attempt) {
        LocalElement theta = root.precision() >= work ? root.with_precision(work) : refine_root(ef->field->modulus, root, work);
        std::vector<EmbeddedNF> emb;
        emb.reserve(exact_values.size());
        for (const auto& y : exact_values) emb.push_back(embed_nf(y, theta));
        std::size_t best = 0;
        long vbest = kInfiniteValuation;
        for (std::size_t sym = 0; sym < emb.size(); ++sym) {
            long v = emb[sym].valuation();
            if (v < vbest) {
                vbest = v;
                best = sym;
            }
        }
        if (vbest == kInfiniteValuation) throw std::runtime_error("embed_eigenform: symbol vanishes at working precision");
        const EmbeddedNF& ref = emb[best];
        PadicSymbol sym_out{ms->space_ptr(), field, precision, {}};
        bool enough = true;
        for (const auto& y : emb) {
            LocalElement num = ipow(field->p(), ref.shift) * y.scaled;
            LocalElement den = ipow(field->p(), y.shift) * ref.scaled;
            LocalElement q = num.is_zero() ? LocalElement(field, num.precision()) : divide_exact(num, den);
            if (q.precision() < precision) enough = false;
            sym_out.manin_values.push_back(q.with_precision(precision));
        }
        if (!enough) {
            work += precision + 4 * e;
            continue;
        }
        EigenSymbol out{ms, ef, theta.with_precision(precision), std::move(sym_out), best, 1};
        return out;
    }
    throw PrecisionError("embed_eigenform: could not reach the requested precision");
}

// Candidate fields searched for roots of Hecke polynomials, smallest first.
inline std::vector<FieldPtr> default_coefficient_fields(long p) {
    return {LocalField::rationals(p), LocalField::cyclotomic(p, 1), LocalField::cyclotomic(p, 2)};
}

// Integrally normalized eigen-symbols of the given sign, one per embedding of each Hecke field
// into the first candidate field containing a root (or into `field` when given).
using EigenformFilter = std::function<bool(const ExactEigenform&)>;

// Keeps the rational eigenforms with the given eigenvalues.
inline EigenformFilter match_rational_eigenvalues(std::shared_ptr<const ModularSymbols> ms, std::map<long, Rat> wanted) {
    return [ms = std::move(ms), wanted = std::move(wanted)](const ExactEigenform& f) {
        if (f.degree() != 1) return false;
        for (const auto& [l, a] : wanted) {
            auto it = f.eigenvalues.find(l);
            NFElem v = it != f.eigenvalues.end() ? it->second : eigenvalue_at(*ms, f.functional, l);
            if (v.rational() != a) return false;
        }
        return true;
    };
}

inline std::vector<EigenSymbol> eigen_symbols(std::shared_ptr<const ModularSymbols> ms, int sign, long p, long digits,
                                              FieldPtr field = nullptr, const EigenformFilter& keep = nullptr) {
    auto forms = exact_eigenforms(*ms, sign);
    std::vector<EigenSymbol> out;
    for (auto& f : forms) {
        if (keep && !keep(f)) continue;
        auto ef = std::make_shared<const ExactEigenform>(std::move(f));
        std::vector<FieldPtr> candidates = field ? std::vector<FieldPtr>{field} : default_coefficient_fields(p);
        bool found = false;
        for (const auto& L : candidates) {
            long prec = digits * L->e();
            long work = prec + 16 * L->e();
            auto roots = roots_in(ef->field->modulus, L, work);
            if (roots.empty()) continue;
            found = true;
            for (const auto& r : roots) {
                EigenSymbol es = embed_eigenform(ms, ef, r, prec);
                std::vector<LocalElement> gens;
                for (const auto& [l, a] : ef->eigenvalues) gens.push_back(embed_integral(a, r).with_precision(prec));
                es.hecke_ramification = ramification_of(gens);
                out.push_back(std::move(es));
            }
            break;
        }
        if (!found && field)
            throw InputError("Hecke polynomial " + ef->field->modulus.str() + " has no root in " + field->describe());
        if (!found)
            throw InputError("Hecke polynomial " + ef->field->modulus.str() + " has no root in the supported extensions of Q_" + std::to_string(p));
    }
    return out;
}

}  // namespace pcong
