#pragma once

#include "pcong/arith/poly.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace pcong {

namespace detail {

// Polynomials over Z/q for a small prime q; coefficients low to high.
struct ModQ {
    long q;
    using P = std::vector<long>;

    void trim(P& a) const {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    long mul(long a, long b) const { return static_cast<long>(static_cast<__int128>(a) * b % q); }
    long inv(long a) const { return powmod(a, q - 2, q); }

    P add(const P& a, const P& b) const {
        P out(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + b[i]) % q;
        trim(out);
        return out;
    }
    P sub(const P& a, const P& b) const {
        P out(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) out[i] = mod_floor(out[i] - b[i], q);
        trim(out);
        return out;
    }
    P mul(const P& a, const P& b) const {
        if (a.empty() || b.empty()) return {};
        P out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mul(a[i], b[j])) % q;
        trim(out);
        return out;
    }
    std::pair<P, P> divmod(const P& a, const P& b) const {
        P r = a;
        trim(r);
        if (r.size() < b.size()) return {P{}, r};
        P quo(r.size() - b.size() + 1, 0);
        long inv_lc = inv(b.back());
        for (std::size_t k = quo.size(); k-- > 0;) {
            long t = mul(r[k + b.size() - 1], inv_lc);
            quo[k] = t;
            if (!t) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = mod_floor(r[k + j] - mul(t, b[j]), q);
        }
        trim(r);
        trim(quo);
        return {quo, r};
    }
    P rem(const P& a, const P& b) const { return divmod(a, b).second; }
    P monic(P a) const {
        trim(a);
        if (a.empty()) return a;
        long i = inv(a.back());
        for (auto& x : a) x = mul(x, i);
        return a;
    }
    P gcd(P a, P b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            P r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    // (g, s, t) with s a + t b = g monic.
    std::tuple<P, P, P> xgcd(P a, P b) const {
        P s0{1}, s1{}, t0{}, t1{1};
        trim(a);
        trim(b);
        while (!b.empty()) {
            auto [qq, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
            P s2 = sub(s0, mul(qq, s1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            P t2 = sub(t0, mul(qq, t1));
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        long i = inv(a.back());
        auto scale = [&](P v) {
            for (auto& x : v) x = mul(x, i);
            trim(v);
            return v;
        };
        return {scale(a), scale(s0), scale(t0)};
    }
    P powmod_poly(P base, Int e, const P& m) const {
        P acc{1};
        base = rem(base, m);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) acc = rem(mul(acc, base), m);
            base = rem(mul(base, base), m);
            e >>= 1;
        }
        return acc;
    }
    P derivative(const P& a) const {
        P out;
        for (std::size_t i = 1; i < a.size(); ++i) out.push_back(mul(a[i], static_cast<long>(i % q)));
        trim(out);
        return out;
    }
};

// Cantor-Zassenhaus factorization of a monic squarefree polynomial mod q (q odd).
inline std::vector<ModQ::P> factor_mod_q(const ModQ& F, const ModQ::P& f, std::mt19937_64& rng) {
    using P = ModQ::P;
    std::vector<std::pair<P, int>> by_degree;
    P rest = f;
    P xpow{0, 1};
    P x{0, 1};
    for (int d = 1; 2 * d <= static_cast<int>(rest.size()) - 1; ++d) {
        xpow = F.powmod_poly(xpow, Int(F.q), rest);
        P g = F.gcd(rest, F.sub(xpow, x));
        if (g.size() > 1) {
            by_degree.emplace_back(g, d);
            rest = F.divmod(rest, g).first;
            xpow = F.rem(xpow, rest);
        }
    }
    if (rest.size() > 1) by_degree.emplace_back(rest, static_cast<int>(rest.size()) - 1);

    std::vector<P> out;
    std::uniform_int_distribution<long> coeff(0, F.q - 1);
    for (auto& [g, d] : by_degree) {
        std::vector<P> pending{g};
        while (!pending.empty()) {
            P h = pending.back();
            pending.pop_back();
            if (static_cast<int>(h.size()) - 1 == d) {
                out.push_back(F.monic(h));
                continue;
            }
            while (true) {
                P a(h.size() - 1);
                for (auto& c : a) c = coeff(rng);
                F.trim(a);
                if (a.empty()) continue;
                Int e = (ipow(Int(F.q), d) - 1) / 2;
                P b = F.sub(F.powmod_poly(a, e, h), P{1});
                P split = F.gcd(h, b);
                if (split.size() > 1 && split.size() < h.size()) {
                    pending.push_back(split);
                    pending.push_back(F.monic(F.divmod(h, split).first));
                    break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

using ZP = std::vector<Int>;

inline ZP zp_mul(const ZP& a, const ZP& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZP out(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    for (auto& x : out) x = mod_floor(x, m);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

inline ModQ::P reduce(const ZP& a, long q) {
    ModQ::P out;
    for (const auto& x : a) out.push_back(mod_floor(x, Int(q)).get_si());
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Lift target = lcA * a * b (mod q) with a monic to modulus q^k; b keeps the leading coefficient.
inline std::pair<ZP, ZP> hensel_lift(const ZP& target, const ModQ& F, const ModQ::P& a0, const ModQ::P& b0,
                                     int k) {
    auto [g, s, t] = F.xgcd(a0, b0);
    (void)g;
    const Int q(F.q);
    ZP a(a0.begin(), a0.end()), b(b0.begin(), b0.end());
    Int qk = q;
    for (int step = 1; step < k; ++step) {
        Int next = qk * q;
        ZP prod = zp_mul(a, b, next);
        ZP diff(std::max(target.size(), prod.size()), Int(0));
        for (std::size_t i = 0; i < target.size(); ++i) diff[i] += target[i];
        for (std::size_t i = 0; i < prod.size(); ++i) diff[i] -= prod[i];
        ModQ::P e;
        for (auto& x : diff) {
            Int y = mod_floor(x, next);
            e.push_back(Int(y / qk).get_si() % F.q);
        }
        F.trim(e);
        // da * b + db * a = e with deg da < deg a.
        ModQ::P da = F.rem(F.mul(e, t), a0);
        ModQ::P db = F.divmod(F.sub(e, F.mul(da, b0)), a0).first;
        for (std::size_t i = 0; i < da.size(); ++i) {
            if (i >= a.size()) a.resize(i + 1, Int(0));
            a[i] += qk * da[i];
        }
        for (std::size_t i = 0; i < db.size(); ++i) {
            if (i >= b.size()) b.resize(i + 1, Int(0));
            b[i] += qk * db[i];
        }
        qk = next;
    }
    for (auto& x : a) x = mod_floor(x, qk);
    for (auto& x : b) x = mod_floor(x, qk);
    return {a, b};
}

inline std::vector<QPoly> factor_squarefree_integer(const std::vector<Int>& g) {
    const long deg = static_cast<long>(g.size()) - 1;
    if (deg <= 1) return {from_integer_coeffs(g).monic()};
    QPoly gq = from_integer_coeffs(g);
    const Int lc = g.back();

    // Pick the prime among the first few good ones giving the fewest modular factors.
    std::mt19937_64 rng(0x5eed);
    long best_q = 0;
    std::vector<ModQ::P> best;
    int good = 0;
    for (long q = 3; good < 5 && q < 10000; q += 2) {
        if (!is_prime(q) || mod_floor(lc, Int(q)) == 0) continue;
        ModQ F{q};
        auto gm = reduce(g, q);
        if (F.gcd(gm, F.derivative(gm)).size() != 1) continue;
        auto facs = factor_mod_q(F, F.monic(gm), rng);
        ++good;
        if (best_q == 0 || facs.size() < best.size()) {
            best_q = q;
            best = facs;
        }
        if (best.size() == 1) break;
    }
    if (best_q == 0) throw std::runtime_error("factor: no good prime found");
    if (best.size() == 1) return {gq.monic()};

    // Coefficient bound for factors of lc * g.
    Int norm2 = 0;
    for (const auto& c : g) norm2 += c * c;
    Int root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    Int bound = (root + 1) * ipow(2, static_cast<unsigned long>(deg)) * abs(lc) * 2 + 1;
    int k = 1;
    Int qk = best_q;
    while (qk <= bound) {
        qk *= best_q;
        ++k;
    }

    ModQ F{best_q};
    std::vector<ZP> lifted;
    ZP target = g;
    for (auto& x : target) x = mod_floor(x, qk);
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        ModQ::P rest_mod = reduce(target, best_q);
        ModQ::P bi = F.divmod(rest_mod, best[i]).first;
        auto [ai, rest] = hensel_lift(target, F, best[i], bi, k);
        lifted.push_back(ai);
        target = rest;
    }
    {
        // Final factor: monic version of the remaining cofactor.
        Int inv_lc = inverse_mod(lc, qk);
        ZP last = target;
        for (auto& x : last) x = mod_floor(x * inv_lc, qk);
        lifted.push_back(last);
    }

    std::vector<QPoly> found;
    QPoly remaining = gq;
    std::vector<bool> used(lifted.size(), false);
    std::size_t left = lifted.size();
    for (std::size_t size = 1; 2 * size <= left; ++size) {
        bool restart = true;
        while (restart) {
            restart = false;
            std::vector<std::size_t> avail;
            for (std::size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) avail.push_back(i);
            if (2 * size > avail.size()) break;
            std::vector<bool> pick(avail.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
            do {
                ZP prod{lc};
                for (std::size_t i = 0; i < avail.size(); ++i)
                    if (pick[i]) prod = zp_mul(prod, lifted[avail[i]], qk);
                for (auto& x : prod) x = mod_symmetric(x, qk);
                QPoly cand = from_integer_coeffs(primitive_integer_coeffs(from_integer_coeffs(prod)));
                auto [quo, rem] = divmod(remaining, cand);
                if (rem.is_zero()) {
                    found.push_back(cand.monic());
                    remaining = quo;
                    for (std::size_t i = 0; i < avail.size(); ++i)
                        if (pick[i]) used[avail[i]] = true;
                    left -= size;
                    restart = true;
                    break;
                }
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
    }
    if (remaining.degree() > 0) found.push_back(remaining.monic());
    return found;
}

}  // namespace detail

struct PolyFactor {
    QPoly factor;  // monic irreducible over Q
    int multiplicity;
};

// Factorization over Q of a nonzero polynomial into monic irreducibles, sorted by (degree, coefficients).
inline std::vector<PolyFactor> factor_over_q(const QPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("factor_over_q: zero polynomial");
    std::vector<PolyFactor> out;
    // Yun's squarefree decomposition.
    QPoly a = f.monic();
    QPoly b = a.derivative();
    QPoly c = poly_gcd(a, b);
    QPoly w = a / c;
    int mult = 1;
    while (w.degree() > 0) {
        QPoly y = poly_gcd(w, c);
        QPoly z = w / y;
        if (z.degree() > 0)
            for (auto& g : detail::factor_squarefree_integer(primitive_integer_coeffs(z)))
                out.push_back({g, mult});
        w = y;
        c = c / y;
        ++mult;
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& x, const PolyFactor& y) {
        if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
        const auto& cx = x.factor.coeffs();
        const auto& cy = y.factor.coeffs();
        for (std::size_t i = 0; i < cx.size(); ++i)
            if (cx[i] != cy[i]) return cx[i] < cy[i];
        return x.multiplicity < y.multiplicity;
    });
    return out;
}

}  // namespace pcong
