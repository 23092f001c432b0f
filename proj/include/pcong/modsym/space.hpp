#pragma once

#include "pcong/arith/matrix.hpp"
#include "pcong/modsym/cosets.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

namespace pcong {

using SparseVec = std::vector<std::pair<std::size_t, Rat>>;
// Integer combination of Manin symbols, keyed by symbol index.
using SymbolCombination = std::map<std::size_t, Int>;

// Coefficients of (aX + bY)^i (cX + dY)^(n-i); entry j is the coefficient of X^j Y^(n-j).
inline std::vector<Int> transform_monomial(int i, int n, const Mat2& h) {
    auto binom = [](int top, int k) {
        Int r;
        mpz_bin_uiui(r.get_mpz_t(), top, k);
        return r;
    };
    std::vector<Int> left(i + 1), right(n - i + 1);
    for (int s = 0; s <= i; ++s) left[s] = binom(i, s) * ipow(h.a, s) * ipow(h.b, i - s);
    for (int t = 0; t <= n - i; ++t) right[t] = binom(n - i, t) * ipow(h.c, t) * ipow(h.d, n - i - t);
    std::vector<Int> out(n + 1, Int(0));
    for (int s = 0; s <= i; ++s)
        for (int t = 0; t <= n - i; ++t) out[s + t] += left[s] * right[t];
    return out;
}

// Merel's matrices [[a,b],[c,d]] with a > b >= 0, d > c >= 0, ad - bc = n.
inline std::vector<Mat2> heilbronn_merel(long n) {
    std::vector<Mat2> out;
    for (long a = 1; a <= n; ++a)
        for (long d = 1; a + d <= n + 1; ++d) {
            long bc = a * d - n;
            if (bc < 0) continue;
            if (bc == 0) {
                for (long c = 0; c < d; ++c) out.push_back({a, 0, c, d});
                for (long b = 1; b < a; ++b) out.push_back({a, b, 0, d});
                continue;
            }
            for (long b = 1; b < a; ++b) {
                if (bc % b) continue;
                long c = bc / b;
                if (c < d) out.push_back({a, b, c, d});
            }
        }
    return out;
}

// Weight-k modular symbols for Gamma0(N) or Gamma1(N) presented by Manin symbols
// [X^i Y^(n-i), (c, d)] modulo the two- and three-term relations.
class ManinSpace {
public:
    ManinSpace(GroupType type, long level, int weight) : cosets_(type, level), level_(level), weight_(weight) {
        if (weight < 2) throw InputError("weight must be at least 2");
        solve_relations();
    }

    GroupType group() const { return cosets_.type(); }
    long level() const { return level_; }
    int weight() const { return weight_; }
    int degree() const { return weight_ - 2; }
    const Cosets& cosets() const { return cosets_; }
    std::size_t num_symbols() const { return cosets_.size() * (degree() + 1); }
    std::size_t dimension() const { return basis_symbols_.size(); }

    std::size_t symbol(int i, std::size_t coset) const { return coset * (degree() + 1) + i; }
    int monomial_of(std::size_t sym) const { return static_cast<int>(sym % (degree() + 1)); }
    std::size_t coset_of(std::size_t sym) const { return sym / (degree() + 1); }

    // Coordinates of a Manin symbol in the free basis.
    const SparseVec& reduce(std::size_t sym) const { return vectors_[sym]; }
    const std::vector<std::size_t>& basis_symbols() const { return basis_symbols_; }

    std::vector<Rat> reduce_combination(const SymbolCombination& comb) const {
        std::vector<Rat> out(dimension(), Rat(0));
        for (const auto& [sym, coeff] : comb)
            for (const auto& [b, r] : vectors_[sym]) out[b] += r * Rat(coeff);
        return out;
    }

    // Right action of an integral matrix on a Manin symbol; empty when the new row is not a coset.
    SymbolCombination act(std::size_t sym, const Mat2& h) const {
        SymbolCombination out;
        add_action(out, sym, h, Int(1));
        return out;
    }

    void add_action(SymbolCombination& out, std::size_t sym, const Mat2& h, const Int& scale) const {
        const auto& [u, v] = cosets_.representative(coset_of(sym));
        auto idx = cosets_.index(u * h.a + v * h.c, u * h.b + v * h.d);
        if (!idx) return;
        auto poly = transform_monomial(monomial_of(sym), degree(), h);
        for (int j = 0; j <= degree(); ++j)
            if (poly[j] != 0) out[symbol(j, *idx)] += scale * poly[j];
    }


    // X^i Y^(n-i) (x) {infinity, a/b} via continued fraction convergents.
    SymbolCombination path_from_infinity(int i, long a, long b) const {
        SymbolCombination out;
        add_path_from_infinity(out, i, a, b, Int(1));
        return out;
    }

    void add_path_from_infinity(SymbolCombination& out, int i, long a, long b, const Int& scale) const {
        for_each_path_term(i, a, b, [&](std::size_t sym, const Int& c) { out[sym] += scale * c; });
    }

    // Calls visit(symbol, coefficient) for the Manin-symbol expansion of X^i Y^(n-i) (x) {infinity, a/b},
    // walking the convergents of a/b.
    template <class Visit>
    void for_each_path_term(int i, long a, long b, Visit&& visit) const {
        if (b == 0) return;
        if (b < 0) { a = -a; b = -b; }
        long g = std::gcd(std::labs(a), b);
        a /= g;
        b /= g;
        long p2 = 0, q2 = 1, p1 = 1, q1 = 0;
        long num = a, den = b;
        int j = 0;
        const Int one(1);
        while (true) {
            long cj = num >= 0 ? num / den : -((-num + den - 1) / den);
            long pj = cj * p1 + p2, qj = cj * q1 + q2;
            long sign = (j % 2 == 0) ? -1 : 1;  // (-1)^(j-1)
            Mat2 gj{sign * pj, p1, sign * qj, q1};
            auto idx = cosets_.index(gj.c, gj.d);
            if (degree() == 0) {
                visit(symbol(0, *idx), one);
            } else {
                auto poly = transform_monomial(i, degree(), gj);
                for (int k = 0; k <= degree(); ++k)
                    if (poly[k] != 0) visit(symbol(k, *idx), poly[k]);
            }
            long rem = num - cj * den;
            if (rem == 0) break;
            num = den;
            den = rem;
            p2 = p1; q2 = q1; p1 = pj; q1 = qj;
            ++j;
        }
    }

    // Matrix on the free basis of the operator sum_h (x |-> x h); row b is the image of basis element b.
    QMatrix operator_matrix(const std::vector<Mat2>& mats) const {
        QMatrix out(dimension(), dimension());
        for (std::size_t b = 0; b < dimension(); ++b) {
            SymbolCombination comb;
            for (const auto& h : mats) add_action(comb, basis_symbols_[b], h, Int(1));
            auto row = reduce_combination(comb);
            for (std::size_t c = 0; c < dimension(); ++c) out(b, c) = row[c];
        }
        return out;
    }

    // T_n (or U_n on primes dividing the level).
    QMatrix hecke_matrix(long n) const { return operator_matrix(heilbronn_merel(n)); }

    QMatrix diamond_matrix(long d) const {
        if (std::gcd(d, level_) != 1) throw InputError("diamond operator needs d prime to the level");
        QMatrix out(dimension(), dimension());
        for (std::size_t b = 0; b < dimension(); ++b) {
            std::size_t sym = basis_symbols_[b];
            const auto& [u, v] = cosets_.representative(coset_of(sym));
            SymbolCombination comb;
            comb[symbol(monomial_of(sym), *cosets_.index(d * u, d * v))] = 1;
            auto row = reduce_combination(comb);
            for (std::size_t c = 0; c < dimension(); ++c) out(b, c) = row[c];
        }
        return out;
    }

    // [P(X,Y), (c,d)] -> [P(-X,Y), (-c,d)].
    QMatrix involution_matrix() const {
        QMatrix out(dimension(), dimension());
        for (std::size_t b = 0; b < dimension(); ++b) {
            SymbolCombination comb;
            add_action(comb, basis_symbols_[b], Mat2{-1, 0, 0, 1}, Int(1));
            auto row = reduce_combination(comb);
            for (std::size_t c = 0; c < dimension(); ++c) out(b, c) = row[c];
        }
        return out;
    }

    // Boundary map on the free basis; columns index classes of primitive vectors.
    QMatrix boundary_matrix() const {
        std::map<std::array<long, 2>, std::size_t> columns;
        std::vector<std::vector<std::pair<std::size_t, int>>> rows(dimension());
        const int n = degree();
        auto add = [&](std::size_t b, long a, long c, int coeff) {
            auto kv = cosets_.vector_class(a, c);
            auto km = cosets_.vector_class(-a, -c);
            int sign = 1;
            auto key = kv;
            if (km < kv) {
                key = km;
                sign = (n % 2) ? -1 : 1;
            } else if (km == kv && n % 2) {
                return;
            }
            auto it = columns.try_emplace(key, columns.size()).first;
            rows[b].emplace_back(it->second, sign * coeff);
        };
        for (std::size_t b = 0; b < dimension(); ++b) {
            std::size_t sym = basis_symbols_[b];
            int i = monomial_of(sym);
            const auto& [c, d] = cosets_.representative(coset_of(sym));
            Mat2 g = lift_to_sl2z(c, d, level_);
            if (i == n) add(b, g.a, g.c, 1);
            if (i == 0) add(b, g.b, g.d, -1);
        }
        QMatrix out(dimension(), columns.size());
        for (std::size_t b = 0; b < dimension(); ++b)
            for (auto [col, coeff] : rows[b]) out(b, col) += coeff;
        return out;
    }

    // Basis (rows) of the cuspidal subspace: the kernel of the boundary map.
    QMatrix cuspidal_subspace() const { return left_kernel(boundary_matrix()); }

private:
    struct UnionFind {
        std::vector<std::size_t> parent;
        std::vector<int> sign;
        std::vector<bool> zero;
        explicit UnionFind(std::size_t n) : parent(n), sign(n, 1), zero(n, false) {
            std::iota(parent.begin(), parent.end(), 0);
        }
        std::pair<std::size_t, int> find(std::size_t x) {
            int s = 1;
            std::size_t r = x;
            while (parent[r] != r) {
                s *= sign[r];
                r = parent[r];
            }
            // Path compression.
            std::size_t cur = x;
            int cs = s;
            while (parent[cur] != cur) {
                std::size_t next = parent[cur];
                int ns = cs * sign[cur];
                parent[cur] = r;
                sign[cur] = cs;
                cur = next;
                cs = ns;
            }
            return {r, s};
        }
        // value(x) = s * value(y)
        void unite(std::size_t x, std::size_t y, int s) {
            auto [rx, sx] = find(x);
            auto [ry, sy] = find(y);
            if (rx == ry) {
                if (sx != s * sy) zero[rx] = true;
                return;
            }
            parent[rx] = ry;
            sign[rx] = sx * s * sy;
            zero[ry] = zero[ry] || zero[rx];
        }
    };

    void solve_relations() {
        const int n = degree();
        const std::size_t total = num_symbols();
        UnionFind uf(total);
        const Mat2 sigma{0, -1, 1, 0};
        for (std::size_t sym = 0; sym < total; ++sym) {
            // x + x sigma = 0
            auto img = act(sym, sigma);
            auto [other, coeff] = *img.begin();
            uf.unite(sym, other, -coeff.get_si());
            // x = x (-I) = (-1)^n [P, (-c,-d)]
            auto img2 = act(sym, Mat2{-1, 0, 0, -1});
            auto [other2, coeff2] = *img2.begin();
            uf.unite(sym, other2, coeff2.get_si());
        }
        // Reduced generators are the live classes.
        std::vector<long> gen_of(total, -1);
        std::vector<int> sign_of(total, 0);
        std::vector<std::size_t> gen_symbol;
        for (std::size_t sym = 0; sym < total; ++sym) {
            auto [r, s] = uf.find(sym);
            if (uf.zero[r]) continue;
            if (gen_of[r] < 0) {
                gen_of[r] = static_cast<long>(gen_symbol.size());
                gen_symbol.push_back(r);
            }
            gen_of[sym] = gen_of[r];
            sign_of[sym] = s;
        }
        const std::size_t R = gen_symbol.size();

        // Three-term relations, one coset per tau-orbit.
        const Mat2 tau{0, -1, 1, -1}, tau2{-1, 1, -1, 0};
        std::vector<bool> seen(cosets_.size(), false);
        std::map<std::size_t, std::map<std::size_t, Rat>> pivots;
        auto add_relation = [&](std::map<std::size_t, Rat> row) {
            auto it = row.begin();
            while (it != row.end()) {
                auto piv = pivots.find(it->first);
                if (piv == pivots.end()) { ++it; continue; }
                Rat f = it->second;
                std::size_t col = it->first;
                for (const auto& [c, v] : piv->second) {
                    auto& slot = row[c];
                    slot -= f * v;
                }
                // Drop zeros and continue past the eliminated column.
                for (auto jt = row.begin(); jt != row.end();) {
                    if (sgn(jt->second) == 0) jt = row.erase(jt);
                    else ++jt;
                }
                it = row.upper_bound(col);
            }
            if (row.empty()) return;
            Rat lead = row.begin()->second;
            for (auto& [c, v] : row) v /= lead;
            std::size_t col = row.begin()->first;
            pivots.emplace(col, std::move(row));
        };
        for (std::size_t j = 0; j < cosets_.size(); ++j) {
            if (seen[j]) continue;
            const auto& [u, v] = cosets_.representative(j);
            std::size_t j1 = *cosets_.index(v, -u - v), j2 = *cosets_.index(-u - v, u);
            seen[j] = seen[j1] = seen[j2] = true;
            for (int i = 0; i <= n; ++i) {
                std::size_t sym = symbol(i, j);
                SymbolCombination comb;
                comb[sym] += 1;
                add_action(comb, sym, tau, Int(1));
                add_action(comb, sym, tau2, Int(1));
                std::map<std::size_t, Rat> row;
                for (const auto& [s, c] : comb) {
                    if (c == 0 || gen_of[s] < 0) continue;
                    row[gen_of[s]] += Rat(c * sign_of[s]);
                }
                for (auto it = row.begin(); it != row.end();) {
                    if (sgn(it->second) == 0) it = row.erase(it);
                    else ++it;
                }
                if (!row.empty()) add_relation(std::move(row));
            }
        }
        // Back-substitute into reduced echelon form.
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            auto& row = it->second;
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& [c, v] : row) {
                    if (c == it->first) continue;
                    auto piv = pivots.find(c);
                    if (piv == pivots.end()) continue;
                    Rat f = v;
                    for (const auto& [c2, v2] : piv->second) row[c2] -= f * v2;
                    for (auto jt = row.begin(); jt != row.end();) {
                        if (sgn(jt->second) == 0) jt = row.erase(jt);
                        else ++jt;
                    }
                    changed = true;
                    break;
                }
            }
        }
        std::vector<long> basis_index(R, -1);
        for (std::size_t g = 0; g < R; ++g) {
            if (pivots.count(g)) continue;
            basis_index[g] = static_cast<long>(basis_symbols_.size());
            basis_symbols_.push_back(gen_symbol[g]);
        }
        std::vector<SparseVec> gen_vec(R);
        for (std::size_t g = 0; g < R; ++g) {
            if (basis_index[g] >= 0) {
                gen_vec[g] = {{static_cast<std::size_t>(basis_index[g]), Rat(1)}};
                continue;
            }
            for (const auto& [c, v] : pivots.at(g)) {
                if (c == g) continue;
                gen_vec[g].emplace_back(static_cast<std::size_t>(basis_index[c]), -v);
            }
        }
        vectors_.assign(total, {});
        for (std::size_t sym = 0; sym < total; ++sym) {
            if (gen_of[sym] < 0) continue;
            for (const auto& [b, v] : gen_vec[gen_of[sym]]) vectors_[sym].emplace_back(b, v * sign_of[sym]);
        }
    }

    Cosets cosets_;
    long level_;
    int weight_;
    std::vector<std::size_t> basis_symbols_;
    std::vector<SparseVec> vectors_;
};

}  // namespace pcong
