#pragma once

#include "pcong/arith/factor.hpp"
#include "pcong/arith/number_field.hpp"
#include "pcong/modsym/space.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcong {

struct NonSemisimpleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline long sturm_bound(long level, int weight) {
    // k/12 times the index of {+-1} Gamma1(N) in PSL2(Z).
    Rat index(level * level, 1);
    for (auto [q, e] : factorize(level)) {
        (void)e;
        index *= Rat(q * q - 1, q * q);
    }
    if (level >= 3) index /= 2;
    Rat bound = Rat(weight) * index / 12;
    Int ceil;
    mpz_cdiv_q(ceil.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
    return ceil.get_si();
}

// A Manin-symbol space with cached Hecke data and the cuspidal part of its dual.
// Functionals are row vectors over the free basis; an operator with homology matrix H acts on
// them by phi -> phi * H^t.
class ModularSymbols {
public:
    ModularSymbols(GroupType type, long level, int weight) : space_(std::make_shared<const ManinSpace>(type, level, weight)) {
        if (level <= 3) throw InputError("level must exceed 3 (lower levels have torsion in the group)");
    }

    const ManinSpace& space() const { return *space_; }
    std::shared_ptr<const ManinSpace> space_ptr() const { return space_; }
    long level() const { return space_->level(); }
    int weight() const { return space_->weight(); }

    const QMatrix& hecke(long n) const {
        auto it = hecke_.find(n);
        if (it == hecke_.end()) it = hecke_.emplace(n, space_->hecke_matrix(n)).first;
        return it->second;
    }
    const QMatrix& hecke_dual(long n) const {
        auto it = hecke_dual_.find(n);
        if (it == hecke_dual_.end()) it = hecke_dual_.emplace(n, hecke(n).transpose()).first;
        return it->second;
    }
    const QMatrix& involution_dual() const {
        if (!involution_dual_) involution_dual_ = space_->involution_matrix().transpose();
        return *involution_dual_;
    }

    // Smallest prime not dividing the level.
    long good_prime() const {
        for (long l = 2;; ++l)
            if (is_prime(l) && level() % l) return l;
    }

    // Functionals killed by f_S(T_l), where f_S is the characteristic polynomial on cuspidal homology.
    const QMatrix& cuspidal_dual() const {
        if (cuspidal_dual_) return *cuspidal_dual_;
        QMatrix S = space_->cuspidal_subspace();
        if (S.rows() == 0) return *(cuspidal_dual_ = QMatrix(0, space_->dimension()));
        for (long l = 2; l < 200; ++l) {
            if (!is_prime(l) || level() % l == 0) continue;
            std::vector<Rat> fs = charpoly(restrict_to(S, hecke(l)));
            std::vector<Rat> fm = charpoly(hecke(l));
            QPoly fsp(fs), fe = QPoly(fm) / fsp;
            if (poly_gcd(fsp, fe).degree() > 0) continue;
            QMatrix C = left_kernel(evaluate_polynomial(fs, hecke_dual(l)));
            if (C.rows() != S.rows()) throw std::logic_error("cuspidal dual has the wrong dimension");
            return *(cuspidal_dual_ = row_space(C));
        }
        throw std::runtime_error("could not separate cuspidal and Eisenstein parts");
    }

    // Sign part of the cuspidal dual under the involution.
    QMatrix cuspidal_dual(int sign) const {
        const QMatrix& C = cuspidal_dual();
        if (C.rows() == 0) return C;
        QMatrix B = restrict_to(C, involution_dual());
        for (std::size_t i = 0; i < B.rows(); ++i) B(i, i) -= Rat(sign);
        QMatrix coords = left_kernel(B);
        return coords.rows() ? coords * C : QMatrix(0, C.cols());
    }

    long sturm() const { return sturm_bound(level(), weight()); }

private:
    std::shared_ptr<const ManinSpace> space_;
    mutable std::map<long, QMatrix> hecke_;
    mutable std::map<long, QMatrix> hecke_dual_;
    mutable std::optional<QMatrix> involution_dual_;
    mutable std::optional<QMatrix> cuspidal_dual_;
};

// (phi + sign * phi|iota) / 2.
inline std::vector<Rat> plus_minus_projection(const ModularSymbols& ms, const std::vector<Rat>& phi, int sign) {
    auto img = ms.involution_dual().left_apply(phi);
    std::vector<Rat> out(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] = (phi[i] + Rat(sign) * img[i]) / 2;
    return out;
}

// Hecke eigen-functional over its coefficient field K = Q[x]/h, one per Galois orbit.
struct ExactEigenform {
    long level = 0;
    int weight = 2;
    int sign = 1;
    std::shared_ptr<const NumberField> field;
    std::vector<NFElem> functional;      // values on the free basis
    std::map<long, NFElem> eigenvalues;  // prime -> eigenvalue of T_l or U_l
    long generating_prime = 0;           // operator whose eigenvalue generates K

    long degree() const { return field->degree(); }
};

// Eigenvalue of T_l on an eigen-functional, using one Manin symbol where it does not vanish.
inline NFElem eigenvalue_at(const ModularSymbols& ms, const std::vector<NFElem>& phi, long l) {
    const ManinSpace& M = ms.space();
    auto value_on = [&](const SymbolCombination& comb) {
        auto vec = M.reduce_combination(comb);
        NFElem acc(0);
        for (std::size_t b = 0; b < vec.size(); ++b)
            if (sgn(vec[b]) != 0) acc += NFElem(vec[b]) * phi[b];
        return acc;
    };
    for (std::size_t b = 0; b < phi.size(); ++b) {
        if (phi[b].is_zero()) continue;
        std::size_t sym = M.basis_symbols()[b];
        SymbolCombination comb;
        for (const auto& h : heilbronn_merel(l)) M.add_action(comb, sym, h, Int(1));
        return value_on(comb) / phi[b];
    }
    throw std::logic_error("eigenvalue_at: zero functional");
}

// Split the sign-part of the cuspidal dual into Hecke-simple pieces and return one exact
// eigenform per piece. Throws NonSemisimpleError when some block cannot be split.
inline std::vector<ExactEigenform> exact_eigenforms(const ModularSymbols& ms, int sign, long max_prime = 0) {
    if (max_prime == 0) max_prime = std::max<long>(ms.sturm(), 13);
    struct Piece {
        QMatrix rows;
        long prime = 0;  // operator with irreducible squarefree charpoly, once known
        QPoly charpoly;
    };
    std::vector<Piece> pieces;
    QMatrix C = ms.cuspidal_dual(sign);
    if (C.rows() > 0) pieces.push_back({C, 0, {}});
    const auto primes = primes_up_to(max_prime);

    for (long l : primes) {
        bool done = true;
        for (const auto& pc : pieces)
            if (pc.prime == 0) done = false;
        if (done) break;
        std::vector<Piece> next;
        for (auto& pc : pieces) {
            if (pc.prime != 0) {
                next.push_back(std::move(pc));
                continue;
            }
            QMatrix A = restrict_to(pc.rows, ms.hecke_dual(l));
            QPoly f(charpoly(A));
            auto facs = factor_over_q(f);
            if (facs.size() == 1) {
                if (facs[0].multiplicity == 1) {
                    pc.prime = l;
                    pc.charpoly = f;
                }
                next.push_back(std::move(pc));
                continue;
            }
            for (const auto& pf : facs) {
                QPoly g = QPoly::constant(1);
                for (int i = 0; i < pf.multiplicity; ++i) g = g * pf.factor;
                QMatrix coords = left_kernel(evaluate_polynomial(g.coeffs(), A));
                Piece sub{row_space(coords * pc.rows), 0, {}};
                if (pf.multiplicity == 1) {
                    sub.prime = l;
                    sub.charpoly = pf.factor;
                }
                next.push_back(std::move(sub));
            }
        }
        pieces = std::move(next);
    }

    std::vector<ExactEigenform> out;
    for (const auto& pc : pieces) {
        const QMatrix& W = pc.rows;
        if (pc.prime == 0) {
            std::string msg = "Hecke module of dimension " + std::to_string(W.rows()) +
                              " is not semisimple with multiplicity one for primes up to " + std::to_string(max_prime);
            for (long l : primes) {
                msg += "; charpoly T_" + std::to_string(l) + " = " + QPoly(charpoly(restrict_to(W, ms.hecke_dual(l)))).str();
                if (l > 7) break;
            }
            throw NonSemisimpleError(msg);
        }
        long l = pc.prime;
        const QPoly& h = pc.charpoly;
        ExactEigenform ef;
        ef.level = ms.level();
        ef.weight = ms.weight();
        ef.sign = sign;
        ef.field = std::make_shared<const NumberField>(NumberField{h});
        ef.generating_prime = l;
        const std::size_t d = W.rows();
        QMatrix A = restrict_to(W, ms.hecke_dual(l));
        NFElem theta = NFElem::generator(ef.field);
        Matrix<NFElem> shifted(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) shifted(i, j) = NFElem(A(i, j)) - (i == j ? theta : NFElem(0));
        Matrix<NFElem> ker = left_kernel(shifted);
        if (ker.rows() != 1) throw NonSemisimpleError("eigenspace over the coefficient field is not one-dimensional");
        std::vector<NFElem> beta(W.cols(), NFElem(0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < W.cols(); ++j)
                if (sgn(W(i, j)) != 0) beta[j] += ker(0, i) * NFElem(W(i, j));
        ef.functional = std::move(beta);
        out.push_back(std::move(ef));
    }
    // Deterministic order: by field degree, then by the eigenvalue list.
    for (auto& ef : out)
        for (long l : primes_up_to(std::max<long>(13, std::min<long>(max_prime, 50))))
            ef.eigenvalues[l] = eigenvalue_at(ms, ef.functional, l);
    std::sort(out.begin(), out.end(), [](const ExactEigenform& a, const ExactEigenform& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (const auto& [l, x] : a.eigenvalues) {
            const auto& y = b.eigenvalues.at(l);
            const auto& cx = x.poly().coeffs();
            const auto& cy = y.poly().coeffs();
            if (cx != cy) {
                if (cx.size() != cy.size()) return cx.size() < cy.size();
                for (std::size_t i = cx.size(); i-- > 0;)
                    if (cx[i] != cy[i]) return cx[i] < cy[i];
            }
        }
        return false;
    });
    return out;
}

// Check phi * T^t = a phi for every computed eigenvalue with a full operator matrix.
inline bool verify_eigenform(const ModularSymbols& ms, const ExactEigenform& ef, long up_to) {
    for (const auto& [l, a] : ef.eigenvalues) {
        if (l > up_to) break;
        const QMatrix& F = ms.hecke_dual(l);
        for (std::size_t j = 0; j < F.cols(); ++j) {
            NFElem acc(0);
            for (std::size_t i = 0; i < F.rows(); ++i)
                if (sgn(F(i, j)) != 0) acc += ef.functional[i] * NFElem(F(i, j));
            if (!(acc == a * ef.functional[j])) return false;
        }
    }
    return true;
}

// Coefficients a_1..a_bound from prime eigenvalues (trivial character).
template <class Scalar, class PrimeEigenvalue, class FromInt>
std::vector<Scalar> qexpansion_from_primes(long level, int weight, long bound, PrimeEigenvalue&& ap,
                                           FromInt&& from_int) {
    std::vector<Scalar> a(bound + 1, from_int(Int(0)));
    if (bound >= 1) a[1] = from_int(Int(1));
    for (long n = 2; n <= bound; ++n) {
        auto fac = factorize(n);
        auto [q, e] = fac[0];
        long qe = 1;
        for (int i = 0; i < e; ++i) qe *= q;
        if (qe != n) {
            a[n] = a[qe] * a[n / qe];
            continue;
        }
        Scalar aq = ap(q);
        if (e == 1) {
            a[n] = aq;
        } else if (level % q == 0) {
            a[n] = a[n / q] * aq;
        } else {
            Int qk = ipow(q, weight - 1);
            a[n] = aq * a[n / q] - from_int(qk) * a[n / q / q];
        }
    }
    return a;
}

}  // namespace pcong
