#pragma once

#include "pcong/arith/integer.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcong {

struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;
    long det() const { return a * d - b * c; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

// Integers (a, b) with a d - b c = 1 for coprime (c, d).
inline std::pair<long, long> complete_row(long c, long d) {
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), Int(d).get_mpz_t(), Int(c).get_mpz_t());
    // s d + t c = g = +-1
    long sign = g < 0 ? -1 : 1;
    return {sign * s.get_si(), -sign * t.get_si()};
}

// A matrix in SL2(Z) whose bottom row reduces to (c, d) mod N; needs gcd(c, d, N) = 1.
inline Mat2 lift_to_sl2z(long c, long d, long N) {
    c = mod_floor(c, N);
    d = mod_floor(d, N);
    if (N == 1) return {1, 0, 0, 1};
    if (c == 0) c = N;
    for (long t = 0;; ++t) {
        long dd = d + t * N;
        if (std::gcd(c, dd) == 1) {
            auto [a, b] = complete_row(c, dd);
            return {a, b, c, dd};
        }
        if (t > 4 * N + 100) throw std::logic_error("lift_to_sl2z: no lift found");
    }
}

enum class GroupType { Gamma0, Gamma1 };

inline std::string to_string(GroupType g) { return g == GroupType::Gamma0 ? "Gamma0" : "Gamma1"; }

// Right cosets of Gamma in SL2(Z), labelled by bottom rows: pairs (c, d) mod N with gcd(c, d, N) = 1,
// taken up to units for Gamma0 (the projective line over Z/N).
class Cosets {
public:
    Cosets(GroupType type, long N) : type_(type), N_(N), index_(N * N, -1) {
        if (N < 1) throw InputError("level must be positive");
        for (long c = 0; c < N; ++c)
            for (long d = 0; d < N; ++d) {
                if (std::gcd(std::gcd(c, d), N) != 1) continue;
                auto key = canonical(c, d);
                if (key[0] == c && key[1] == d) {
                    index_[c * N + d] = static_cast<long>(reps_.size());
                    reps_.push_back({c, d});
                }
            }
        for (long c = 0; c < N; ++c)
            for (long d = 0; d < N; ++d) {
                if (std::gcd(std::gcd(c, d), N) != 1) continue;
                auto key = canonical(c, d);
                index_[c * N + d] = index_[key[0] * N + key[1]];
            }
    }

    GroupType type() const { return type_; }
    long level() const { return N_; }
    std::size_t size() const { return reps_.size(); }
    const std::array<long, 2>& representative(std::size_t i) const { return reps_[i]; }

    std::optional<std::size_t> index(long c, long d) const {
        long i = index_[mod_floor(c, N_) * N_ + mod_floor(d, N_)];
        if (i < 0) return std::nullopt;
        return static_cast<std::size_t>(i);
    }

    // Invariant of the orbit of a primitive column vector (a, c) under Gamma.
    std::array<long, 2> vector_class(long a, long c) const {
        long cm = mod_floor(c, N_);
        long g = std::gcd(cm, N_);
        if (type_ == GroupType::Gamma1) return {cm, mod_floor(a, g)};
        std::array<long, 2> best{N_, N_};
        for (long w = 1; w < N_ || (N_ == 1 && w == 1); ++w) {
            if (std::gcd(w, N_) != 1) continue;
            long winv = inverse_mod(w, N_);
            std::array<long, 2> cand{mod_floor(w * cm, N_), mod_floor(winv * a, g)};
            if (cand < best) best = cand;
            if (N_ == 1) break;
        }
        return best;
    }

private:
    std::array<long, 2> canonical(long c, long d) const {
        if (type_ == GroupType::Gamma1) return {c, d};
        std::array<long, 2> best{N_, N_};
        for (long u = 1; u <= N_; ++u) {
            if (std::gcd(u, N_) != 1) continue;
            std::array<long, 2> cand{mod_floor(u * c, N_), mod_floor(u * d, N_)};
            if (cand < best) best = cand;
            if (N_ == 1) break;
        }
        return best;
    }

    GroupType type_;
    long N_;
    std::vector<long> index_;
    std::vector<std::array<long, 2>> reps_;
};

}  // namespace pcong
