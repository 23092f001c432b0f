#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcong {

using Int = mpz_class;
using Rat = mpq_class;

// n/d in lowest terms; mpq_class(n, d) alone does not reduce.
inline Rat rational(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max() / 4;

inline Int ipow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int ipow(long base, unsigned long exp) { return ipow(Int(base), exp); }

// Largest k with p^k | n, or kInfiniteValuation for n = 0.
inline long ord_p(const Int& n, long p) {
    if (n == 0) return kInfiniteValuation;
    Int pp(p);
    return static_cast<long>(mpz_remove(Int().get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

inline long ord_p(const Rat& q, long p) {
    if (q == 0) return kInfiniteValuation;
    return ord_p(Int(q.get_num()), p) - ord_p(Int(q.get_den()), p);
}

inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// Symmetric residue in (-m/2, m/2].
inline Int mod_symmetric(const Int& a, const Int& m) {
    Int r = mod_floor(a, m);
    if (2 * r > m) r -= m;
    return r;
}

inline Int inverse_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("inverse_mod: not invertible");
    return r;
}

inline long inverse_mod(long a, long m) {
    return inverse_mod(Int(a), Int(m)).get_si();
}

inline long powmod(long base, long exp, long m) {
    __int128 result = 1 % m;
    __int128 b = mod_floor(base, m);
    while (exp > 0) {
        if (exp & 1) result = result * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<long>(result);
}

inline Int powmod(const Int& base, const Int& exp, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long gcd(long a, long b) { return std::gcd(a, b); }

// Rational a/b reduced modulo m (b must be invertible mod m).
inline Int rat_mod(const Rat& q, const Int& m) {
    Int den(q.get_den());
    return mod_floor(Int(q.get_num()) * inverse_mod(den, m), m);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    for (long n = 2; n <= bound; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

// (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> out;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
    return r;
}

inline long ilcm(long a, long b) { return a / std::gcd(a, b) * b; }

// Multiplicative order of a modulo m (gcd(a, m) = 1).
inline long multiplicative_order(long a, long m) {
    long phi = euler_phi(m);
    long order = phi;
    for (auto [q, e] : factorize(phi)) {
        (void)e;
        while (order % q == 0 && powmod(a, order / q, m) == 1) order /= q;
    }
    return order;
}

inline std::string to_string(const Int& n) { return n.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace pcong
