#pragma once

// Independent reference computations for the test suites. None of these call into the library.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline long phi(long n) {
    long r = n;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            while (n % q == 0) n /= q;
            r -= r / q;
        }
    if (n > 1) r -= r / n;
    return r;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// dim S_k(Gamma_1(N)) for N >= 5 from the genus of X_1(N): no elliptic points, every cusp regular.
inline long dim_cusp_forms_gamma1(long N, long k) {
    long mu2 = N * N;  // twice the index in PSL_2(Z), kept integral
    long n = N;
    for (long q = 2; q <= n; ++q)
        if (n % q == 0) {
            while (n % q == 0) n /= q;
            mu2 = mu2 / (q * q) * (q * q - 1);
        }
    long cusps2 = 0;  // twice the number of cusps
    for (long d = 1; d <= N; ++d)
        if (N % d == 0) cusps2 += phi(d) * phi(N / d);
    // g = 1 + mu/12 - cusps/2, with mu = mu2/2 and cusps = cusps2/2.
    long twelve_g = 12 + mu2 / 2 - 3 * cusps2;
    long g = twelve_g / 12;
    if (k == 2) return g;
    return (k - 1) * (g - 1) + (k - 2) * cusps2 / 4;
}

// #E(F_l) for y^2 + y = x^3 - x^2 - 10x - 20, counting the point at infinity.
inline long points_11a(long l) {
    long count = 1;
    for (long x = 0; x < l; ++x)
        for (long y = 0; y < l; ++y) {
            long lhs = (y * y + y) % l;
            long rhs = ((x * x % l * x - x * x - 10 * x - 20) % l + 2 * l * l) % l;
            if (lhs == rhs) ++count;
        }
    return count;
}

inline long a_11a(long l) { return l + 1 - points_11a(l); }

inline long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<long>(static_cast<__int128>(r) * b % m);
        b = static_cast<long>(static_cast<__int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

// The x in [0, p^m) with x = a mod p and x^(p-1) = 1 mod p^m, by search.
inline long teichmuller_brute(long p, long a, long m) {
    long pm = 1;
    for (long i = 0; i < m; ++i) pm *= p;
    for (long x = ((a % p) + p) % p; x < pm; x += p)
        if (powmod(x, p - 1, pm) == 1) return x;
    return -1;
}

// Primes q in (lower, upper] with q = r mod p and q = 1 mod N^2, by sieve.
inline std::vector<long> sieve_X(long p, long r, long N, long lower, long upper) {
    std::vector<long> out;
    for (long q = lower + 1; q <= upper; ++q)
        if (is_prime(q) && ((q - r) % p + p) % p == 0 && (q - 1) % (N * N) == 0) out.push_back(q);
    return out;
}

}  // namespace oracle
