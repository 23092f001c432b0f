#pragma once

#include "pcong/arith/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pcong {

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    QPoly(std::initializer_list<long> coeffs) {
        for (long x : coeffs) c_.emplace_back(x);
        trim();
    }
    static QPoly constant(const Rat& a) { return QPoly(std::vector<Rat>{a}); }
    static QPoly monomial(const Rat& a, std::size_t deg) {
        std::vector<Rat> c(deg + 1, Rat(0));
        c[deg] = a;
        return QPoly(std::move(c));
    }
    static QPoly x() { return monomial(1, 1); }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    QPoly monic() const {
        if (c_.empty()) return *this;
        std::vector<Rat> out = c_;
        Rat lc = c_.back();
        for (auto& x : out) x /= lc;
        return QPoly(std::move(out));
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
        return QPoly(std::move(out));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
        return QPoly(std::move(out));
    }
    QPoly operator-() const { return QPoly() - *this; }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return QPoly(std::move(out));
    }
    friend QPoly operator*(const Rat& s, const QPoly& a) {
        std::vector<Rat> out = a.c_;
        for (auto& x : out) x *= s;
        return QPoly(std::move(out));
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    // Quotient and remainder.
    friend std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rat> r = a.c_;
        long db = b.degree();
        if (a.degree() < db) return {QPoly(), a};
        std::vector<Rat> q(a.degree() - db + 1, Rat(0));
        Rat inv = 1 / b.leading();
        for (long k = a.degree() - db; k >= 0; --k) {
            Rat t = r[k + db] * inv;
            q[k] = t;
            if (sgn(t) == 0) continue;
            for (long j = 0; j <= db; ++j) r[k + j] -= t * b.c_[j];
        }
        return {QPoly(std::move(q)), QPoly(std::move(r))};
    }
    friend QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }
    friend QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

    QPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rat> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<long>(i);
        return QPoly(std::move(out));
    }

    Rat operator()(const Rat& x) const {
        Rat acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    std::string str(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (sgn(c_[i]) == 0) continue;
            Rat a = c_[i];
            if (!out.empty()) out += sgn(a) < 0 ? " - " : " + ";
            else if (sgn(a) < 0) out += "-";
            Rat mag = abs(a);
            bool unit = mag == 1 && i > 0;
            if (!unit) out += mag.get_str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<QPoly, QPoly, QPoly> poly_xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b, s0 = QPoly::constant(1), s1, t0, t1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        QPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Rat lc = r0.leading();
    Rat inv = 1 / lc;
    return {inv * r0, inv * s0, inv * t0};
}

inline QPoly poly_pow_mod(QPoly base, unsigned long e, const QPoly& mod) {
    QPoly acc = QPoly::constant(1);
    base = base % mod;
    while (e) {
        if (e & 1) acc = acc * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return acc;
}

// Integer coefficients of c * f for the least positive c making them coprime integers.
inline std::vector<Int> primitive_integer_coeffs(const QPoly& f) {
    Int den = 1;
    for (const auto& a : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
    std::vector<Int> out;
    Int content = 0;
    for (const auto& a : f.coeffs()) {
        Rat scaled = a * Rat(den);
        out.push_back(Int(scaled.get_num()));
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
    }
    if (content != 0)
        for (auto& x : out) x /= content;
    if (!out.empty() && out.back() < 0)
        for (auto& x : out) x = -x;
    return out;
}

inline QPoly from_integer_coeffs(const std::vector<Int>& c) {
    std::vector<Rat> out;
    for (const auto& x : c) out.emplace_back(x);
    return QPoly(std::move(out));
}

}  // namespace pcong
