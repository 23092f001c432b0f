#pragma once

#include "pcong/padic/local_field.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace pcong {

// Integer coefficients of the n-th cyclotomic polynomial, low to high.
inline std::vector<Int> cyclotomic_polynomial(long n) {
    static std::map<long, std::vector<Int>> cache;
    static std::mutex guard;
    {
        std::lock_guard lock(guard);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    // x^n - 1 divided by Phi_d for proper divisors d.
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (long d : divisors(n)) {
        if (d == n) continue;
        std::vector<Int> den = cyclotomic_polynomial(d);
        std::vector<Int> quo(num.size() - den.size() + 1, Int(0));
        for (std::size_t k = quo.size(); k-- > 0;) {
            Int t = num[k + den.size() - 1];
            quo[k] = t;
            if (t == 0) continue;
            for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= t * den[j];
        }
        num = std::move(quo);
    }
    std::lock_guard lock(guard);
    cache[n] = num;
    return num;
}

// Element of Z[zeta_n] in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
class CyclotomicElement {
public:
    explicit CyclotomicElement(long n = 1) : n_(n), c_(euler_phi(n), Int(0)) {}
    CyclotomicElement(long n, std::vector<Int> coeffs) : n_(n), c_(std::move(coeffs)) {
        reduce_from(c_);
    }

    static CyclotomicElement integer(long n, const Int& a) {
        CyclotomicElement x(n);
        x.c_[0] = a;
        return x;
    }
    // zeta_n^k.
    static CyclotomicElement root_power(long n, long k) {
        std::vector<Int> c(n, Int(0));
        c[mod_floor(k, n)] = 1;
        return CyclotomicElement(n, std::move(c));
    }

    long conductor() const { return n_; }
    const std::vector<Int>& coeffs() const { return c_; }

    friend CyclotomicElement operator+(CyclotomicElement a, const CyclotomicElement& b) {
        check(a, b);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }
    friend CyclotomicElement operator-(CyclotomicElement a, const CyclotomicElement& b) {
        check(a, b);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }
    friend CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b) {
        check(a, b);
        std::vector<Int> prod(2 * a.c_.size(), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
        }
        return CyclotomicElement(a.n_, std::move(prod));
    }
    friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

    // Image of zeta_n under zeta_n -> zeta_n^k (k coprime to n).
    CyclotomicElement galois(long k) const {
        std::vector<Int> out(n_, Int(0));
        for (std::size_t i = 0; i < c_.size(); ++i) out[mod_floor(static_cast<long>(i) * k, n_)] += c_[i];
        return CyclotomicElement(n_, std::move(out));
    }

    // Same element viewed in Z[zeta_m] for a multiple m of n.
    CyclotomicElement lift_to(long m) const {
        if (m % n_) throw std::invalid_argument("lift_to: conductor must divide the target");
        std::vector<Int> out(m, Int(0));
        for (std::size_t i = 0; i < c_.size(); ++i) out[i * (m / n_)] += c_[i];
        return CyclotomicElement(m, std::move(out));
    }

    bool is_integer() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

private:
    static void check(const CyclotomicElement& a, const CyclotomicElement& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("CyclotomicElement: conductor mismatch");
    }
    // Reduce an arbitrary-length coefficient list modulo Phi_n into c_.
    void reduce_from(std::vector<Int> v) {
        const auto phi = cyclotomic_polynomial(n_);
        const std::size_t d = phi.size() - 1;
        for (std::size_t k = v.size(); k-- > d;) {
            if (v[k] == 0) continue;
            Int t = v[k];
            for (std::size_t j = 0; j <= d; ++j) v[k - d + j] -= t * phi[j];
        }
        v.resize(d, Int(0));
        c_ = std::move(v);
    }

    long n_;
    std::vector<Int> c_;
};

namespace detail {

// Smallest residue of exact multiplicative order n modulo p.
inline long smallest_root_of_unity_seed(long n, long p) {
    for (long a = 1; a < p; ++a)
        if (multiplicative_order(a, p) == n) return a;
    throw InputError("no root of unity of order " + std::to_string(n) + " modulo " + std::to_string(p));
}

}  // namespace detail

// zeta_n^k inside the field: the prime-to-p part is the Teichmuller lift of the smallest seed,
// the p-power part is (1 + pi)^{p^(level - s)} in a cyclotomic field.
inline LocalElement embed_root_of_unity(long n, long k, const FieldPtr& field, long prec) {
    const long p = field->p();
    long s = 0, np = n;
    while (np % p == 0) { np /= p; ++s; }
    if ((p - 1) % np != 0)
        throw InputError("no root of unity of order " + std::to_string(np) + " in " + field->describe());
    if (s > 0 && (field->kind() != LocalField::Kind::Cyclotomic || field->cyclotomic_level() < s))
        throw InputError("no " + std::to_string(p) + "-power root of unity of order p^" + std::to_string(s) + " in " + field->describe());
    long ps = n / np;
    // 1 = A ps + B np, zeta_n = zeta_np^A zeta_ps^B.
    long A = np == 1 ? 0 : inverse_mod(ps % np, np);
    long B = ps == 1 ? 0 : inverse_mod(np % ps, ps);
    long digits = prec / field->e() + 2;
    LocalElement result = LocalElement::from_int(field, Int(1), prec);
    if (np > 1) {
        Int seed = detail::smallest_root_of_unity_seed(np, p);
        Int w = teichmuller(p, seed, digits);
        LocalElement zeta = LocalElement::from_int(field, w, prec);
        result = result * zeta.pow(mod_floor(A * k, np));
    }
    if (ps > 1) {
        long up = 1;
        for (int i = s; i < field->cyclotomic_level(); ++i) up *= p;
        LocalElement one_plus_pi = LocalElement::from_int(field, Int(1), prec) + LocalElement::uniformizer(field, prec);
        LocalElement zeta = one_plus_pi.pow(up);
        result = result * zeta.pow(mod_floor(B * k, ps));
    }
    return result;
}

inline LocalElement embed_cyclotomic(const CyclotomicElement& x, const FieldPtr& field, long prec) {
    LocalElement zeta = embed_root_of_unity(x.conductor(), 1, field, prec);
    LocalElement acc(field, prec);
    for (std::size_t i = x.coeffs().size(); i-- > 0;)
        acc = acc * zeta + LocalElement::from_int(field, x.coeffs()[i], prec);
    return acc;
}

// x read in a field containing its own: Q_p into anything, Q_p(zeta_{p^t}) into Q_p(zeta_{p^s}) for t <= s.
inline LocalElement change_field(const LocalElement& x, const FieldPtr& target) {
    const FieldPtr& source = x.field();
    if (*source == *target) return x;
    const long ratio = target->e() / source->e();
    const long prec = x.precision() * ratio;
    if (source->e() == 1) return LocalElement::from_int(target, x.coeffs()[0], prec);
    if (source->kind() != LocalField::Kind::Cyclotomic || target->kind() != LocalField::Kind::Cyclotomic ||
        source->cyclotomic_level() > target->cyclotomic_level() || source->p() != target->p())
        throw InputError("no embedding of " + source->describe() + " into " + target->describe());
    // zeta_{p^t} = zeta_{p^s}^{p^(s-t)}, so pi_t = (1 + pi_s)^{p^(s-t)} - 1.
    LocalElement one = LocalElement::from_int(target, Int(1), prec);
    LocalElement pi_img = (one + LocalElement::uniformizer(target, prec)).pow(ratio) - one;
    LocalElement acc(target, prec);
    for (std::size_t i = x.coeffs().size(); i-- > 0;) acc = acc * pi_img + LocalElement::from_int(target, x.coeffs()[i], prec);
    return acc;
}

// Element of O_L[y]/Phi_m(y) (m prime to p): an unramified etale algebra over O_L.
// With m = 1 this is O_L itself. Valuation is the content, which is the minimum over the factors.
class EtaleElement {
public:
    EtaleElement() = default;
    explicit EtaleElement(std::vector<LocalElement> coeffs) : c_(std::move(coeffs)) {}

    const std::vector<LocalElement>& coeffs() const { return c_; }
    std::size_t degree() const { return c_.size(); }

    long valuation() const {
        long v = kInfiniteValuation;
        for (const auto& x : c_) v = std::min(v, x.valuation());
        return v;
    }
    long precision() const {
        long prec = kInfiniteValuation;
        for (const auto& x : c_) prec = std::min(prec, x.precision());
        return prec;
    }
    bool is_zero() const { return valuation() == kInfiniteValuation; }

    friend EtaleElement operator+(const EtaleElement& a, const EtaleElement& b) {
        std::vector<LocalElement> out;
        for (std::size_t i = 0; i < a.c_.size(); ++i) out.push_back(a.c_[i] + b.c_[i]);
        return EtaleElement(std::move(out));
    }
    friend EtaleElement operator-(const EtaleElement& a, const EtaleElement& b) {
        std::vector<LocalElement> out;
        for (std::size_t i = 0; i < a.c_.size(); ++i) out.push_back(a.c_[i] - b.c_[i]);
        return EtaleElement(std::move(out));
    }
    friend EtaleElement operator*(const LocalElement& s, const EtaleElement& a) {
        std::vector<LocalElement> out;
        for (const auto& x : a.c_) out.push_back(s * x);
        return EtaleElement(std::move(out));
    }
    EtaleElement& operator+=(const EtaleElement& b) { return *this = *this + b; }
    EtaleElement& operator-=(const EtaleElement& b) { return *this = *this - b; }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ";";
            out += c_[i].str();
        }
        return out;
    }

private:
    std::vector<LocalElement> c_;
};

// Ring receiving the values of characters of order dividing `order`: the p-power part and the
// part dividing p - 1 embed into L, any remaining prime-to-p part is carried by the etale variable.
class ValueRing {
public:
    ValueRing(FieldPtr field, long order, long prec) : field_(std::move(field)), order_(order), prec_(prec) {
        const long p = field_->p();
        long ps = 1, np = order;
        while (np % p == 0) { np /= p; ps *= p; }
        long split = std::gcd(np, p - 1);
        etale_order_ = (split == np) ? 1 : np;
        inner_order_ = (split == np) ? order : ps;
        phi_ = cyclotomic_polynomial(etale_order_);
        if (etale_order_ > 1 && etale_order_ * inner_order_ != order)
            throw std::logic_error("ValueRing: inconsistent order split");
        inner_root_ = embed_root_of_unity(inner_order_, 1, field_, prec_);
    }

    const FieldPtr& field() const { return field_; }
    long order() const { return order_; }
    long precision() const { return prec_; }
    std::size_t degree() const { return phi_.size() - 1; }

    EtaleElement zero() const { return EtaleElement(std::vector<LocalElement>(degree(), LocalElement(field_, prec_))); }
    EtaleElement scalar(const LocalElement& x) const {
        EtaleElement z = zero();
        std::vector<LocalElement> c = z.coeffs();
        c[0] = x;
        return EtaleElement(std::move(c));
    }

    // zeta_order^k.
    EtaleElement root_power(long k) const {
        k = mod_floor(k, order_);
        if (etale_order_ == 1) return scalar(inner_root_.pow(k));
        // 1 = A inner + B etale with zeta = zeta_etale^A zeta_inner^B.
        long A = inverse_mod(inner_order_ % etale_order_, etale_order_);
        long B = inner_order_ == 1 ? 0 : inverse_mod(etale_order_ % inner_order_, inner_order_);
        LocalElement inner = inner_order_ == 1 ? LocalElement::from_int(field_, Int(1), prec_)
                                               : inner_root_.pow(mod_floor(B * k, inner_order_));
        std::vector<LocalElement> c(degree(), LocalElement(field_, prec_));
        std::vector<Int> yk = y_power(mod_floor(A * k, etale_order_));
        for (std::size_t i = 0; i < degree(); ++i) c[i] = yk[i] * inner;
        return EtaleElement(std::move(c));
    }

    // sum_j sums[j] zeta_order^j for a list indexed by j in [0, order).
    EtaleElement from_root_sums(const std::vector<LocalElement>& sums) const {
        if (etale_order_ == 1) {
            LocalElement acc(field_, prec_);
            LocalElement z = LocalElement::from_int(field_, Int(1), prec_);
            for (const auto& s : sums) {
                if (!s.is_zero()) acc += s * z;
                z = z * inner_root_;
            }
            return scalar(acc);
        }
        long A = inverse_mod(inner_order_ % etale_order_, etale_order_);
        long B = inner_order_ == 1 ? 0 : inverse_mod(etale_order_ % inner_order_, inner_order_);
        std::vector<LocalElement> inner_pow;
        LocalElement z = LocalElement::from_int(field_, Int(1), prec_);
        for (long t = 0; t < inner_order_; ++t) {
            inner_pow.push_back(z);
            z = z * inner_root_;
        }
        std::vector<LocalElement> poly(etale_order_, LocalElement(field_, prec_));
        for (std::size_t j = 0; j < sums.size(); ++j) {
            if (sums[j].is_zero()) continue;
            long jj = static_cast<long>(j);
            poly[mod_floor(A * jj, etale_order_)] += sums[j] * inner_pow[mod_floor(B * jj, inner_order_)];
        }
        const std::size_t d = degree();
        for (std::size_t k = poly.size(); k-- > d;)
            for (std::size_t i = 0; i < d; ++i)
                if (phi_[i] != 0) poly[k - d + i] -= phi_[i] * poly[k];
        poly.resize(d);
        return EtaleElement(std::move(poly));
    }

    EtaleElement multiply(const EtaleElement& a, const EtaleElement& b) const {
        const std::size_t d = degree();
        if (d == 1) return EtaleElement({a.coeffs()[0] * b.coeffs()[0]});
        std::vector<LocalElement> prod(2 * d - 1, LocalElement(field_, std::min(a.precision(), b.precision())));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coeffs()[i] * b.coeffs()[j];
        for (std::size_t k = prod.size(); k-- > d;)
            for (std::size_t j = 0; j < d; ++j) prod[k - d + j] -= phi_[j] * prod[k];
        prod.resize(d);
        return EtaleElement(std::move(prod));
    }

private:
    std::vector<Int> y_power(long k) const {
        std::vector<Int> v(k + 1, Int(0));
        v[k] = 1;
        const std::size_t d = degree();
        for (std::size_t j = v.size(); j-- > d;) {
            if (v[j] == 0) continue;
            Int t = v[j];
            for (std::size_t i = 0; i <= d; ++i) v[j - d + i] -= t * phi_[i];
        }
        v.resize(d, Int(0));
        return v;
    }

    FieldPtr field_;
    long order_;
    long prec_;
    long etale_order_ = 1;
    long inner_order_ = 1;
    std::vector<Int> phi_;
    LocalElement inner_root_;
};

}  // namespace pcong
