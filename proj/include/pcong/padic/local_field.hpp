#pragma once

#include "pcong/arith/poly.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pcong {

// p-adic valuation normalized by v(p) = 1; infinite marks zero (or zero at the working precision).
struct PValuation {
    bool infinite = false;
    Rat value = 0;

    static PValuation inf() { return {true, 0}; }
    friend bool operator==(const PValuation& a, const PValuation& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    std::string str() const { return infinite ? "inf" : value.get_str(); }
};

inline PValuation valuation(const Rat& x, long p) {
    if (sgn(x) == 0) return PValuation::inf();
    return {false, Rat(ord_p(x, p))};
}

// Totally ramified extension Z_p[pi]/E(pi) with E Eisenstein of degree e.
class LocalField {
public:
    enum class Kind { Rationals, Cyclotomic, Eisenstein };

    static std::shared_ptr<const LocalField> rationals(long p) {
        return std::shared_ptr<const LocalField>(new LocalField(p, {Int(-p), Int(1)}, Kind::Rationals, 0));
    }

    // Q_p(zeta_{p^level}) with uniformizer zeta - 1.
    static std::shared_ptr<const LocalField> cyclotomic(long p, int level) {
        if (level == 0) return rationals(p);
        // Phi_{p^level}(y) = sum_{j<p} y^{j p^{level-1}}, then substitute y = x + 1.
        long step = 1;
        for (int i = 1; i < level; ++i) step *= p;
        std::vector<Int> phi((p - 1) * step + 1, Int(0));
        for (long j = 0; j < p; ++j) phi[j * step] = 1;
        std::vector<Int> shifted;
        shifted.assign(phi.size(), Int(0));
        for (std::size_t k = phi.size(); k-- > 0;) {
            std::vector<Int> next(phi.size(), Int(0));
            for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
                next[i + 1] += shifted[i];
                next[i] += shifted[i];
            }
            next[0] += phi[k];
            shifted = std::move(next);
        }
        return std::shared_ptr<const LocalField>(new LocalField(p, shifted, Kind::Cyclotomic, level));
    }

    static std::shared_ptr<const LocalField> eisenstein(long p, const std::vector<Int>& monic_coeffs) {
        const std::size_t e = monic_coeffs.size() - 1;
        if (e < 1 || monic_coeffs.back() != 1) throw InputError("Eisenstein polynomial must be monic");
        for (std::size_t i = 0; i < e; ++i)
            if (mod_floor(monic_coeffs[i], Int(p)) != 0) throw InputError("polynomial is not Eisenstein");
        if (mod_floor(monic_coeffs[0], Int(p) * p) == 0) throw InputError("polynomial is not Eisenstein");
        return std::shared_ptr<const LocalField>(new LocalField(p, monic_coeffs, Kind::Eisenstein, 0));
    }

    long p() const { return p_; }
    int e() const { return e_; }
    Kind kind() const { return kind_; }
    int cyclotomic_level() const { return level_; }
    const std::vector<Int>& eisenstein_coeffs() const { return E_; }

    const Int& p_power(long k) const {
        if (k < 0) k = 0;
        while (static_cast<long>(pows_.size()) <= k) pows_.push_back(pows_.back() * p_);
        return pows_[k];
    }

    // Integer u0 with E(0) = p * u0.
    Int constant_unit() const { return E_[0] / p_; }

    std::string describe() const {
        switch (kind_) {
            case Kind::Rationals: return "Q_" + std::to_string(p_);
            case Kind::Cyclotomic: return "Q_" + std::to_string(p_) + "(zeta_" + std::to_string(p_) + "^" + std::to_string(level_) + ")";
            default: return "Q_" + std::to_string(p_) + "[pi]/E";
        }
    }

    friend bool operator==(const LocalField& a, const LocalField& b) { return a.p_ == b.p_ && a.E_ == b.E_; }

private:
    LocalField(long p, std::vector<Int> E, Kind kind, int level)
        : p_(p), e_(static_cast<int>(E.size()) - 1), E_(std::move(E)), kind_(kind), level_(level), pows_{Int(1)} {}
    long p_;
    int e_;
    std::vector<Int> E_;
    Kind kind_;
    int level_;
    mutable std::vector<Int> pows_;
};

using FieldPtr = std::shared_ptr<const LocalField>;

// Element of the valuation ring of a LocalField, known modulo pi^prec.
class LocalElement {
public:
    LocalElement() = default;
    LocalElement(FieldPtr field, long prec) : field_(std::move(field)), c_(field_->e(), Int(0)), prec_(prec) {}

    static LocalElement from_int(FieldPtr field, const Int& n, long prec) {
        LocalElement x(std::move(field), prec);
        x.c_[0] = n;
        x.normalize();
        return x;
    }
    static LocalElement from_rat(FieldPtr field, const Rat& q, long prec) {
        if (ord_p(Int(q.get_den()), field->p()) > 0) throw std::domain_error("from_rat: not p-integral");
        LocalElement x(field, prec);
        long digits = (prec + field->e() - 1) / field->e() + 1;
        Int mod = field->p_power(digits);
        x.c_[0] = rat_mod(q, mod);
        x.normalize();
        return x;
    }
    static LocalElement uniformizer(FieldPtr field, long prec) {
        LocalElement x(field, prec);
        if (field->e() == 1) x.c_[0] = field->p();
        else x.c_[1] = 1;
        x.normalize();
        return x;
    }
    static LocalElement from_coeffs(FieldPtr field, std::vector<Int> coeffs, long prec) {
        LocalElement x(field, prec);
        coeffs.resize(field->e(), Int(0));
        x.c_ = std::move(coeffs);
        x.normalize();
        return x;
    }

    const FieldPtr& field() const { return field_; }
    long precision() const { return prec_; }
    const std::vector<Int>& coeffs() const { return c_; }
    long p() const { return field_->p(); }
    int e() const { return field_->e(); }

    // Valuation in pi-units; kInfiniteValuation when zero at the current precision.
    long valuation() const {
        long v = kInfiniteValuation;
        for (int i = 0; i < e(); ++i)
            if (c_[i] != 0) v = std::min(v, static_cast<long>(e()) * ord_p(c_[i], p()) + i);
        return v >= prec_ ? kInfiniteValuation : v;
    }
    // Valuation capped at the precision.
    long capped_valuation() const { return std::min(valuation(), prec_); }
    bool is_zero() const { return valuation() == kInfiniteValuation; }
    bool is_unit() const { return valuation() == 0; }

    PValuation vp() const {
        long v = valuation();
        if (v == kInfiniteValuation) return PValuation::inf();
        return {false, rational(v, e())};
    }

    LocalElement with_precision(long prec) const {
        LocalElement x = *this;
        x.prec_ = prec;
        x.normalize();
        return x;
    }

    friend LocalElement operator+(const LocalElement& a, const LocalElement& b) {
        LocalElement r(a.field_, std::min(a.prec_, b.prec_));
        for (int i = 0; i < a.e(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        r.normalize();
        return r;
    }
    friend LocalElement operator-(const LocalElement& a, const LocalElement& b) {
        LocalElement r(a.field_, std::min(a.prec_, b.prec_));
        for (int i = 0; i < a.e(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        r.normalize();
        return r;
    }
    LocalElement operator-() const {
        LocalElement r(field_, prec_);
        for (int i = 0; i < e(); ++i) r.c_[i] = -c_[i];
        r.normalize();
        return r;
    }
    friend LocalElement operator*(const LocalElement& a, const LocalElement& b) {
        const int e = a.e();
        long prec = std::min(a.prec_ + b.capped_valuation(), b.prec_ + a.capped_valuation());
        LocalElement r(a.field_, prec);
        if (e == 1) {
            r.c_[0] = a.c_[0] * b.c_[0];
            r.normalize();
            return r;
        }
        std::vector<Int> prod(2 * e - 1, Int(0));
        for (int i = 0; i < e; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < e; ++j)
                if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
        }
        r.c_ = a.reduce_product(std::move(prod));
        r.normalize();
        return r;
    }
    friend LocalElement operator*(const Int& n, const LocalElement& a) {
        LocalElement r = a;
        if (n == 0) return LocalElement(a.field_, a.prec_);
        r.prec_ = a.prec_ + static_cast<long>(a.e()) * ord_p(n, a.p());
        for (auto& x : r.c_) x *= n;
        r.normalize();
        return r;
    }
    LocalElement& operator+=(const LocalElement& b) { return *this = *this + b; }
    LocalElement& operator-=(const LocalElement& b) { return *this = *this - b; }
    LocalElement& operator*=(const LocalElement& b) { return *this = *this * b; }

    LocalElement mul_pi() const {
        LocalElement r(field_, prec_ + 1);
        if (e() == 1) {
            r.c_[0] = c_[0] * p();
        } else {
            std::vector<Int> prod(e() + 1, Int(0));
            for (int i = 0; i < e(); ++i) prod[i + 1] = c_[i];
            r.c_ = reduce_product(std::move(prod));
        }
        r.normalize();
        return r;
    }

    // Exact division by p^j; requires valuation >= e*j.
    LocalElement div_p_power(long j) const {
        if (j == 0) return *this;
        if (capped_valuation() < static_cast<long>(e()) * j) throw std::domain_error("div_p_power: not divisible");
        LocalElement r(field_, prec_ - static_cast<long>(e()) * j);
        const Int& pj = field_->p_power(j);
        for (int i = 0; i < e(); ++i) r.c_[i] = c_[i] / pj;
        r.normalize();
        return r;
    }

    // Exact division by pi; requires positive valuation.
    LocalElement div_pi() const {
        if (capped_valuation() < 1) throw std::domain_error("div_pi: not divisible");
        if (e() == 1) return div_p_power(1);
        // pi^e + a_{e-1} pi^{e-1} + ... + a_1 pi = -a_0 = -p u0, so p/pi = -(pi^{e-1} + ... + a_1)/u0.
        const auto& E = field_->eisenstein_coeffs();
        long digits = (prec_ + e() - 1) / e() + 2;
        Int mod = field_->p_power(digits);
        Int u0inv = inverse_mod(field_->constant_unit(), mod);
        Int c0p = c_[0] / p();
        std::vector<Int> out(e(), Int(0));
        for (int i = 1; i < e(); ++i) out[i - 1] = c_[i];
        for (int i = 1; i <= e(); ++i) out[i - 1] -= c0p * E[i] * u0inv;
        LocalElement r(field_, prec_ - 1);
        r.c_ = std::move(out);
        r.normalize();
        return r;
    }

    LocalElement div_pi_power(long k) const {
        LocalElement r = *this;
        if (e() == 1) return r.div_p_power(k);
        for (long i = 0; i < k; ++i) r = r.div_pi();
        return r;
    }

    // Inverse of a unit by Newton iteration.
    LocalElement inverse() const {
        if (!is_unit()) throw std::domain_error("inverse: not a unit");
        Int c0inv = inverse_mod(c_[0], Int(p()));
        LocalElement y = from_int(field_, c0inv, 1);
        LocalElement two = from_int(field_, Int(2), prec_);
        long cur = 1;
        while (cur < prec_) {
            cur = std::min(2 * cur, prec_);
            y = y.with_precision(cur);
            LocalElement x = with_precision(cur);
            y = y * (two.with_precision(cur) - x * y);
        }
        return y.with_precision(prec_);
    }

    // Quotient a/b with v(a) >= v(b).
    friend LocalElement divide_exact(const LocalElement& a, const LocalElement& b) {
        long vb = b.valuation();
        if (vb == kInfiniteValuation) throw std::domain_error("divide_exact: division by zero");
        if (a.capped_valuation() < vb) throw std::domain_error("divide_exact: quotient not integral");
        LocalElement bu = b.div_pi_power(vb);
        LocalElement an = a.div_pi_power(vb);
        return an * bu.inverse();
    }

    LocalElement pow(unsigned long n) const {
        LocalElement acc = from_int(field_, Int(1), prec_);
        LocalElement base = *this;
        while (n) {
            if (n & 1) acc = acc * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return acc;
    }

    // True when a - b vanishes at the common precision.
    friend bool congruent(const LocalElement& a, const LocalElement& b) { return (a - b).is_zero(); }

    // Reduction modulo p for e = 1 elements, or digit 0 in general.
    long residue() const { return mod_floor(c_[0], Int(p())).get_si(); }

    std::string str() const {
        if (e() == 1) return c_[0].get_str();
        std::string out;
        for (int i = 0; i < e(); ++i) {
            if (i) out += ",";
            out += c_[i].get_str();
        }
        return out;
    }

private:
    std::vector<Int> reduce_product(std::vector<Int> prod) const {
        const auto& E = field_->eisenstein_coeffs();
        const int e = this->e();
        for (int j = static_cast<int>(prod.size()) - 1; j >= e; --j) {
            if (prod[j] == 0) continue;
            Int top = prod[j];
            prod[j] = 0;
            for (int i = 0; i < e; ++i)
                if (E[i] != 0) prod[j - e + i] -= top * E[i];
        }
        prod.resize(e);
        return prod;
    }

    void normalize() {
        const int e = this->e();
        for (int i = 0; i < e; ++i) {
            long k = prec_ - i;
            k = k <= 0 ? 0 : (k + e - 1) / e;
            if (k == 0) c_[i] = 0;
            else c_[i] = mod_floor(c_[i], field_->p_power(k));
        }
    }

    FieldPtr field_;
    std::vector<Int> c_;
    long prec_ = 0;
};

inline bool is_zero(const LocalElement& x) { return x.is_zero(); }

inline LocalElement evaluate(const QPoly& f, const LocalElement& x) {
    LocalElement acc = LocalElement(x.field(), x.precision());
    for (std::size_t i = f.coeffs().size(); i-- > 0;)
        acc = acc * x + LocalElement::from_rat(x.field(), f.coeffs()[i], x.precision());
    return acc;
}

// Teichmuller lift of a modulo p^digits, as the least non-negative residue.
inline Int teichmuller(long p, const Int& a, long digits) {
    Int mod = ipow(p, digits);
    Int r = mod_floor(a, Int(p));
    if (r == 0) return 0;
    if (p == 2) return mod_floor(Int(mod_floor(a, Int(4)) == 1 ? 1 : -1), mod);
    return powmod(r, ipow(p, digits - 1), mod);
}

// Newton refinement of an isolated root of f to pi-adic precision prec.
inline LocalElement refine_root(const QPoly& f, const LocalElement& root, long prec) {
    QPoly df = f.derivative();
    long vd = evaluate(df, root).capped_valuation();
    if (vd >= root.precision()) throw PrecisionError("refine_root: root is not isolated at its precision");
    long target = prec + 2 * vd;
    LocalElement r = root.with_precision(target);
    for (int it = 0; it < 200; ++it) {
        LocalElement num = evaluate(f, r);
        if (num.capped_valuation() >= target) break;
        r = (r - divide_exact(num, evaluate(df, r))).with_precision(target);
    }
    return r.with_precision(prec);
}

// Roots of f in the valuation ring of the field, to pi-adic precision prec.
// Search over residue digits, then Newton iteration once the root is isolated.
inline std::vector<LocalElement> roots_in(const QPoly& f, const FieldPtr& field, long prec) {
    QPoly df = f.derivative();
    const long p = field->p();
    struct Node { LocalElement approx; long depth; };
    std::vector<LocalElement> found;
    std::vector<Node> stack;
    // Generous working precision so that valuations of f' are visible.
    const long work = prec + 8 * field->e() + 16;
    for (long d = 0; d < p; ++d) stack.push_back({LocalElement::from_int(field, Int(d), work), 1});
    LocalElement pi = LocalElement::uniformizer(field, work);
    while (!stack.empty()) {
        Node node = stack.back();
        stack.pop_back();
        LocalElement fx = evaluate(f, node.approx);
        long vf = fx.capped_valuation();
        if (vf < node.depth) continue;
        LocalElement dfx = evaluate(df, node.approx);
        long vd = dfx.capped_valuation();
        if (vd < work / 2 && vf > 2 * vd) {
            // Isolated: Newton to full precision.
            long target = prec + vd;
            LocalElement r = node.approx.with_precision(target + vd);
            for (int it = 0; it < 200; ++it) {
                LocalElement num = evaluate(f, r);
                if (num.capped_valuation() >= target + vd) break;
                LocalElement den = evaluate(df, r);
                LocalElement step = divide_exact(num, den);
                r = (r - step).with_precision(target + vd);
            }
            found.push_back(r.with_precision(prec));
            continue;
        }
        if (node.depth >= work - 1) {
            if (vf >= work - 1) found.push_back(node.approx.with_precision(prec));
            continue;
        }
        LocalElement step = pi.pow(node.depth);
        for (long d = 0; d < p; ++d)
            stack.push_back({node.approx + Int(d) * step, node.depth + 1});
    }
    std::vector<LocalElement> distinct;
    for (auto& r : found) {
        bool dup = false;
        for (auto& s : distinct)
            if (congruent(r, s)) dup = true;
        if (!dup) distinct.push_back(r);
    }
    std::sort(distinct.begin(), distinct.end(), [](const LocalElement& a, const LocalElement& b) {
        for (int i = 0; i < a.e(); ++i)
            if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
        return false;
    });
    return distinct;
}

}  // namespace pcong
