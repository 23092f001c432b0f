#pragma once

#include "pcong/padic/cyclotomic.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace pcong {

// Element of O_K[[T]] known modulo (pi^m, T^n). With rescaling N > 0 the variable is p^{-N} T
// and coefficients refer to that rescaled variable.
class PadicPowerSeries {
public:
    PadicPowerSeries() = default;
    PadicPowerSeries(FieldPtr field, std::vector<LocalElement> coeffs, long rescaling = 0)
        : field_(std::move(field)), c_(std::move(coeffs)), rescaling_(rescaling) {
        for (auto& x : c_)
            if (!(*x.field() == *field_)) throw std::logic_error("PadicPowerSeries: coefficient field mismatch");
    }

    static PadicPowerSeries zero(FieldPtr field, long p_precision, long t_precision) {
        return PadicPowerSeries(field, std::vector<LocalElement>(t_precision, LocalElement(field, p_precision)));
    }
    static PadicPowerSeries from_ints(const FieldPtr& field, const std::vector<Int>& coeffs, long p_precision, long t_precision) {
        std::vector<LocalElement> c;
        for (long i = 0; i < t_precision; ++i)
            c.push_back(LocalElement::from_int(field, i < static_cast<long>(coeffs.size()) ? coeffs[i] : Int(0), p_precision));
        return PadicPowerSeries(field, std::move(c));
    }
    // (1 + T)^s truncated.
    static PadicPowerSeries binomial(const FieldPtr& field, long s, long p_precision, long t_precision) {
        std::vector<Int> c(t_precision, Int(0));
        for (long k = 0; k < t_precision && k <= s; ++k) mpz_bin_uiui(c[k].get_mpz_t(), s, k);
        return from_ints(field, c, p_precision, t_precision);
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<LocalElement>& coeffs() const { return c_; }
    const LocalElement& coeff(std::size_t i) const { return c_.at(i); }
    long t_precision() const { return static_cast<long>(c_.size()); }
    long p_precision() const {
        long m = kInfiniteValuation;
        for (const auto& x : c_) m = std::min(m, x.precision());
        return m;
    }
    long rescaling() const { return rescaling_; }

    // min_i v(c_i), or kInfiniteValuation when zero at precision.
    long mu() const {
        long v = kInfiniteValuation;
        for (const auto& x : c_) v = std::min(v, x.valuation());
        return v;
    }
    // First index attaining mu.
    std::optional<long> lambda() const {
        long m = mu();
        if (m == kInfiniteValuation) return std::nullopt;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i].valuation() == m) return static_cast<long>(i);
        return std::nullopt;
    }
    // ord_T: index of the first coefficient nonzero at precision.
    std::optional<long> order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<long>(i);
        return std::nullopt;
    }
    bool is_zero() const { return !order(); }

    PadicPowerSeries truncated(long t_precision) const {
        std::vector<LocalElement> c(c_.begin(), c_.begin() + std::min<long>(t_precision, this->t_precision()));
        return PadicPowerSeries(field_, std::move(c), rescaling_);
    }
    PadicPowerSeries with_p_precision(long prec) const {
        PadicPowerSeries out = *this;
        for (auto& x : out.c_) x = x.with_precision(std::min(prec, x.precision()));
        return out;
    }

    friend PadicPowerSeries operator+(const PadicPowerSeries& a, const PadicPowerSeries& b) {
        check(a, b);
        long n = std::min(a.t_precision(), b.t_precision());
        std::vector<LocalElement> c;
        for (long i = 0; i < n; ++i) c.push_back(a.c_[i] + b.c_[i]);
        return PadicPowerSeries(a.field_, std::move(c), a.rescaling_);
    }
    friend PadicPowerSeries operator-(const PadicPowerSeries& a, const PadicPowerSeries& b) {
        check(a, b);
        long n = std::min(a.t_precision(), b.t_precision());
        std::vector<LocalElement> c;
        for (long i = 0; i < n; ++i) c.push_back(a.c_[i] - b.c_[i]);
        return PadicPowerSeries(a.field_, std::move(c), a.rescaling_);
    }
    // Coefficientwise precision follows from the operands; zero coefficients still carry theirs.
    friend PadicPowerSeries operator*(const PadicPowerSeries& a, const PadicPowerSeries& b) {
        check(a, b);
        long n = std::min(a.t_precision(), b.t_precision());
        std::vector<LocalElement> c;
        c.reserve(n);
        for (long k = 0; k < n; ++k) {
            LocalElement acc = a.c_[0] * b.c_[k];
            for (long i = 1; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
            c.push_back(std::move(acc));
        }
        return PadicPowerSeries(a.field_, std::move(c), a.rescaling_);
    }
    friend PadicPowerSeries operator*(const LocalElement& s, const PadicPowerSeries& a) {
        PadicPowerSeries out = a;
        for (auto& x : out.c_) x = s * x;
        return out;
    }
    friend bool congruent(const PadicPowerSeries& a, const PadicPowerSeries& b) { return (a - b).is_zero(); }

    PadicPowerSeries derivative() const {
        std::vector<LocalElement> c;
        for (long i = 1; i < t_precision(); ++i) c.push_back(Int(i) * c_[i]);
        return PadicPowerSeries(field_, std::move(c), rescaling_);
    }

    // Multiplicative inverse; needs a unit constant term.
    PadicPowerSeries inverse() const {
        if (c_.empty() || !c_[0].is_unit()) throw InputError("series inverse: constant term is not a unit");
        const long n = t_precision();
        std::vector<LocalElement> inv;
        inv.reserve(n);
        LocalElement c0inv = c_[0].inverse();
        inv.push_back(c0inv);
        for (long k = 1; k < n; ++k) {
            LocalElement acc = c_[k] * inv[0];
            for (long j = 1; j < k; ++j) acc += c_[j] * inv[k - j];
            inv.push_back(-(c0inv * acc));
        }
        return PadicPowerSeries(field_, std::move(inv), rescaling_);
    }

    // Value at x with v(x) > 0 (or any x for a polynomial known exactly); the tail beyond the
    // T-truncation caps the precision at t_precision * v(x).
    LocalElement evaluate(const LocalElement& x) const {
        const FieldPtr& L = x.field();
        long vx = x.valuation();
        long prec = std::min(x.precision(), p_precision() * (L->e() / field_->e()));
        if (vx != kInfiniteValuation && vx > 0) prec = std::min(prec, t_precision() * vx);
        LocalElement acc(L, prec);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + change_field(c_[i], L);
        return acc.with_precision(std::min(acc.precision(), prec));
    }

    // Value at any x when the series is known to be a polynomial of degree below its T-truncation.
    LocalElement evaluate_polynomial(const LocalElement& x) const {
        const FieldPtr& L = x.field();
        LocalElement acc(L, std::min(x.precision(), p_precision() * (L->e() / field_->e())));
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + change_field(c_[i], L);
        return acc;
    }

    // Canonical text form: one line per coefficient, `index valuation representative`.
    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            long v = c_[i].valuation();
            os << i << ' ' << (v == kInfiniteValuation ? std::string("inf") : std::to_string(v)) << ' ' << c_[i].str() << '\n';
        }
        return os.str();
    }

    // Inverse of str(); every coefficient gets precision p_precision.
    static PadicPowerSeries parse(const std::string& text, const FieldPtr& field, long p_precision) {
        std::istringstream is(text);
        std::string line;
        std::vector<LocalElement> c;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            long idx;
            std::string val, rep;
            if (!(ls >> idx >> val >> rep) || idx != static_cast<long>(c.size()))
                throw InputError("malformed series line: " + line);
            std::vector<Int> digits;
            std::stringstream rs(rep);
            std::string part;
            while (std::getline(rs, part, ',')) digits.emplace_back(part);
            if (static_cast<int>(digits.size()) != field->e()) throw InputError("series coefficient has wrong length: " + line);
            c.push_back(LocalElement::from_coeffs(field, digits, p_precision));
        }
        return PadicPowerSeries(field, std::move(c));
    }

private:
    static void check(const PadicPowerSeries& a, const PadicPowerSeries& b) {
        if (!(*a.field_ == *b.field_)) throw InputError("series over different fields");
        if (a.rescaling_ != b.rescaling_) throw InputError("series with different disk rescalings");
    }

    FieldPtr field_;
    std::vector<LocalElement> c_;
    long rescaling_ = 0;
};

// f = pi^mu u P with P distinguished of degree lambda and u a unit series.
struct WeierstrassData {
    long mu = 0;
    std::vector<LocalElement> distinguished;  // monic, coefficients low to high
    PadicPowerSeries unit;

    long degree() const { return static_cast<long>(distinguished.size()) - 1; }
    // Coefficients above the degree are exact zeros; they get the best precision in sight.
    long exact_precision() const {
        long m = 0;
        for (const auto& x : distinguished) m = std::max(m, x.precision());
        for (const auto& x : unit.coeffs()) m = std::max(m, x.precision());
        return m + mu;
    }
    PadicPowerSeries distinguished_series(long t_precision) const {
        const FieldPtr& field = unit.field();
        std::vector<LocalElement> c(t_precision, LocalElement(field, exact_precision()));
        for (std::size_t i = 0; i < distinguished.size() && static_cast<long>(i) < t_precision; ++i) c[i] = distinguished[i];
        return PadicPowerSeries(field, std::move(c), unit.rescaling());
    }
};

struct DivisionResult {
    PadicPowerSeries quotient;
    PadicPowerSeries remainder;  // degree below the distinguished degree of the divisor
};

// f = q g + r with deg r < lambda(g); g must have a unit coefficient within the truncation.
// With g = B + T^lambda C, each reduction step consumes lambda terms of T-precision and gains v(B)
// in p-precision; results carry only the p-precision the truncation determines.
inline DivisionResult weierstrass_divide(const PadicPowerSeries& f, const PadicPowerSeries& g) {
    auto lam = g.lambda();
    if (!lam || g.mu() != 0) throw InputError("weierstrass_divide: divisor has no unit coefficient within the truncation");
    const long L = *lam;
    const long n = std::min(f.t_precision(), g.t_precision());
    if (n <= L) throw InputError("weierstrass_divide: truncation does not reach the distinguished degree");
    const FieldPtr& field = f.field();
    long prec = std::min(f.p_precision(), g.p_precision());
    std::vector<LocalElement> b(n, LocalElement(field, prec)), cc(n - L, LocalElement(field, prec));
    for (long i = 0; i < n; ++i) (i < L ? b[i] : cc[i - L]) = g.coeff(i);
    long vB = kInfiniteValuation;
    for (long i = 0; i < L; ++i) vB = std::min(vB, b[i].valuation());
    const PadicPowerSeries B(field, b, g.rescaling());
    const PadicPowerSeries Cinv = PadicPowerSeries(field, cc, g.rescaling()).inverse();
    PadicPowerSeries q = PadicPowerSeries::zero(field, prec, n - L);
    PadicPowerSeries h = f.truncated(n);
    long leftover = kInfiniteValuation;
    while (true) {
        const long len = h.t_precision();
        long vtop = kInfiniteValuation;
        for (long i = L; i < len; ++i) vtop = std::min(vtop, h.coeff(i).valuation());
        if (vtop == kInfiniteValuation) break;
        if (len - L < L) {
            leftover = vtop;
            break;
        }
        std::vector<LocalElement> top(h.coeffs().begin() + L, h.coeffs().end());
        PadicPowerSeries step = PadicPowerSeries(field, std::move(top), g.rescaling()) * Cinv.truncated(len - L);
        std::vector<LocalElement> padded(n - L, LocalElement(field, prec));
        for (long i = 0; i < step.t_precision() && i < n - L; ++i) padded[i] = step.coeff(i);
        q = q + PadicPowerSeries(field, std::move(padded), g.rescaling());
        std::vector<LocalElement> low(len - L, LocalElement(field, prec));
        for (long i = 0; i < L; ++i) low[i] = h.coeff(i);
        h = PadicPowerSeries(field, std::move(low), g.rescaling()) - step * B.truncated(len - L);
    }
    // Unknown terms from T^n on reach q_i after ceil((n - L - i) / L) reductions and the
    // remainder after floor(n / L), each reduction costing a factor of B.
    auto cap = [&](const LocalElement& x, long reductions) {
        long c = std::min(x.precision(), leftover);
        if (L > 0 && vB != kInfiniteValuation) c = std::min(c, reductions * vB);
        return x.with_precision(c);
    };
    std::vector<LocalElement> qc, r;
    for (long i = 0; i < n - L; ++i) qc.push_back(cap(q.coeff(i), L > 0 ? (n - L - i + L - 1) / L : 0));
    for (long i = 0; i < L; ++i) r.push_back(cap(h.coeff(i), n / L));
    return {PadicPowerSeries(field, std::move(qc), g.rescaling()), PadicPowerSeries(field, std::move(r), g.rescaling())};
}

inline WeierstrassData weierstrass_prep(const PadicPowerSeries& f) {
    long mu = f.mu();
    if (mu == kInfiniteValuation) throw InputError("weierstrass_prep: series is indistinguishable from zero");
    std::vector<LocalElement> c;
    for (const auto& x : f.coeffs()) c.push_back(x.div_pi_power(mu));
    PadicPowerSeries g(f.field(), std::move(c), f.rescaling());
    const long L = *g.lambda();
    const long n = g.t_precision();
    std::vector<LocalElement> tl(n, LocalElement(f.field(), g.p_precision()));
    tl[L] = LocalElement::from_int(f.field(), Int(1), g.p_precision());
    // T^L = q g + r, so g = (T^L - r) q^{-1}.
    auto [q, r] = weierstrass_divide(PadicPowerSeries(f.field(), tl, f.rescaling()), g);
    WeierstrassData out;
    out.mu = mu;
    for (long i = 0; i < L; ++i) out.distinguished.push_back(-r.coeff(i));
    long top = 0;
    for (const auto& x : q.coeffs()) top = std::max(top, x.precision());
    out.distinguished.push_back(LocalElement::from_int(f.field(), Int(1), top));
    out.unit = q.inverse();
    return out;
}

// pi^mu u P, for round-trip checks.
inline PadicPowerSeries reconstruct(const WeierstrassData& w) {
    const FieldPtr& field = w.unit.field();
    LocalElement pim = LocalElement::from_int(field, Int(1), w.exact_precision());
    for (long i = 0; i < w.mu; ++i) pim = pim.mul_pi();
    return pim * (w.unit * w.distinguished_series(w.unit.t_precision()));
}

struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices;  // (index, valuation in pi units)

    // Slopes between consecutive vertices, as (rise, run); root valuations are -rise/run.
    std::vector<std::pair<long, long>> segments() const {
        std::vector<std::pair<long, long>> out;
        for (std::size_t i = 1; i < vertices.size(); ++i)
            out.push_back({vertices[i].second - vertices[i - 1].second, vertices[i].first - vertices[i - 1].first});
        return out;
    }
};

// Lower convex hull of (i, v(c_i)) over the nonzero coefficients.
inline NewtonPolygon newton_polygon(const std::vector<LocalElement>& coeffs) {
    std::vector<std::pair<long, long>> pts;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        long v = coeffs[i].valuation();
        if (v != kInfiniteValuation) pts.push_back({static_cast<long>(i), v});
    }
    NewtonPolygon out;
    for (const auto& pt : pts) {
        while (out.vertices.size() >= 2) {
            auto [x1, y1] = out.vertices[out.vertices.size() - 2];
            auto [x2, y2] = out.vertices.back();
            // Drop the middle point when it lies on or above the chord.
            if ((y2 - y1) * (pt.first - x1) >= (pt.second - y1) * (x2 - x1)) out.vertices.pop_back();
            else break;
        }
        out.vertices.push_back(pt);
    }
    return out;
}

inline NewtonPolygon newton_polygon(const PadicPowerSeries& f) { return newton_polygon(f.coeffs()); }

// f(1 - zeta_{p^s}) in Q_p(zeta_{p^s}), for f over Q_p or a smaller cyclotomic field.
inline LocalElement eval_at_cyclotomic(const PadicPowerSeries& f, int s) {
    FieldPtr L = LocalField::cyclotomic(f.field()->p(), s);
    long prec = f.p_precision() * (L->e() / f.field()->e());
    LocalElement one = LocalElement::from_int(L, Int(1), prec);
    LocalElement zeta = one + LocalElement::uniformizer(L, prec);
    return f.evaluate(one - zeta);
}

}  // namespace pcong
