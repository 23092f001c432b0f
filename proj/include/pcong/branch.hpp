#pragma once

#include "pcong/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcong {

using PointCoordinates = std::vector<LocalElement>;

// p^{-exponent}, or 0.
struct DistanceValue {
    bool zero = false;
    Rat exponent = 0;

    std::string str() const { return zero ? "0" : "p^-" + exponent.get_str(); }
    friend bool operator==(const DistanceValue&, const DistanceValue&) = default;
    // Ultrametric comparison: a <= b.
    friend bool operator<=(const DistanceValue& a, const DistanceValue& b) { return a.zero || (!b.zero && a.exponent >= b.exponent); }
};

// max_i |x_i - y_i|_p.
inline DistanceValue distance(const PointCoordinates& x, const PointCoordinates& y) {
    if (x.size() != y.size()) throw InputError("distance: points of different arity");
    long v = kInfiniteValuation;
    int e = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        v = std::min(v, (x[i] - y[i]).valuation());
        e = x[i].e();
    }
    if (v == kInfiniteValuation) return {true, 0};
    return {false, rational(v, e)};
}

// d = p^{-r/e - N}, so r = e (q - N) must be a non-negative integer.
inline long congruence_exponent_from_distance(const DistanceValue& d, long e, long N) {
    if (d.zero) throw InputError("distance 0 has no finite congruence exponent");
    Rat r = Rat(e) * (d.exponent - Rat(N));
    if (r.get_den() != 1 || r < 0) throw InputError("distance " + d.str() + " is not of the form p^{-r/e-N}");
    return Int(r.get_num()).get_si();
}

inline DistanceValue distance_from_congruence_exponent(long r, long e, long N) { return {false, rational(r, e) + Rat(N)}; }

// Two sections T = g_1(Y), T = g_2(Y) in the rescaled disk variable.
struct BranchPair {
    long p = 0;
    long N = 0;
    PadicPowerSeries g1, g2;

    // (T - g1)(T - g2) = T^2 + b T + c: returns (b, c).
    std::pair<PadicPowerSeries, PadicPowerSeries> product_expansion() const {
        LocalElement minus_one = LocalElement::from_int(g1.field(), Int(-1), g1.p_precision());
        return {minus_one * (g1 + g2), g1 * g2};
    }
};

// ord_Y(g1 - g2), or a lower bound n when the difference vanishes to the truncation.
struct IntersectionOrder {
    long value = 0;
    bool lower_bound = false;
    std::string str() const { return lower_bound ? ">=" + std::to_string(value) : std::to_string(value); }
};

inline IntersectionOrder intersection_multiplicity_ord(const BranchPair& pair) {
    PadicPowerSeries d = pair.g1 - pair.g2;
    if (auto o = d.order()) return {*o, false};
    return {d.t_precision(), true};
}

namespace detail {

// Rank of a list of vectors over K by elimination with minimal-valuation pivots; entries zero at precision count as zero.
inline long padic_rank(std::vector<std::vector<LocalElement>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    long rank = 0;
    std::vector<bool> used(rows.size(), false);
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t best = rows.size();
        long vbest = kInfiniteValuation;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (used[i]) continue;
            long v = rows[i][c].valuation();
            if (v < vbest) {
                vbest = v;
                best = i;
            }
        }
        if (best == rows.size()) continue;
        used[best] = true;
        ++rank;
        const auto& piv = rows[best];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (used[i] || rows[i][c].is_zero()) continue;
            LocalElement factor = divide_exact(rows[i][c], piv[c]);
            for (std::size_t j = c; j < cols; ++j) rows[i][j] = rows[i][j] - factor * piv[j];
        }
    }
    return rank;
}

}  // namespace detail

struct QuotientDimension {
    long value = 0;
    long truncation = 0;  // total degree D of the stable truncation
};

// dim_K of K[T, Y] / (T - g1, T - g2, m^D) at x = (g1(0), 0), grown in D until the dimension stops
// following D. Throws when the series truncation runs out first.
inline QuotientDimension intersection_multiplicity_quotient(const BranchPair& pair, long max_degree = 0) {
    const FieldPtr& field = pair.g1.field();
    const long n = std::min(pair.g1.t_precision(), pair.g2.t_precision());
    if (max_degree <= 0) max_degree = n;
    // Shift T so that x is the origin; the second branch passes through x only if g2(0) = g1(0).
    const LocalElement c = pair.g1.coeff(0);
    auto shifted = [&](const PadicPowerSeries& g) {
        std::vector<LocalElement> out = g.coeffs();
        out[0] = out[0] - c;
        return out;
    };
    const auto h1 = shifted(pair.g1), h2 = shifted(pair.g2);
    const long prec = std::min(pair.g1.p_precision(), pair.g2.p_precision());
    long previous = -1;
    for (long D = 1; D <= max_degree; ++D) {
        // Monomials T^a Y^b with a + b < D, indexed in a fixed order.
        auto index = [D](long a, long b) { return a * D - a * (a - 1) / 2 + b; };
        const long size = D * (D + 1) / 2;
        std::vector<std::vector<LocalElement>> rows;
        for (const auto* h : {&h1, &h2})
            for (long a = 0; a < D; ++a)
                for (long b = 0; a + b < D; ++b) {
                    // T^a Y^b (T - h(Y)) truncated to total degree < D.
                    std::vector<LocalElement> row(size, LocalElement(field, prec));
                    if (a + 1 + b < D) row[index(a + 1, b)] = LocalElement::from_int(field, Int(1), prec);
                    for (long j = 0; a + b + j < D && j < static_cast<long>(h->size()); ++j)
                        row[index(a, b + j)] = row[index(a, b + j)] - (*h)[j];
                    rows.push_back(std::move(row));
                }
        long dim = size - detail::padic_rank(std::move(rows));
        if (dim < D && dim == previous) return {dim, D};
        previous = dim;
    }
    throw PrecisionError("intersection_multiplicity_quotient: dimension not stable within the truncation");
}

// A series in Y attached to one character.
struct LabeledSeries {
    std::string label;
    PadicPowerSeries series;
};

// The differences L_1(chi) - L_2(chi).
struct LIdealData {
    std::vector<LabeledSeries> entries;
};

struct TaylorVerdict {
    enum class Kind { Pass, NoWitness, Falsified };
    Kind kind = Kind::NoWitness;
    IntersectionOrder intersection;
    std::optional<long> min_order;
    std::string witness;

    std::string describe() const {
        switch (kind) {
        case Kind::NoWitness: return "order >= truncation, no witness";
        case Kind::Pass: return "pass: witness " + witness + " has exact order " + std::to_string(*min_order);
        case Kind::Falsified: break;
        }
        return "falsified: min order " + (min_order ? std::to_string(*min_order) : std::string("none")) +
               " but intersection multiplicity " + intersection.str();
    }
};

// min_chi ord_Y(L_1(chi) - L_2(chi)) against ord_Y(g_1 - g_2).
inline TaylorVerdict taylor_agreement_check(const BranchPair& pair, const LIdealData& data) {
    TaylorVerdict out;
    out.intersection = intersection_multiplicity_ord(pair);
    for (const auto& entry : data.entries) {
        auto o = entry.series.order();
        if (o && (!out.min_order || *o < *out.min_order)) {
            out.min_order = o;
            out.witness = entry.label;
        }
    }
    if (!out.min_order) {
        out.kind = out.intersection.lower_bound ? TaylorVerdict::Kind::NoWitness : TaylorVerdict::Kind::Falsified;
        return out;
    }
    bool ok = out.intersection.lower_bound ? *out.min_order >= out.intersection.value : *out.min_order == out.intersection.value;
    out.kind = ok ? TaylorVerdict::Kind::Pass : TaylorVerdict::Kind::Falsified;
    return out;
}

// F(T, Y) = sum_j a_j(Y) T^j, restricted to the section T = g(Y).
struct TwoVariableFamily {
    std::string label;
    std::vector<PadicPowerSeries> a;  // a_j(Y)

    PadicPowerSeries restrict_to(const PadicPowerSeries& g) const {
        PadicPowerSeries acc = a.back();
        for (std::size_t j = a.size() - 1; j-- > 0;) acc = acc * g + a[j];
        return acc;
    }
};

// L-ideal data of a family on a branch pair: L_i(chi) = F_chi(g_i(Y), Y).
inline LIdealData lideal_from_families(const BranchPair& pair, const std::vector<TwoVariableFamily>& families) {
    LIdealData out;
    for (const auto& F : families) out.entries.push_back({F.label, F.restrict_to(pair.g1) - F.restrict_to(pair.g2)});
    return out;
}

// Order of vanishing at Y = 0 read off from values at kappa_n = p^n: v_p(f(kappa_n)) = ord n + c for large n.
struct SampledOrder {
    std::optional<long> order;
    std::vector<long> valuations;  // in pi units, one per n
};

inline SampledOrder sampled_order(const PadicPowerSeries& f, long n_first, long n_last) {
    SampledOrder out;
    const FieldPtr& field = f.field();
    for (long n = n_first; n <= n_last; ++n) {
        LocalElement kappa = LocalElement::from_int(field, ipow(field->p(), n), f.p_precision());
        out.valuations.push_back(f.evaluate(kappa).valuation());
    }
    // The last two slopes must agree.
    const long e = field->e();
    const std::size_t m = out.valuations.size();
    if (m < 3) return out;
    long a = out.valuations[m - 3], b = out.valuations[m - 2], c = out.valuations[m - 1];
    if (a == kInfiniteValuation || b == kInfiniteValuation || c == kInfiniteValuation) return out;
    if (c - b == b - a && (c - b) % e == 0) out.order = (c - b) / e;
    return out;
}

// LIdealData whose differences are replaced by the sampled orders: each entry is Y^order so that the
// verdict uses only what the samples determine.
inline LIdealData lideal_from_samples(const LIdealData& data, long n_first, long n_last) {
    LIdealData out;
    for (const auto& entry : data.entries) {
        auto s = sampled_order(entry.series, n_first, n_last);
        const FieldPtr& field = entry.series.field();
        const long t = entry.series.t_precision();
        const long prec = entry.series.p_precision();
        std::vector<Int> c(t, Int(0));
        if (s.order && *s.order < t) c[*s.order] = 1;
        out.entries.push_back({entry.label, PadicPowerSeries::from_ints(field, c, prec, t)});
    }
    return out;
}

// f(x + T). Unless f is a polynomial of degree below its truncation, coefficient k is capped at (n - k) v(x).
inline PadicPowerSeries taylor_shift(const PadicPowerSeries& f, const LocalElement& x, bool polynomial = false) {
    const long n = f.t_precision();
    const FieldPtr& field = f.field();
    const long vx = x.valuation();
    std::vector<LocalElement> out;
    for (long k = 0; k < n; ++k) {
        LocalElement acc(field, f.p_precision());
        LocalElement xp = LocalElement::from_int(field, Int(1), f.p_precision());
        for (long i = k; i < n; ++i) {
            Int b;
            mpz_bin_uiui(b.get_mpz_t(), i, k);
            acc += b * (f.coeff(i) * xp);
            xp = xp * x;
        }
        if (!polynomial && vx != kInfiniteValuation) acc = acc.with_precision(std::min(acc.precision(), (n - k) * vx));
        out.push_back(acc);
    }
    return PadicPowerSeries(field, std::move(out), f.rescaling());
}

struct LocalizedDisk {
    long radius = 0;  // the disk |T - x| <= p^{-radius}
    long s = 0;       // f = p^s (unit) there, s in pi units
    WeierstrassData data;
};

// Smallest radius exponent >= min_radius on which f(x + p^radius T0) = pi^s u(T0) with u a unit power series.
inline LocalizedDisk localize_away_from_roots(const PadicPowerSeries& f, const LocalElement& x, long min_radius = 0,
                                              long max_radius = 64, bool polynomial = false) {
    PadicPowerSeries g = taylor_shift(f, x, polynomial);
    const long v0 = g.coeff(0).valuation();
    if (v0 == kInfiniteValuation) throw InputError("localize_away_from_roots: f(x) vanishes at working precision");
    const FieldPtr& field = f.field();
    const long e = field->e();
    for (long N = std::max(0L, min_radius); N <= max_radius; ++N) {
        // The constant term must strictly dominate every other term on |T| <= p^{-N}.
        bool dominant = true;
        for (long i = 1; i < g.t_precision() && dominant; ++i) {
            long v = g.coeff(i).valuation();
            if (v != kInfiniteValuation && v + i * N * e <= v0) dominant = false;
        }
        if (!dominant) continue;
        std::vector<LocalElement> c;
        for (long i = 0; i < g.t_precision(); ++i) c.push_back(ipow(field->p(), i * N) * g.coeff(i));
        PadicPowerSeries rescaled(field, std::move(c), f.rescaling());
        LocalizedDisk out{N, v0, weierstrass_prep(rescaled)};
        if (out.data.degree() != 0) throw std::logic_error("localize_away_from_roots: rescaled series is not a unit multiple");
        return out;
    }
    throw InputError("localize_away_from_roots: every tested radius contains a root");
}

// T = pi^t u(Y) Y^e.
struct RamifiedBranchModel {
    long t = 0;
    long e = 1;
    PadicPowerSeries u;
};

// dY/dT = pi^{-t} Y^{-(e-1)} w(Y) with w = (Y u' + e u)^{-1}.
struct LaurentDerivative {
    long pole_order = 0;
    long pi_shift = 0;
    PadicPowerSeries w;
};

inline LaurentDerivative ramified_derivative_pole(const RamifiedBranchModel& model) {
    if (model.e < 1) throw InputError("ramification index must be at least 1");
    const auto& u = model.u;
    if (u.t_precision() < 2) throw InputError("ramified_derivative_pole: unit series needs T-precision at least 2");
    // Y u' + e u, truncated to the precision of u'.
    PadicPowerSeries du = u.derivative();
    std::vector<LocalElement> c;
    for (long i = 0; i < du.t_precision(); ++i) {
        LocalElement term = model.e * u.coeff(i);
        if (i > 0) term += du.coeff(i - 1);
        c.push_back(term);
    }
    PadicPowerSeries base(u.field(), std::move(c), u.rescaling());
    if (!base.coeff(0).is_unit())
        throw InputError("ramified_derivative_pole: e u(0) is not a unit (p divides e or u(0) is not a unit); pole order not determined");
    return {model.e - 1, model.t, base.inverse()};
}

struct RamificationEstimate {
    bool ramified = false;
    long index = 1;
    long max_pole = 0;
    bool conclusive = false;
    std::string witness;
    std::string diagnostic;
};

// d/dT L(chi) = L'(Y) dY/dT has a pole of order (e - 1) - ord_Y L'(Y); the index estimate is 1 + the largest pole.
inline RamificationEstimate ramification_from_lfunction(const RamifiedBranchModel& model, const std::vector<LabeledSeries>& family) {
    RamificationEstimate out;
    if (model.e == 1) {
        out.conclusive = true;
        out.diagnostic = "unramified model: dY/dT has no pole";
        return out;
    }
    auto pole = ramified_derivative_pole(model);
    bool linear_seen = false;
    long best = 0;
    for (const auto& L : family) {
        auto d = L.series.derivative();
        auto o = d.order();
        if (!o) continue;
        long order = pole.pole_order - *o;
        if (*o == 0) linear_seen = true;
        if (order > best) {
            best = order;
            out.witness = L.label;
        }
    }
    out.max_pole = best;
    out.ramified = best > 0;
    out.index = best + 1;
    out.conclusive = linear_seen;
    if (linear_seen) out.diagnostic = "a character with nonzero linear coefficient fixes the index";
    else if (out.ramified) out.diagnostic = "no character with nonzero linear coefficient; the index is a lower estimate";
    else out.diagnostic = "inconclusive: no character with nonzero linear coefficient";
    return out;
}

}  // namespace pcong
