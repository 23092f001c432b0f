#pragma once

#include "pcong/arith/poly.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace pcong {

// Q[x]/(modulus) for a monic irreducible modulus.
struct NumberField {
    QPoly modulus;
    long degree() const { return modulus.degree(); }
};

// Element of a number field. A null field means a plain rational, which lets F(0) and F(1)
// behave as scalars in generic linear algebra.
class NFElem {
public:
    NFElem() = default;
    NFElem(long a) : poly_(QPoly::constant(Rat(a))) {}
    NFElem(const Rat& a) : poly_(QPoly::constant(a)) {}
    NFElem(std::shared_ptr<const NumberField> field, QPoly poly)
        : field_(std::move(field)), poly_(std::move(poly)) {
        if (field_) poly_ = poly_ % field_->modulus;
    }

    static NFElem generator(std::shared_ptr<const NumberField> field) {
        return NFElem(std::move(field), QPoly::x());
    }

    const std::shared_ptr<const NumberField>& field() const { return field_; }
    const QPoly& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    bool is_rational() const { return poly_.degree() <= 0; }
    Rat rational() const { return poly_.coeff(0); }

    friend NFElem operator+(const NFElem& a, const NFElem& b) { return make(a, b, a.poly_ + b.poly_); }
    friend NFElem operator-(const NFElem& a, const NFElem& b) { return make(a, b, a.poly_ - b.poly_); }
    friend NFElem operator*(const NFElem& a, const NFElem& b) { return make(a, b, a.poly_ * b.poly_); }
    friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }
    NFElem operator-() const { return NFElem(field_, -poly_); }
    NFElem& operator+=(const NFElem& b) { return *this = *this + b; }
    NFElem& operator-=(const NFElem& b) { return *this = *this - b; }
    NFElem& operator*=(const NFElem& b) { return *this = *this * b; }
    NFElem& operator/=(const NFElem& b) { return *this = *this / b; }
    friend bool operator==(const NFElem& a, const NFElem& b) { return (a - b).is_zero(); }

    NFElem inverse() const {
        if (is_zero()) throw std::domain_error("NFElem: division by zero");
        if (is_rational()) return NFElem(field_, QPoly::constant(1 / rational()));
        auto [g, s, t] = poly_xgcd(poly_, field_->modulus);
        (void)t;
        if (g.degree() != 0) throw std::domain_error("NFElem: modulus is reducible");
        return NFElem(field_, s);
    }

    std::string str() const { return poly_.str("a"); }

private:
    static NFElem make(const NFElem& a, const NFElem& b, QPoly p) {
        auto field = a.field_ ? a.field_ : b.field_;
        return NFElem(field, std::move(p));
    }
    std::shared_ptr<const NumberField> field_;
    QPoly poly_;
};

inline bool is_zero(const NFElem& x) { return x.is_zero(); }

}  // namespace pcong
