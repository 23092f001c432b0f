#pragma once

#include "pcong/padic/cyclotomic.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pcong {

// (Z/D)^x as a product of cyclic groups on CRT-lifted generators, with a discrete-log table.
class UnitGroup {
public:
    explicit UnitGroup(long modulus) : modulus_(modulus), log_index_(modulus, -1) {
        if (modulus < 1) throw InputError("character modulus must be positive");
        for (auto [q, e] : factorize(modulus)) {
            long qe = 1;
            for (int i = 0; i < e; ++i) qe *= q;
            auto lift = [&](long g) {
                // g mod q^e, 1 mod the cofactor.
                long rest = modulus / qe;
                if (rest == 1) return mod_floor(g, qe);
                long t = mod_floor((g - 1) * inverse_mod(rest % qe, qe), qe);
                return mod_floor(1 + rest * t, modulus);
            };
            if (q == 2) {
                if (e >= 2) add_generator(lift(-1), 2, 2);
                if (e >= 3) add_generator(lift(5), qe / 4, 2);
            } else {
                long g = 2;
                long phi = qe / q * (q - 1);
                while (std::gcd(g, q) != 1 || multiplicative_order(g, qe) != phi) ++g;
                add_generator(lift(g), phi, q);
            }
        }
        exponent_ = 1;
        for (long o : orders_) exponent_ = ilcm(exponent_, o);
        size_ = 1;
        for (long o : orders_) size_ *= o;
        // Fill the table by walking all exponent vectors in mixed radix.
        std::vector<long> digits(orders_.size(), 0);
        for (long idx = 0; idx < size_; ++idx) {
            long a = 1 % modulus_;
            for (std::size_t i = 0; i < orders_.size(); ++i) a = a * powmod(gens_[i], digits[i], modulus_) % modulus_;
            log_index_[a] = idx;
            for (std::size_t i = orders_.size(); i-- > 0;) {
                if (++digits[i] < orders_[i]) break;
                digits[i] = 0;
            }
        }
    }

    long modulus() const { return modulus_; }
    const std::vector<long>& generators() const { return gens_; }
    const std::vector<long>& orders() const { return orders_; }
    long exponent() const { return exponent_; }
    long size() const { return size_; }

    // Exponent vector of a unit, empty optional when gcd(a, D) > 1.
    std::optional<std::vector<long>> discrete_log(long a) const {
        long idx = log_index_[mod_floor(a, modulus_)];
        if (idx < 0) return std::nullopt;
        std::vector<long> out(orders_.size());
        for (std::size_t i = orders_.size(); i-- > 0;) {
            out[i] = idx % orders_[i];
            idx /= orders_[i];
        }
        return out;
    }

    // Mixed-radix index of the exponent vector of a, or -1 for non-units.
    long log_index(long a) const { return log_index_[mod_floor(a, modulus_)]; }

    // Prime owning generator i and whether it is the 2-adic generator 5.
    long generator_prime(std::size_t i) const { return gen_prime_[i]; }

    static std::shared_ptr<const UnitGroup> get(long modulus) {
        return std::make_shared<const UnitGroup>(modulus);
    }

private:
    void add_generator(long g, long order, long q) {
        gens_.push_back(g);
        orders_.push_back(order);
        gen_prime_.push_back(q);
    }
    long modulus_;
    std::vector<long> gens_, orders_, gen_prime_;
    std::vector<long> log_index_;
    long exponent_ = 1;
    long size_ = 1;
};

// Dirichlet character mod D given by exponents x_i: chi(g_i) = zeta_{o_i}^{x_i}.
class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<long> exponents)
        : group_(std::move(group)), exps_(std::move(exponents)) {
        if (exps_.size() != group_->orders().size()) throw InputError("character exponent list has wrong length");
        for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] = mod_floor(exps_[i], group_->orders()[i]);
        order_ = 1;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            long o = group_->orders()[i];
            order_ = ilcm(order_, o / std::gcd(o, exps_[i]));
        }
    }

    static DirichletCharacter trivial(long modulus) {
        auto g = UnitGroup::get(modulus);
        return DirichletCharacter(g, std::vector<long>(g->orders().size(), 0));
    }

    long modulus() const { return group_->modulus(); }
    const std::vector<long>& exponents() const { return exps_; }
    long order() const { return order_; }
    const std::shared_ptr<const UnitGroup>& group() const { return group_; }
    bool is_trivial() const { return order_ == 1; }

    // k with chi(a) = zeta_order^k; empty when gcd(a, D) > 1.
    std::optional<long> value_exponent(long a) const {
        auto logs = group_->discrete_log(a);
        if (!logs) return std::nullopt;
        const long E = group_->exponent();
        long k = 0;
        for (std::size_t i = 0; i < exps_.size(); ++i)
            k = mod_floor(k + (*logs)[i] * exps_[i] % E * (E / group_->orders()[i]), E);
        return k / (E / order_);
    }

    // value_exponent for every a in [0, D), with -1 at non-units.
    std::vector<long> value_exponent_table() const {
        const long D = modulus();
        const long E = group_->exponent();
        const auto& orders = group_->orders();
        std::vector<long> weight(exps_.size());
        for (std::size_t i = 0; i < exps_.size(); ++i) weight[i] = exps_[i] * (E / orders[i]) % E;
        std::vector<long> out(D, -1);
        for (long a = 0; a < D; ++a) {
            long idx = group_->log_index(a);
            if (idx < 0) continue;
            long k = 0;
            for (std::size_t i = orders.size(); i-- > 0;) {
                k = (k + (idx % orders[i]) * weight[i]) % E;
                idx /= orders[i];
            }
            out[a] = k / (E / order_);
        }
        return out;
    }

    // chi(a) as an element of Z[zeta_order].
    CyclotomicElement value(long a) const {
        auto k = value_exponent(a);
        if (!k) return CyclotomicElement(order_);
        return CyclotomicElement::root_power(order_, *k);
    }

    int parity() const {
        if (modulus() <= 2) return 1;
        return *value_exponent(-1) == 0 ? 1 : -1;
    }

    DirichletCharacter conjugate() const {
        std::vector<long> neg = exps_;
        for (auto& x : neg) x = -x;
        return DirichletCharacter(group_, neg);
    }

    long conductor() const {
        long cond = 1;
        const auto& orders = group_->orders();
        std::size_t i = 0;
        for (auto [q, e] : factorize(modulus())) {
            if (q == 2) {
                if (e < 2) continue;
                long sign_part = exps_[i];
                long o5 = 1;
                if (e >= 3) o5 = orders[i + 1] / std::gcd(orders[i + 1], exps_[i + 1]);
                i += e >= 3 ? 2 : 1;
                if (o5 > 1) cond *= 4 * o5;
                else if (sign_part != 0) cond *= 4;
            } else {
                long o = orders[i] / std::gcd(orders[i], exps_[i]);
                ++i;
                if (o == 1) continue;
                long f = 1;
                long t = o;
                while (t % q == 0) { t /= q; ++f; }
                for (long j = 0; j < f; ++j) cond *= q;
            }
        }
        return cond;
    }

    bool is_primitive() const { return conductor() == modulus(); }

    // The character mod `target` (a multiple of D) agreeing with this one on units.
    DirichletCharacter induce(long target) const {
        if (target % modulus()) throw InputError("induce: target must be a multiple of the modulus");
        return from_values(target, [&](long a) { return value_exponent(a); }, order_);
    }

    // The primitive character inducing this one.
    DirichletCharacter primitive() const {
        long f = conductor();
        if (f == modulus()) return *this;
        auto g = UnitGroup::get(f);
        // Values on generators mod f: lift each generator to a unit mod D.
        std::vector<long> exps(g->orders().size());
        for (std::size_t i = 0; i < exps.size(); ++i) {
            long a = g->generators()[i];
            while (std::gcd(a, modulus()) != 1) a += f;
            long k = *value_exponent(a);
            long o = g->orders()[i];
            // zeta_order^k = zeta_o^x with x = k * o / order.
            exps[i] = k * o / order_;
        }
        return DirichletCharacter(g, exps);
    }

    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
        if (a.modulus() != b.modulus()) throw InputError("character product: modulus mismatch");
        std::vector<long> e(a.exps_.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exps_[i] + b.exps_[i];
        return DirichletCharacter(a.group_, e);
    }

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.exps_ == b.exps_;
    }

    // Position in enumerate_characters(D).
    long index() const {
        long idx = 0;
        for (std::size_t i = 0; i < exps_.size(); ++i) idx = idx * group_->orders()[i] + exps_[i];
        return idx;
    }

    template <class ValueFn>
    static DirichletCharacter from_values(long modulus, ValueFn&& value_exponent_of, long value_order) {
        auto g = UnitGroup::get(modulus);
        std::vector<long> exps(g->orders().size());
        for (std::size_t i = 0; i < exps.size(); ++i) {
            auto k = value_exponent_of(g->generators()[i]);
            if (!k) throw std::logic_error("from_values: generator is not a unit");
            exps[i] = *k * g->orders()[i] / value_order;
            if ((*k * g->orders()[i]) % value_order) throw std::logic_error("from_values: value order mismatch");
        }
        return DirichletCharacter(g, exps);
    }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<long> exps_;
    long order_ = 1;
};

// All characters mod D in mixed-radix order of their exponent vectors.
inline std::vector<DirichletCharacter> enumerate_characters(long modulus) {
    auto g = UnitGroup::get(modulus);
    std::vector<DirichletCharacter> out;
    std::vector<long> digits(g->orders().size(), 0);
    for (long idx = 0; idx < g->size(); ++idx) {
        out.emplace_back(g, digits);
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (++digits[i] < g->orders()[i]) break;
            digits[i] = 0;
        }
    }
    return out;
}

inline std::vector<DirichletCharacter> primitive_characters(long conductor) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_characters(conductor))
        if (chi.is_primitive()) out.push_back(chi);
    return out;
}

// tau(chi) = sum_a chi(a) zeta_D^a in Z[zeta_lcm(order, D)].
inline CyclotomicElement gauss_sum(const DirichletCharacter& chi) {
    if (!chi.is_primitive()) throw InputError("gauss_sum: character is not primitive");
    const long D = chi.modulus();
    const long n = ilcm(chi.order(), D);
    std::vector<Int> acc(n, Int(0));
    for (long a = 0; a < D; ++a) {
        auto k = chi.value_exponent(a);
        if (!k) continue;
        acc[mod_floor(*k * (n / chi.order()) + a * (n / D), n)] += 1;
    }
    return CyclotomicElement(n, std::move(acc));
}

// Primes q in (lower, upper] with q = r mod p and q = 1 mod N^2.
inline std::vector<long> conductor_set_X(long p, long r, long level, long lower, long upper) {
    if (std::gcd(r, p) != 1 || mod_floor(r, p) == 1) throw InputError("conductor_set_X: need gcd(r,p)=1 and r != 1 mod p");
    const long n2 = level * level;
    std::vector<long> out;
    // q = 1 + n2 t; walk t and keep q = r mod p.
    for (long q = 1 + n2; q <= upper; q += n2) {
        if (q <= lower || mod_floor(q - r, p) != 0) continue;
        if (is_prime(q)) out.push_back(q);
    }
    return out;
}

}  // namespace pcong
