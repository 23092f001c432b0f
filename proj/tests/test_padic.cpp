#include "oracles.hpp"
#include "pcong/arith/factor.hpp"
#include "pcong/padic/cyclotomic.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace pcong;

TEST_CASE("p-adic valuations of rationals") {
    CHECK(valuation(Rat(50), 5) == PValuation{false, Rat(2)});
    CHECK(valuation(Rat(2, 9), 3) == PValuation{false, Rat(-2)});
    CHECK(valuation(Rat(0), 5).infinite);
}

TEST_CASE("zero at precision is not exact zero") {
    auto K = LocalField::rationals(5);
    auto x = LocalElement::from_int(K, Int(5 * 5 * 5), 3);
    CHECK(x.is_zero());
    CHECK(x.precision() == 3);
    CHECK(LocalElement::from_int(K, Int(25), 3).valuation() == 2);
}

TEST_CASE("valuation is additive below precision") {
    std::mt19937_64 rng(11);
    for (long p : {3L, 5L, 7L}) {
        auto K = LocalField::cyclotomic(p, 1);
        std::uniform_int_distribution<long> d(-500, 500);
        for (int t = 0; t < 100; ++t) {
            std::vector<Int> a(K->e()), b(K->e());
            for (auto& c : a) c = d(rng);
            for (auto& c : b) c = d(rng);
            auto x = LocalElement::from_coeffs(K, a, 30), y = LocalElement::from_coeffs(K, b, 30);
            if (x.valuation() + y.valuation() < 30) CHECK((x * y).valuation() == x.valuation() + y.valuation());
        }
    }
}

TEST_CASE("teichmuller lifts") {
    CHECK(teichmuller(5, Int(1), 7) == 1);
    CHECK(teichmuller(5, Int(2), 2) == 7);
    CHECK(teichmuller(7, Int(6), 2) == 48);
    for (long p : {3L, 5L, 7L, 11L})
        for (long m = 1; m <= 4; ++m)
            for (long a = 1; a < p; ++a) {
                Int w = teichmuller(p, Int(a), m);
                CHECK(w == oracle::teichmuller_brute(p, a, m));
                Int pm, r;
                mpz_ui_pow_ui(pm.get_mpz_t(), p, m);
                mpz_powm_ui(r.get_mpz_t(), w.get_mpz_t(), p - 1, pm.get_mpz_t());
                CHECK(r == 1);
            }
}

TEST_CASE("roots of unity in local fields") {
    auto Z5 = LocalField::rationals(5);
    CHECK(embed_root_of_unity(1, 1, Z5, 4).str() == "1");
    // Frozen from a search over [0, 25): x^2 = -1 mod 25 and x = 2 mod 5.
    CHECK(embed_root_of_unity(4, 1, Z5, 2).str() == "7");
    auto K3 = LocalField::cyclotomic(3, 1);
    auto one = LocalElement::from_int(K3, Int(1), 10);
    CHECK((one - embed_root_of_unity(3, 1, K3, 10)).vp() == PValuation{false, Rat(1, 2)});
    auto z = embed_root_of_unity(3, 1, K3, 10);
    CHECK(congruent(z.pow(3), one));
    CHECK_THROWS_AS(embed_root_of_unity(3, 1, Z5, 5), InputError);
}

TEST_CASE("cyclotomic ring axioms on random elements") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-20, 20);
    for (long n : {1L, 3L, 4L, 5L, 12L, 25L}) {
        auto rnd = [&] {
            std::vector<Int> c(n);
            for (auto& x : c) x = d(rng);
            return CyclotomicElement(n, c);
        };
        for (int t = 0; t < 20; ++t) {
            auto a = rnd(), b = rnd(), c = rnd();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
        }
        auto zeta = CyclotomicElement::root_power(n, 1), acc = CyclotomicElement::integer(n, Int(1));
        for (long i = 0; i < n; ++i) acc = acc * zeta;
        CHECK(acc == CyclotomicElement::integer(n, Int(1)));
    }
}

TEST_CASE("embed_cyclotomic is multiplicative") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> d(-20, 20);
    struct Case {
        long n;
        FieldPtr K;
    };
    for (const auto& [n, K] : {Case{4, LocalField::rationals(5)}, Case{5, LocalField::cyclotomic(5, 1)},
                               Case{20, LocalField::cyclotomic(5, 1)}, Case{25, LocalField::cyclotomic(5, 2)},
                               Case{3, LocalField::rationals(7)}}) {
        for (int t = 0; t < 20; ++t) {
            std::vector<Int> ca(n), cb(n);
            for (auto& x : ca) x = d(rng);
            for (auto& x : cb) x = d(rng);
            CyclotomicElement a(n, ca), b(n, cb);
            const long prec = 12 * K->e();
            CHECK(congruent(embed_cyclotomic(a * b, K, prec), embed_cyclotomic(a, K, prec) * embed_cyclotomic(b, K, prec)));
        }
    }
}

TEST_CASE("local field inverse and uniformizer") {
    auto K = LocalField::cyclotomic(5, 1);
    auto x = LocalElement::from_int(K, Int(3), 12);
    CHECK(congruent(x * x.inverse(), LocalElement::from_int(K, Int(1), 12)));
    auto pi = LocalElement::uniformizer(K, 12);
    CHECK(pi.pow(4).valuation() == 4);
    CHECK(pi.pow(4).div_p_power(1).is_unit());
}

TEST_CASE("polynomial roots in local fields") {
    auto K = LocalField::cyclotomic(5, 1);
    QPoly h{-1, 1, 1};  // x^2 + x - 1, discriminant 5
    auto roots = roots_in(h, K, 20);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) CHECK(evaluate(h, r).valuation() >= 20);
    CHECK(roots_in(h, LocalField::rationals(5), 20).empty());
}
