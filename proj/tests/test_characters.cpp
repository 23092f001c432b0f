#include "oracles.hpp"
#include "pcong/characters.hpp"

#include <catch_amalgamated.hpp>

using namespace pcong;

namespace {

// Smallest f | D such that chi is trivial on units congruent to 1 mod f, by scanning.
long brute_conductor(const DirichletCharacter& chi) {
    const long D = chi.modulus();
    for (long f = 1; f <= D; ++f) {
        if (D % f) continue;
        bool trivial = true;
        for (long a = 1; a < D && trivial; ++a)
            if (std::gcd(a, D) == 1 && (a - 1) % f == 0 && *chi.value_exponent(a) != 0) trivial = false;
        if (trivial) return f;
    }
    return D;
}

}  // namespace

TEST_CASE("character enumeration") {
    CHECK(enumerate_characters(1).size() == 1);
    auto c5 = enumerate_characters(5);
    CHECK(c5.size() == 4);
    CHECK(std::count_if(c5.begin(), c5.end(), [](const auto& c) { return c.order() == 2; }) == 1);
    auto c8 = enumerate_characters(8);
    CHECK(c8.size() == 4);
    for (const auto& c : c8) CHECK(c.order() <= 2);
    for (long D = 1; D <= 60; ++D) CHECK(static_cast<long>(enumerate_characters(D).size()) == oracle::phi(D));
}

TEST_CASE("conductors and primitivity") {
    CHECK(DirichletCharacter::trivial(12).conductor() == 1);
    for (const auto& c : enumerate_characters(5)) {
        if (c.order() != 2) continue;
        CHECK(c.conductor() == 5);
        CHECK(c.is_primitive());
        auto c10 = c.induce(10);
        CHECK(c10.conductor() == 5);
        CHECK_FALSE(c10.is_primitive());
        CHECK(c10.primitive() == c);
    }
    for (long D = 1; D <= 120; ++D)
        for (const auto& c : enumerate_characters(D)) CHECK(c.conductor() == brute_conductor(c));
}

TEST_CASE("multiplicativity and orthogonality") {
    for (long D = 2; D <= 30; ++D)
        for (const auto& chi : enumerate_characters(D)) {
            for (long a = 0; a < D; ++a)
                for (long b = 0; b < D; ++b) {
                    auto ea = chi.value_exponent(a), eb = chi.value_exponent(b), eab = chi.value_exponent(a * b % D);
                    if (!ea || !eb) {
                        CHECK_FALSE(eab);
                        continue;
                    }
                    CHECK(*eab == (*ea + *eb) % chi.order());
                }
            if (chi.is_trivial()) continue;
            CyclotomicElement sum(chi.order());
            for (long a = 0; a < D; ++a) sum = sum + chi.value(a);
            CHECK(sum == CyclotomicElement(chi.order()));
        }
}

TEST_CASE("Gauss sums") {
    CHECK(gauss_sum(DirichletCharacter::trivial(1)) == CyclotomicElement::integer(1, Int(1)));
    for (const auto& c : primitive_characters(5)) {
        if (c.order() != 2) continue;
        auto t = gauss_sum(c);
        auto t2 = t * t;
        CHECK(t2 == CyclotomicElement::integer(t2.conductor(), Int(5)));
    }
    for (long D = 1; D <= 60; ++D)
        for (const auto& c : primitive_characters(D)) {
            auto prod = gauss_sum(c) * gauss_sum(c.conjugate());
            CHECK(prod == CyclotomicElement::integer(prod.conductor(), Int(c.parity() * D)));
        }
    for (const auto& c : enumerate_characters(10))
        if (!c.is_primitive()) CHECK_THROWS_AS(gauss_sum(c), InputError);
}

TEST_CASE("conductor set X") {
    CHECK(conductor_set_X(5, 2, 11, 0, 1000) == std::vector<long>{727});
    CHECK(conductor_set_X(5, 2, 11, 727, 1000).empty());
    for (auto [p, r, N] : {std::tuple{5L, 2L, 11L}, std::tuple{5L, 3L, 23L}, std::tuple{3L, 2L, 5L}, std::tuple{7L, 3L, 4L}}) {
        auto X = conductor_set_X(p, r, N, 0, 20000);
        CHECK(X == oracle::sieve_X(p, r, N, 0, 20000));
        for (long q : X) {
            CHECK((q - 1) % (N * N) == 0);
            CHECK(((q - r) % p + p) % p == 0);
        }
    }
}
