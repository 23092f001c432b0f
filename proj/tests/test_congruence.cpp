#include "pcong/congruence.hpp"

#include <catch_amalgamated.hpp>

using namespace pcong;

namespace {

struct Spaces {
    std::vector<SignedEigenSymbols> f11, f14, f23;
};

const Spaces& spaces() {
    static Spaces s = [] {
        auto ms11 = std::make_shared<const ModularSymbols>(GroupType::Gamma0, 11, 2);
        auto ms14 = std::make_shared<const ModularSymbols>(GroupType::Gamma0, 14, 2);
        auto ms23 = std::make_shared<const ModularSymbols>(GroupType::Gamma0, 23, 2);
        return Spaces{signed_eigen_symbols(ms11, 5, 10), signed_eigen_symbols(ms14, 5, 10), signed_eigen_symbols(ms23, 5, 10)};
    }();
    return s;
}

CharacterSet set_for(long tame) { return {5, 2, tame, 0, default_x_bound(5, 2, tame), true}; }

}  // namespace

TEST_CASE("q-expansion congruence exponents") {
    const auto& s = spaces();
    REQUIRE(s.f23.size() == 2);
    auto self = qexp_congruence_exponent(s.f11[0].plus, s.f11[0].plus, 10);
    CHECK(self.saturated);
    CHECK(qexp_congruence_exponent(s.f23[0].plus, s.f23[1].plus, 44) == Exponent{1, false});
    long previous = qexp_congruence_exponent(s.f23[0].plus, s.f23[1].plus, 1).value;
    for (long bound = 2; bound <= 44; ++bound) {
        long v = qexp_congruence_exponent(s.f23[0].plus, s.f23[1].plus, bound).value;
        CHECK(v <= previous);
        previous = v;
    }
    CHECK(qexp_congruence_exponent(s.f11[0].plus, s.f14[0].plus, 24) == Exponent{0, false});
}

TEST_CASE("special-value congruence exponents") {
    const auto& s = spaces();
    CHECK(lvalue_congruence_exponent(s.f23[0].plus, s.f23[0].plus, set_for(23)).saturated);
    CHECK(lvalue_congruence_exponent(s.f23[0].plus, s.f23[1].plus, set_for(23)) == Exponent{1, false});
    CHECK(lvalue_congruence_exponent(s.f23[0].minus, s.f23[1].minus, set_for(23)) == Exponent{1, false});
}

TEST_CASE("equivalence reports") {
    const auto& s = spaces();
    auto self = equivalence_report(s.f11[0], s.f11[0], set_for(11));
    CHECK(self.consistent);
    CHECK(self.r_q.saturated);

    auto r23 = equivalence_report(s.f23[0], s.f23[1], set_for(23));
    CHECK(r23.r_q == Exponent{1, false});
    CHECK(r23.r_L == Exponent{1, false});
    REQUIRE(r23.r_coordinates);
    CHECK(*r23.r_coordinates == Exponent{1, false});
    CHECK(r23.consistent);

    auto r = equivalence_report(s.f11[0], s.f14[0], set_for(154));
    CHECK(r.r_q == Exponent{0, false});
    CHECK(r.r_L == Exponent{0, false});
    CHECK(r.consistent);
}

TEST_CASE("unit renormalization leaves exponents unchanged") {
    const auto& s = spaces();
    SignedEigenSymbols g = s.f23[1];
    for (auto* e : {&g.plus, &g.minus}) {
        LocalElement unit = LocalElement::from_int(e->field(), Int(7), e->precision()) + LocalElement::uniformizer(e->field(), e->precision());
        for (auto& x : e->symbol.manin_values) x = unit * x;
    }
    auto before = equivalence_report(s.f23[0], s.f23[1], set_for(23));
    auto after = equivalence_report(s.f23[0], g, set_for(23));
    CHECK(before.r_q == after.r_q);
    CHECK(before.r_L == after.r_L);
    CHECK(*before.r_coordinates == *after.r_coordinates);
}

TEST_CASE("character set description and X bound") {
    auto set = set_for(11);
    CHECK(set.x_primes() == std::vector<long>{727});
    CHECK(set.describe().find("727") != std::string::npos);
    CHECK(default_x_bound(5, 2, 11) >= 727);
}
