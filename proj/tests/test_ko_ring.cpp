#include <doctest.h>

#include "greensphere/ko_ring.hpp"

using namespace greensphere;

namespace {
Params params() { return Params{}; }
}

TEST_CASE("e2 page against the closed form") {
    KORing ko(params());
    SUBCASE("H^1(C2; pi_2 KU) = Z/2{mu}") {
        FGModule m = ko.e2_page(1, 1, 1);
        CHECK(m.free_rank == 0);
        CHECK(m.torsion == std::vector<int>{1, 1});  // mu and r eta0 mu
    }
    SUBCASE("H^0 at the origin is Z2{1, r eta0}") {
        FGModule m = ko.e2_page(0, 0, 0);
        CHECK(m.free_rank == 2);
        CHECK(m.torsion.empty());
    }
    SUBCASE("H^1 at the origin vanishes") { CHECK(ko.e2_page(0, 0, 1).is_zero()); }
    SUBCASE("window sweep") {
        for (long long s = -10; s <= 10; ++s)
            for (long long c = -10; c <= 10; ++c)
                for (int n = 0; n <= 4; ++n) CHECK_NOTHROW(ko.e2_page(s, c, n));
    }
}

TEST_CASE("d3 differential") {
    KORing ko(params());
    SUBCASE("d3(b^2) = mu^3") {
        E2Class d = ko.d3_monomial(E2Monomial{1, 0, 0, 0, 0, 0});
        REQUIRE(d.n == 3);
        CHECK(!d.is_zero());
        auto basis = ko.e2_basis(d.s, d.c, d.n);
        REQUIRE(basis.size() >= 1);
        bool found = false;
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].rho == 0 && basis[i].eta == 0 && !d.coeff[i].is_zero()) found = true;
        CHECK(found);
    }
    SUBCASE("d3 vanishes on rho and on tau^4") {
        CHECK(ko.d3_monomial(E2Monomial{0, 0, 1, 0, 0, 0}).is_zero());
        CHECK(ko.d3_monomial(E2Monomial{0, 1, 0, 0, 0, 0}).is_zero());
    }
    SUBCASE("Leibniz: d3(b^2 t^4) = mu^3 t^4") {
        E2Class d = ko.d3_monomial(E2Monomial{1, 1, 0, 0, 0, 0});
        CHECK(!d.is_zero());
        CHECK(d.s == 3);
        CHECK(d.c == 7);
    }
    SUBCASE("d3 squared vanishes in a window") {
        for (long long s = -12; s <= 12; ++s)
            for (long long c = -12; c <= 12; ++c)
                for (int n = 0; n <= 6; ++n)
                    for (const auto& mono : ko.e2_basis(s, c, n))
                        CHECK(ko.d3(ko.d3_monomial(mono)).is_zero());
    }
}

TEST_CASE("pi b(KO) groups") {
    KORing ko(params());
    SUBCASE("pi_{1,1} = Z/2{mu} + Z/2{r eta0 mu}") {
        FGModule m = ko.ko_group(1, 1);
        CHECK(m.free_rank == 0);
        CHECK(m.torsion == std::vector<int>{1, 1});
    }
    SUBCASE("pi_{8,0} is Z2^2, matching the psi-fixed KU classes") {
        FGModule m = ko.ko_group(8, 0);
        CHECK(m.free_rank == 2);
        CHECK(m.torsion.empty());
        CHECK(ko.e2_closed_form(8, 0, 0).free_rank == 2);
    }
    SUBCASE("pi_{3,2} contains eta0 mu^2") {
        FGModule m = ko.ko_group(3, 2);
        CHECK(m.free_rank == 0);
        CHECK(m.torsion == std::vector<int>{1});
    }
    SUBCASE("spectral assembly agrees in a window") {
        for (long long s = -14; s <= 14; ++s)
            for (long long c = -14; c <= 14; ++c) CHECK_NOTHROW(ko.ko_group(s, c));
    }
}

TEST_CASE("ko multiplication and hidden extensions") {
    KORing ko(params());
    auto gen = [&](KOCore core) { return ko.core_element(0, 0, core); };
    SUBCASE("r^2 e = 2r") {
        KOElement got = ko.multiply(ko.multiply(gen(KOCore::R), gen(KOCore::R)), gen(KOCore::E));
        KOElement want = ko.scale(Scalar(2, 32), gen(KOCore::R));
        CHECK(got.coeff[0] == want.coeff[0]);
    }
    SUBCASE("eta0 t2h = r mu^2 (hidden extension)") {
        KOElement got = ko.multiply(gen(KOCore::E), gen(KOCore::H));
        KOElement want = gen(KOCore::M2R);
        REQUIRE(got.coeff.size() == want.coeff.size());
        for (size_t i = 0; i < got.coeff.size(); ++i) CHECK(got.coeff[i] == want.coeff[i]);
    }
    SUBCASE("r t2h sqrt v = eta0 mu^2 (hidden extension)") {
        KOElement got = ko.multiply(gen(KOCore::R), gen(KOCore::WH));
        KOElement want = gen(KOCore::M2E);
        for (size_t i = 0; i < got.coeff.size(); ++i) CHECK(got.coeff[i] == want.coeff[i]);
    }
    SUBCASE("(t2h)^2 = 2 t^4 (2 - r eta0)") {
        KOElement got = ko.multiply(gen(KOCore::H), gen(KOCore::H));
        // expect 4 v^0 T^1 - 2 re T^1
        auto basis = ko.basis(0, 4);
        for (size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].core == KOCore::One) CHECK(got.coeff[i].value() == 4);
            if (basis[i].core == KOCore::RE)
                CHECK(got.coeff[i].signed_value() == -2);
        }
    }
    SUBCASE("rho 2sqrt(v) = eta0^3") {
        KOElement got = ko.multiply(gen(KOCore::R), gen(KOCore::W2));
        KOElement want = gen(KOCore::E3);
        for (size_t i = 0; i < got.coeff.size(); ++i) CHECK(got.coeff[i] == want.coeff[i]);
    }
}

TEST_CASE("Adams operations on b(KO)") {
    KORing ko(params());
    int n = params().precision;
    SUBCASE("psi^3 fixes rho") {
        KOElement r = ko.core_element(0, 0, KOCore::R);
        KOElement y = ko.psi(3, r);
        CHECK(y.coeff[0] == r.coeff[0]);
    }
    SUBCASE("psi^3(tau^4) = tau^4 (1 + 4 r eta0)") {
        KOElement t4 = ko.core_element(0, 1, KOCore::One);
        KOElement y = ko.psi(3, t4);
        auto basis = ko.basis(0, 4);
        for (size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].core == KOCore::One) CHECK(y.coeff[i].value() == 1);
            if (basis[i].core == KOCore::RE) CHECK(y.coeff[i].value() == 4);
        }
    }
    SUBCASE("psi^3(v) = 3^4 v (1 + (3^{-4}-1)/2 r eta0)") {
        KOElement v = ko.core_element(1, 0, KOCore::One);
        KOElement y = ko.psi(3, v);
        auto basis = ko.basis(8, 0);
        Scalar k4 = unit_pow(3, 4, n);
        Scalar half = Scalar(unit_pow(3, -4, n + 8).value() - 1, n + 8).half();
        for (size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].core == KOCore::One) CHECK(y.coeff[i] == k4);
            if (basis[i].core == KOCore::RE) CHECK(y.coeff[i] == k4 * Scalar(half.value(), n));
        }
    }
    SUBCASE("psi^k psi^l = psi^{kl} on the basis of several bidegrees") {
        for (long long s : {-5, 0, 3, 4, 8, 11})
            for (long long c : {-4, 0, 1, 2, 6}) {
                auto basis = ko.basis(s, c);
                for (size_t q = 0; q < basis.size(); ++q) {
                    KOElement x = ko.basis_element(s, c, q);
                    KOElement lhs = ko.psi(3, ko.psi(5, x));
                    KOElement rhs = ko.psi(15, x);
                    for (size_t i = 0; i < lhs.coeff.size(); ++i) CHECK(lhs.coeff[i] == rhs.coeff[i]);
                }
            }
    }
}

TEST_CASE("divisibility by rho powers") {
    KORing ko(params());
    int n = params().precision;
    SUBCASE("2 rho eta0 is divisible by rho^2, with witness eta0^2") {
        KOElement x = ko.scale(Scalar(2, n), ko.core_element(0, 0, KOCore::RE));
        auto y = ko.divisible_by_rho(x, 2);
        REQUIRE(y.has_value());
        KOElement back = ko.multiply(ko.core_element(0, 0, KOCore::R),
                                     ko.multiply(ko.core_element(0, 0, KOCore::R), *y));
        for (size_t i = 0; i < back.coeff.size(); ++i) CHECK(back.coeff[i] == x.coeff[i]);
    }
    SUBCASE("rho eta0 itself is not divisible by rho^2") {
        KOElement x = ko.core_element(0, 0, KOCore::RE);
        CHECK(!ko.divisible_by_rho(x, 2).has_value());
    }
    SUBCASE("James divisibility for small n") {
        for (int m = 0; m <= 8; ++m) {
            KOElement x = ko.scale(Scalar(BigInt(1) << unsigned(gamma_rh(m)), n),
                                   ko.core_element(0, 0, KOCore::RE));
            CHECK(ko.divisible_by_rho(x, m + 1).has_value());
        }
    }
}

TEST_CASE("stunted projective orders through b(KO)") {
    KORing ko(params());
    SUBCASE("|KO^0(P_1^n)| = 2^{gamma(n)}") {
        for (int n = 0; n <= 12; ++n) CHECK(ko.stunted_p1_log2_order(n) == gamma_rh(n));
    }
    SUBCASE("single cell: order 2") { CHECK(ko.stunted_p1_log2_order(1) == 1); }
    SUBCASE("degenerate window") {
        auto [coker, ker] = ko.finite_stunted(2, 3, 0);
        CHECK(coker.is_zero());
        CHECK(ker.is_zero());
    }
}
