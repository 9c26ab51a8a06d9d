#include <doctest.h>

#include "greensphere/classical_sphere.hpp"

using namespace greensphere;

namespace {

struct Fixture {
    Params p;
    KORing ko;
    ClassicalSphere sphere;
    Fixture() : ko(p), sphere(p, &ko) {}
};

}  // namespace

TEST_CASE("classical K(1)-local stems") {
    Fixture f;
    SUBCASE("stem 0") {
        FGModule m = f.sphere.s_group(0, 0);
        CHECK(m.free_rank == 1);
        CHECK(m.torsion == std::vector<int>{1});  // Z2{1} + Z/2{mu0 rho0}
    }
    SUBCASE("stem 3 is Z/8{xi_0}") {
        FGModule m = f.sphere.s_group(3, 0);
        CHECK(m.free_rank == 0);
        CHECK(m.torsion == std::vector<int>{3});
    }
    SUBCASE("stem 4 vanishes") { CHECK(f.sphere.s_group(4, 0).is_zero()); }
    SUBCASE("stem -1 is Z2{rho_0}") {
        FGModule m = f.sphere.s_group(-1, 0);
        CHECK(m.free_rank == 1);
        CHECK(m.torsion.empty());
    }
    SUBCASE("|S_{8a-1}| = 2^{j_{2a}}") {
        for (long long a = 1; a <= 6; ++a) {
            FGModule m = f.sphere.s_group(8 * a - 1, 0);
            CHECK(m.is_finite());
            CHECK(m.torsion_log2_order() == j_exp(2 * a).value());
        }
    }
    SUBCASE("twisted unit degree") {
        FGModule m = f.sphere.s_group(0, 1);
        CHECK(m.free_rank == 1);
        CHECK(m.torsion.empty());
    }
    SUBCASE("twisted stems follow the shifted pattern") {
        CHECK(f.sphere.s_group(3, 1).torsion == std::vector<int>{3});   // rho_{1/2}
        CHECK(f.sphere.s_group(7, 1).torsion == std::vector<int>{4});   // xi_{1/2}: j_2 = 4
        CHECK(f.sphere.s_group(5, 1).torsion == std::vector<int>{1, 1});
        CHECK(f.sphere.s_group(2, 1).is_zero());
    }
}

TEST_CASE("classical products") {
    Fixture f;
    int n = f.p.precision;
    auto gen = [&](SGenKind kind, long long p2) {
        return f.sphere.generator(SGenName{kind, p2});
    };
    SUBCASE("mu0^3 = 4 xi_0") {
        SElement mu0 = gen(SGenKind::Mu, 0);
        SElement got = f.sphere.multiply(f.sphere.multiply(mu0, mu0), mu0);
        SElement want = f.sphere.scale(Scalar(4, n), gen(SGenKind::Xi, 0));
        CHECK(f.sphere.equal(got, want));
    }
    SUBCASE("g^2 = 4") {
        SElement g = gen(SGenKind::G, 0);
        SElement got = f.sphere.multiply(g, g);
        SElement want = f.sphere.scale(Scalar(4, n), gen(SGenKind::One, 0));
        CHECK(f.sphere.equal(got, want));
    }
    SUBCASE("rho_1 xi_2 = 0") {
        CHECK(f.sphere.multiply(gen(SGenKind::Rho, 2), gen(SGenKind::Xi, 4)).is_zero());
    }
    SUBCASE("g xi_a = 2 rho_{a+1/2} and g rho_a = 2 xi_{a-1/2}") {
        SElement got = f.sphere.multiply(gen(SGenKind::G, 0), gen(SGenKind::Xi, 0));
        CHECK(f.sphere.equal(got, f.sphere.scale(Scalar(2, n), gen(SGenKind::Rho, 1))));
        SElement got2 = f.sphere.multiply(gen(SGenKind::G, 0), gen(SGenKind::Rho, 2));
        CHECK(f.sphere.equal(got2, f.sphere.scale(Scalar(2, n), gen(SGenKind::Xi, 1))));
    }
    SUBCASE("g mu_a = 0") {
        CHECK(f.sphere.multiply(gen(SGenKind::G, 0), gen(SGenKind::Mu, 2)).is_zero());
    }
    SUBCASE("commutative and associative over a generator sweep") {
        std::vector<SGenName> gens;
        for (long long a = -2; a <= 2; ++a) {
            gens.push_back(SGenName{SGenKind::Rho, 2 * a});
            gens.push_back(SGenName{SGenKind::Mu, 2 * a});
            gens.push_back(SGenName{SGenKind::Xi, 2 * a});
        }
        gens.push_back(SGenName{SGenKind::G, 0});
        for (const auto& x : gens)
            for (const auto& y : gens) {
                SElement xy = f.sphere.multiply(f.sphere.generator(x), f.sphere.generator(y));
                SElement yx = f.sphere.multiply(f.sphere.generator(y), f.sphere.generator(x));
                CHECK(f.sphere.equal(xy, yx));
            }
        for (const auto& x : gens)
            for (const auto& y : gens)
                for (const auto& z : gens) {
                    SElement a = f.sphere.multiply(
                        f.sphere.multiply(f.sphere.generator(x), f.sphere.generator(y)),
                        f.sphere.generator(z));
                    SElement b = f.sphere.multiply(
                        f.sphere.generator(x),
                        f.sphere.multiply(f.sphere.generator(y), f.sphere.generator(z)));
                    CHECK(f.sphere.equal(a, b));
                }
    }
}

TEST_CASE("Picard classification of P_{2n+1}") {
    Fixture f;
    CHECK(f.sphere.picard_class(1) == PicardClass::S);
    CHECK(f.sphere.picard_class(3) == PicardClass::T);
    CHECK(f.sphere.picard_class(9) == PicardClass::S);
    SUBCASE("lookup agrees with the d3 test across a range") {
        for (long long n = -12; n <= 12; ++n) CHECK_NOTHROW(f.sphere.picard_class(2 * n + 1));
    }
    CHECK_THROWS_AS(f.sphere.picard_class(2), DomainError);
}

TEST_CASE("attaching maps of the 2-cell structures") {
    Fixture f;
    using C = ClassicalSphere::Cofibering;
    SUBCASE("n = 0 vanishes") {
        CHECK(f.sphere.attaching_map(0, C::First).zero);
        CHECK(f.sphere.attaching_map(0, C::Second).zero);
    }
    SUBCASE("n = 2 second cofibering: 4 rho_{1/2}") {
        AttachingMap m = f.sphere.attaching_map(2, C::Second);
        CHECK(!m.zero);
        CHECK(!m.unit_coefficient);
        CHECK(m.coefficient == 4);
        CHECK(m.generator.kind == SGenKind::Rho);
        CHECK(m.generator.p2 == 1);
    }
    SUBCASE("n = 3 first cofibering: unit * mu_{-1}") {
        AttachingMap m = f.sphere.attaching_map(3, C::First);
        CHECK(m.unit_coefficient);
        CHECK(m.generator.kind == SGenKind::Mu);
        CHECK(m.generator.p2 == -2);
    }
    SUBCASE("every nonzero attaching map is simple 2-torsion") {
        for (long long n = -10; n <= 10; ++n)
            for (C side : {C::First, C::Second}) {
                AttachingMap m = f.sphere.attaching_map(n, side);
                if (m.zero) continue;
                Scalar coeff = m.unit_coefficient
                                   ? Scalar::one(f.p.precision)
                                   : Scalar(m.coefficient, f.p.precision);
                SElement elt = f.sphere.scale(Scalar(2, f.p.precision),
                                              f.sphere.from_name(m.generator, coeff));
                CHECK(elt.is_zero());
                CHECK(!f.sphere.from_name(m.generator, coeff).is_zero());
            }
    }
}
