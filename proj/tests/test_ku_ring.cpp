#include <doctest.h>

#include "greensphere/ku_ring.hpp"

using namespace greensphere;

namespace {

Params params() { return Params{}; }

struct Lcg {
    unsigned long long state = 0xdeadbeef12345678ull;
    long long next(long long lo, long long hi) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return lo + (long long)((state >> 33) % (unsigned long long)(hi - lo + 1));
    }
};

}  // namespace

TEST_CASE("ku groups by parity") {
    KURing ku(params());
    SUBCASE("(0,0) is Z2^2 on 1 and z") {
        FGModule m = ku.group(0, 0);
        CHECK(m.free_rank == 2);
        CHECK(m.torsion.empty());
        // z = r^2 t^{-2} b occupies the m = 2 slot
        CHECK(m.basis_names[0] == "1");
        CHECK(m.basis_names[1] == "b*t^-2*r^2");
    }
    CHECK(ku.group(1, 0).free_rank == 1);
    CHECK(ku.group(0, 1).is_zero());
}

TEST_CASE("ku multiplication") {
    KURing ku(params());
    SUBCASE("rho * h = 0") {
        KUElement rho = ku.from_monomial(KUMonomial{0, 0, 1});
        CHECK(ku.multiply(rho, ku.h_class()).is_zero());
    }
    SUBCASE("z * z = 2z") {
        KUElement z = ku.from_monomial(KUMonomial{1, -1, 2});
        KUElement zz = ku.multiply(z, z);
        KUElement two_z = ku.scale(Scalar(2, params().precision), z);
        CHECK(zz.coeff[0] == two_z.coeff[0]);
        CHECK(zz.coeff[1] == two_z.coeff[1]);
    }
    SUBCASE("1 * x = x") {
        KUElement x = ku.from_monomial(KUMonomial{3, -2, 1});
        KUElement y = ku.multiply(ku.unit_class(), x);
        CHECK(y.coeff[0] == x.coeff[0]);
    }
}

TEST_CASE("Adams operations on b(KU)") {
    KURing ku(params());
    int n = params().precision;
    SUBCASE("psi^3(b) = 3b") {
        KUElement b = ku.from_monomial(KUMonomial{1, 0, 0});
        KUElement y = ku.psi(3, b);
        CHECK(y.coeff[0].value() == 3);
        CHECK(y.coeff[1].is_zero());
    }
    SUBCASE("psi^3(rho) = rho") {
        KUElement rho = ku.from_monomial(KUMonomial{0, 0, 1});
        KUElement y = ku.psi(3, rho);
        CHECK(y.coeff[0].value() == 1);
    }
    SUBCASE("psi^3(t^2) = t^2 + r^2 b") {
        KUElement t2 = ku.from_monomial(KUMonomial{0, 1, 0});
        KUElement y = ku.psi(3, t2);
        CHECK(y.coeff[0].value() == 1);  // t^2 slot
        CHECK(y.coeff[1].value() == 1);  // r^2 b slot: (1/2)(3-1) = 1
    }
    SUBCASE("psi^k psi^l = psi^{kl} on a monomial sweep") {
        for (long long i = -6; i <= 6; i += 3)
            for (long long j = -6; j <= 6; j += 3)
                for (int m = 0; m <= 4; ++m) {
                    KUElement x = ku.from_monomial(KUMonomial{i, j, m});
                    KUElement lhs = ku.psi(3, ku.psi(5, x));
                    KUElement rhs = ku.psi(15, x);
                    REQUIRE(lhs.coeff.size() == rhs.coeff.size());
                    for (size_t t = 0; t < lhs.coeff.size(); ++t) CHECK(lhs.coeff[t] == rhs.coeff[t]);
                }
    }
    SUBCASE("psi commutes with rho") {
        for (long long i = -3; i <= 3; ++i) {
            KUElement x = ku.from_monomial(KUMonomial{i, -i, 0});
            KUElement lhs = ku.psi(3, ku.rho_action(x));
            KUElement rhs = ku.rho_action(ku.psi(3, x));
            for (size_t t = 0; t < lhs.coeff.size(); ++t) CHECK(lhs.coeff[t] == rhs.coeff[t]);
        }
    }
    SUBCASE("rho h x = 0 for random x") {
        Lcg rng;
        KUElement rho = ku.from_monomial(KUMonomial{0, 0, 1});
        KUElement rh = ku.multiply(rho, ku.h_class());
        for (int t = 0; t < 100; ++t) {
            long long s = 2 * rng.next(-8, 8), c = 2 * rng.next(-8, 8);
            KUElement x = ku.zero(s, c);
            for (auto& a : x.coeff) a = Scalar(rng.next(0, 1 << 20), n);
            CHECK(ku.multiply(rh, x).is_zero());
        }
    }
}

TEST_CASE("rho action and exactness against the underlying ring") {
    KURing ku(params());
    SUBCASE("rho shifts the basis") {
        KUElement one = ku.unit_class();
        KUElement r = ku.rho_action(one);
        CHECK(r.s == -1);
        CHECK(r.coeff[0].value() == 1);
    }
    SUBCASE("ker(res) = im(rho) on every even bidegree: the m >= 1 slots") {
        // res kills exactly the monomials with m >= 1, and rho surjects onto them
        for (long long s = -6; s <= 6; ++s)
            for (long long c = -6; c <= 6; c += 2) {
                IntMat rho = ku.rho_power_matrix(s, c, 1);
                auto dst = ku.basis(s, c);
                // every m >= 1 basis monomial of the target must be hit exactly
                for (size_t p = 0; p < dst.size(); ++p) {
                    bool hit = false;
                    for (int q = 0; q < rho.cols(); ++q)
                        if (rho.at(int(p), q) == 1) hit = true;
                    CHECK(hit == (dst[p].m >= 1));
                }
            }
    }
}

TEST_CASE("finite stunted projective spectra through b(KU)") {
    KURing ku(params());
    SUBCASE("odd coweight gives the zero pair") {
        auto [coker, ker] = ku.finite_stunted(0, 1, 3);
        CHECK(coker.is_zero());
        CHECK(ker.is_zero());
    }
    SUBCASE("order of KU^0(P_1^{2t}) is 2^t") {
        for (int t = 1; t <= 8; ++t) {
            auto [coker, ker] = ku.finite_stunted(1, 0, 2 * t - 1);
            CHECK(ker.is_zero());
            CHECK(coker.torsion_log2_order() == t);
            CHECK(coker.is_finite());
            auto order = ku.stunted_log2_order(1, 0, 2 * t - 1);
            REQUIRE(order.has_value());
            CHECK(*order == t);
        }
    }
    SUBCASE("cross-check against the truncated Z2[[z]]/(2z - z^2) module") {
        // cell-by-cell presentation of reduced KU^0 P_1^{2t}: basis z..z^{2t},
        // relations z^{j+1} = 2 z^j with z^{2t+1} = 0
        for (int t = 1; t <= 6; ++t) {
            int cells = 2 * t;
            IntMat rels(cells, cells);
            for (int j = 0; j < cells; ++j) {
                rels.at(j, j) = -2;
                if (j + 1 < cells) rels.at(j + 1, j) = 1;
            }
            FGModule m = cokernel(rels, cells);
            CHECK(m.is_finite());
            CHECK(m.torsion_log2_order() == t);
        }
    }
}
