#include <doctest.h>

#include "greensphere/query.hpp"
#include "greensphere/verify.hpp"

using namespace greensphere;

namespace {

Engine& engine() {
    static Engine instance{Params{}};
    return instance;
}

GreenElement ev(const std::string& expr) { return eval_green_expr(engine().green(), expr); }
SElement evs(const std::string& expr) { return eval_s_expr(engine().sphere(), expr); }
bool geq(const GreenElement& a, const GreenElement& b) { return engine().green().equal(a, b); }
bool seq(const SElement& a, const SElement& b) { return engine().sphere().equal(a, b); }

}  // namespace

TEST_CASE("green groups from table 1") {
    const GreenRing& green = engine().green();
    SUBCASE("(7,0) = Z2{w_1} + Z/2{w0 mu0 rho_{1,0}}") {
        GreenGroup g = green.group(7, 0);
        CHECK(g.module.free_rank == 1);
        CHECK(g.module.torsion == std::vector<int>{1});
        REQUIRE(g.names.size() == 2);
        CHECK(g.names[0].str() == "w[1]");
        CHECK(g.names[1].str() == "w[0]*mu[0,0]*rho[1,0]");
    }
    SUBCASE("(0,4) = Z2{t^4 h} + Z/2 + Z/2") {
        GreenGroup g = green.group(0, 4);
        CHECK(g.module.free_rank == 1);
        CHECK(g.module.torsion == std::vector<int>{1, 1});
        CHECK(g.names[0].str() == "tauh[2]");
    }
    SUBCASE("(7,3) = E_{2,1} = Z/4 + Z/32") {
        GreenGroup g = green.group(7, 3);
        CHECK(g.module.free_rank == 0);
        CHECK(g.module.torsion == std::vector<int>{2, 5});
    }
    SUBCASE("(0,0) has rank 2 plus two Z/2") {
        GreenGroup g = green.group(0, 0);
        CHECK(g.module.free_rank == 2);
        CHECK(g.module.torsion == std::vector<int>{1, 1});
    }
    SUBCASE("|E_{a,b}| = |S_{4a-1}| |S_{4b-1}| for a, b != 0") {
        for (long long a = -3; a <= 3; ++a)
            for (long long b = -3; b <= 3; ++b) {
                if (a == 0 || b == 0) continue;
                // E_{2a,b} sits at (8a-1, 4b-1)
                GreenGroup g = green.group(8 * a - 1, 4 * b - 1);
                CHECK(g.module.torsion_log2_order() ==
                      j_exp(2 * a).value() + j_exp(b).value());
            }
    }
}

TEST_CASE("normalization of table 2 words") {
    SUBCASE("w0^2 eta_1 = 2 w_1") { CHECK(geq(ev("w[0]*w[0]*eta[1]"), ev("2*w[1]"))); }
    SUBCASE("eta0 xi_{0,1} = w0^3 rho_{1,1}") {
        CHECK(geq(ev("eta[0]*xi[0,1]"), ev("w[0]^3*rho[1,1]")));
    }
    SUBCASE("mu_{1,0} rho_{0,1} = mu0 rho_{1,1}") {
        CHECK(geq(ev("mu[1,0]*rho[0,1]"), ev("mu[0,0]*rho[1,1]")));
    }
    SUBCASE("w0 xi = eta0^3 rho") { CHECK(geq(ev("w[0]*xi[2,1]"), ev("eta[0]^3*rho[2,1]"))); }
    SUBCASE("annihilations") {
        CHECK(ev("zeta[0,0]*zeta[1,2]").is_zero());
        CHECK(ev("rho[1,1]*rho[0,0]").is_zero());
        CHECK(ev("w[1]*tauh[2]").is_zero());
        CHECK(ev("eta[1]*tauh[2]").is_zero());
        CHECK(ev("mu[0,0]*xi[1,1]").is_zero());
    }
}

TEST_CASE("products from the section 4.2 lemmas") {
    SUBCASE("mu0^2 mu_{0,0} = 4 zeta... no, = 4 xi_{0,1}") {
        CHECK(geq(ev("mu[0,0]*mu[0,0]*mu[0,0]"), ev("4*xi[0,1]")));
    }
    SUBCASE("mu0^2 mu_{0,-1} = 4 xi_{0,0} + 2 u_{1,0} w0 eta0 xi_{0,0}") {
        GreenElement lhs = ev("mu[0,0]*mu[0,0]*mu[0,-1]");
        Scalar u = u_unit(1, 0, engine().params());
        GreenElement rhs = engine().green().add(
            ev("4*xi[0,0]"),
            engine().green().scale(Scalar(2, 32) * u, ev("w[0]*eta[0]*xi[0,0]")));
        CHECK(geq(lhs, rhs));
    }
    SUBCASE("zeta zeta = 0") { CHECK(ev("zeta[0,0]*zeta[1,2]").is_zero()); }
    SUBCASE("full lemma sweep with parameters in [-2,2]") {
        Report r = verify_product_lemmas(engine().green(), 2);
        for (const auto& f : r.failures) MESSAGE(f);
        CHECK(r.ok());
    }
}

TEST_CASE("restriction to the underlying sphere") {
    const GreenRing& green = engine().green();
    SUBCASE("res(w_1) = 8 rho_1, the 2^{j_2 - 1} pattern") {
        CHECK(seq(green.restriction(ev("w[1]")), evs("8*rho[1]")));
    }
    SUBCASE("res(eta_a) = mu_a") {
        for (long long a = -2; a <= 2; ++a)
            CHECK(seq(green.restriction(ev("eta[" + std::to_string(a) + "]")),
                      evs("mu[" + std::to_string(a) + "]")));
    }
    SUBCASE("res(tau^4 h) = 2") { CHECK(seq(green.restriction(ev("tauh[2]")), evs("2*1"))); }
    SUBCASE("res(w_0) = 0") { CHECK(green.restriction(ev("w[0]")).is_zero()); }
}

TEST_CASE("transfers from table 4") {
    const GreenRing& green = engine().green();
    SUBCASE("tr_4(1) = tau^4 h") { CHECK(geq(green.transfer(4, evs("1")), ev("tauh[2]"))); }
    SUBCASE("tr_1(1) = w0 mu_{0,0}") {
        CHECK(geq(green.transfer(1, evs("1")), ev("w[0]*mu[0,0]")));
    }
    SUBCASE("tr_0(1) = 2 - w0 eta0") {
        GreenElement expected = green.add(ev("2*1"), green.scale(-Scalar::one(32), ev("w[0]*eta[0]")));
        CHECK(geq(green.transfer(0, evs("1")), expected));
    }
    SUBCASE("tr_3(mu_1) = 4 eta0^2 rho_{1,1}") {
        CHECK(geq(green.transfer(3, evs("mu[1]")), ev("4*eta[0]^2*rho[1,1]")));
    }
    SUBCASE("twisted input is rejected") {
        CHECK_THROWS_AS(green.transfer(0, evs("g")), DomainError);
    }
    SUBCASE("omega0 tr = 0 over table 4 instances") {
        GreenElement w0 = ev("w[0]");
        for (long long a = -2; a <= 2; ++a)
            for (long long c = -8; c <= 8; ++c) {
                for (SGenKind kind : {SGenKind::Rho, SGenKind::MuRho, SGenKind::Mu,
                                      SGenKind::Mu2Rho, SGenKind::MuMu, SGenKind::Xi}) {
                    SElement alpha = engine().sphere().generator(SGenName{kind, 2 * a});
                    CHECK(green.multiply(w0, green.transfer(c, alpha)).is_zero());
                }
            }
    }
}

TEST_CASE("unit map") {
    const GreenRing& green = engine().green();
    SUBCASE("rho_1 -> rho_{1,2}") { CHECK(geq(green.unit_map(evs("rho[1]")), ev("rho[1,2]"))); }
    SUBCASE("mu_0 -> mu_{0,0}") { CHECK(geq(green.unit_map(evs("mu[0]")), ev("mu[0,0]"))); }
    SUBCASE("1 -> 1") { CHECK(geq(green.unit_map(evs("1")), ev("1"))); }
    SUBCASE("xi_0 -> xi_{0,1}") { CHECK(geq(green.unit_map(evs("xi[0]")), ev("xi[0,1]"))); }
}

TEST_CASE("Weyl action") {
    const GreenRing& green = engine().green();
    SUBCASE("c = 0 fixes the unit") {
        CHECK(seq(green.weyl_action(0, evs("1")), evs("1")));
    }
    SUBCASE("c = 1 negates the unit") {
        CHECK(seq(green.weyl_action(1, evs("1")), evs("-1*1")));
    }
    SUBCASE("zero maps to zero") {
        SElement zero = engine().sphere().zero(0, 0);
        CHECK(green.weyl_action(0, zero).is_zero());
    }
}

TEST_CASE("tau^4 periodicity shift") {
    const GreenRing& green = engine().green();
    SUBCASE("mu_{0,0} -> mu_{0,1}") {
        GreenElement shifted = green.tau4_shift(ev("mu[0,0]"));
        CHECK(geq(shifted, ev("mu[0,1]")));
    }
    SUBCASE("xi_{0,0} rejected: coweight -1 mod 4") {
        CHECK_THROWS_AS(green.tau4_shift(ev("xi[0,0]")), DomainError);
    }
    SUBCASE("tau^4 h -> tau^8 h") {
        CHECK(geq(green.tau4_shift(ev("tauh[2]")), ev("tauh[4]")));
    }
    SUBCASE("non-torsion elements rejected") {
        CHECK_THROWS_AS(green.tau4_shift(ev("1")), DomainError);
    }
}

TEST_CASE("descent verification in a small window") {
    const GreenRing& green = engine().green();
    SUBCASE("(0,2) is Z2{t^2 h}") {
        GreenGroup g = green.group(0, 2);
        CHECK(g.module.free_rank == 1);
        CHECK(g.module.torsion.empty());
        CHECK(g.names[0].str() == "tauh[1]");
    }
    SUBCASE("E_{1,1} = Z/8 + Z/8 at (3,3)") {
        GreenGroup g = green.group(3, 3);
        CHECK(g.module.torsion == std::vector<int>{3, 3});
    }
    SUBCASE("window (-1..1)^2 matches the descent") {
        Report r = green.verify_hfpss(1);
        for (const auto& f : r.failures) MESSAGE(f);
        CHECK(r.ok());
    }
}

TEST_CASE("Mackey axioms in a small window") {
    Report r = engine().green().verify_axioms(3);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
}

TEST_CASE("im(tr) = ker(omega0) at (0,1)") {
    const GreenRing& green = engine().green();
    IntMat rels = green.relations(0, 1);
    IntMat tr = green.tr_matrix(0, 1);
    KerCoker om = hom_ker_coker(green.omega_matrix(0, 1), rels, green.relations(-1, 1));
    CHECK(subgroups_equal(tr.hcat(rels), om.ker_lattice, rels, 32));
    // both are everything: Z/2{w0 mu00} + Z/2{w0 mu0^2 rho00}
    FGModule sub = subgroup_module(tr, rels);
    CHECK(sub.same_type(green.group(0, 1).module));
}

TEST_CASE("the subring R of pi_{*,0} closes under multiplication") {
    const GreenRing& green = engine().green();
    for (long long a = -3; a <= 3; ++a) {
        GreenElement lhs = ev("eta[0]^3*eta[" + std::to_string(a) + "]");
        GreenElement rhs = ev("w[0]^3*w[" + std::to_string(a + 1) + "]");
        CHECK(geq(lhs, rhs));
    }
    // closure: products of R basis names stay in the named R classes
    std::vector<std::string> r_names = {"w[0]^3*w[1]", "w[0]^2*w[1]", "w[0]*w[1]", "w[1]",
                                        "w[0]*eta[1]", "eta[1]", "eta[0]*eta[1]",
                                        "eta[0]^2*eta[1]", "1"};
    for (const auto& x : r_names)
        for (const auto& y : r_names) {
            GreenElement prod = green.multiply(ev(x), ev(y));
            GreenGroup g = green.group(prod.s, prod.c);
            for (size_t i = 0; i < g.names.size(); ++i) {
                if (prod.coeff[i].is_zero()) continue;
                // only coweight-0 row names may occur
                CHECK(green.tables().table1[size_t(g.names[i].row)].group.kind == GroupKind::Z2);
            }
        }
}

TEST_CASE("restriction and unit coherence") {
    Report r = verify_restriction_unit(engine().green(), 1);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
}

TEST_CASE("normal form confluence on generator triples, small parameters") {
    Report r = verify_closure(engine().green(), 1);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
}
