#include "greensphere/verify.hpp"

#include <sstream>

namespace greensphere {

namespace {

std::string at(long long s, long long c) {
    return "(" + std::to_string(s) + "," + std::to_string(c) + ")";
}

GenName w(long long a) { return GenName{Family::W, a, 0}; }
GenName eta(long long a) { return GenName{Family::Eta, a, 0}; }
GenName tauh(long long t) { return GenName{Family::Tauh, t, 0}; }
GenName mu(long long a, long long b) { return GenName{Family::Mu, a, b}; }
GenName zeta(long long a, long long b) { return GenName{Family::Zeta, a, b}; }
GenName rho(long long a, long long b) { return GenName{Family::Rho, a, b}; }
GenName xi(long long a, long long b) { return GenName{Family::Xi, a, b}; }

}  // namespace

Report verify_e2_window(const KORing& ko, int window, int nmax) {
    Report report;
    for (long long s = -window; s <= window; ++s)
        for (long long c = -window; c <= window; ++c)
            for (int n = 0; n <= nmax; ++n) {
                ++report.checks;
                try {
                    ko.e2_page(s, c, n);
                } catch (const VerificationError& e) {
                    report.fail(e.what());
                }
            }
    return report;
}

Report verify_d3_window(const KORing& ko, int window, int filt_max) {
    Report report;
    for (long long s = -window; s <= window; ++s)
        for (long long c = -window; c <= window; ++c) {
            for (int n = 0; n <= filt_max; ++n) {
                for (const auto& mono : ko.e2_basis(s, c, n)) {
                    ++report.checks;
                    E2Class dd = ko.d3(ko.d3_monomial(mono));
                    if (!dd.is_zero()) report.fail("d3^2 != 0 on " + mono.str());
                }
            }
            // E4 vanishes above filtration 2, so d_r for r >= 4 always has zero
            // source or target.
            for (int n = 0; n <= 2; ++n) {
                if (ko.e4_page(s, c, n).is_zero()) continue;
                for (int r = 4; r <= 12; ++r) {
                    ++report.checks;
                    if (!ko.e4_page(s - 1, c - 1, n + r).is_zero())
                        report.fail("nonzero d_" + std::to_string(r) + " target at " + at(s, c));
                }
            }
        }
    return report;
}

Report verify_classical(const Engine& engine, int gamma_max, int div_max, int pic_max) {
    Report report;
    const KORing& ko = engine.ko();
    int prec = engine.params().precision;

    for (int n = 0; n <= gamma_max; ++n) {
        ++report.checks;
        long long got = ko.stunted_p1_log2_order(n);
        if (got != gamma_rh(n))
            report.fail("|KO^0(P_1^" + std::to_string(n) + ")| = 2^" + std::to_string(got) +
                        ", expected 2^" + std::to_string(gamma_rh(n)));
    }

    for (int n = 0; n <= div_max; ++n) {
        ++report.checks;
        KOElement x = ko.scale(Scalar(BigInt(1) << unsigned(gamma_rh(n)), prec),
                               ko.core_element(0, 0, KOCore::RE));
        auto witness = ko.divisible_by_rho(x, n + 1);
        if (!witness) {
            report.fail("2^gamma(" + std::to_string(n) + ") rho eta0 not divisible by rho^" +
                        std::to_string(n + 1));
            continue;
        }
        KOElement back = *witness;
        for (int i = 0; i < n + 1; ++i) back = ko.multiply(ko.core_element(0, 0, KOCore::R), back);
        KOElement diff = ko.add(back, ko.scale(-Scalar::one(prec), x));
        if (!diff.is_zero())
            report.fail("divisibility witness fails to verify at n = " + std::to_string(n));
    }

    for (long long n = -pic_max; n <= pic_max; ++n) {
        ++report.checks;
        try {
            PicardClass got = engine.sphere().picard_class(2 * n + 1);
            long long r = ((n % 4) + 4) % 4;
            PicardClass want = (r == 0 || r == 3) ? PicardClass::S : PicardClass::T;
            if (got != want) report.fail("picard lookup wrong at n = " + std::to_string(n));
        } catch (const VerificationError& e) {
            report.fail(e.what());
        }
    }
    return report;
}

namespace {

std::vector<GenName> generator_instances(int range) {
    std::vector<GenName> gens;
    for (long long a = -range; a <= range; ++a) {
        gens.push_back(w(a));
        gens.push_back(eta(a));
        if (a != 0) gens.push_back(tauh(a));
    }
    for (long long a = -range; a <= range; ++a)
        for (long long b = -range; b <= range; ++b) {
            gens.push_back(mu(a, b));
            gens.push_back(zeta(a, b));
            gens.push_back(rho(a, b));
            gens.push_back(xi(a, b));
        }
    return gens;
}

}  // namespace

Report verify_closure(const GreenRing& green, int range) {
    Report report;
    auto gens = generator_instances(range);
    std::vector<GreenElement> nf(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        ++report.checks;
        try {
            nf[i] = green.normalize(GenWord{gens[i]});
        } catch (const std::exception& e) {
            report.fail(std::string("generator fails to normalize: ") + e.what());
            return report;
        }
    }
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = i; j < gens.size(); ++j) {
            ++report.checks;
            try {
                GreenElement direct = green.normalize(GenWord{gens[i], gens[j]});
                GreenElement split = green.multiply(nf[i], nf[j]);
                if (!green.equal(direct, split))
                    report.fail("pair normal forms disagree: " + gens[i].str() + " * " +
                                gens[j].str());
            } catch (const std::exception& e) {
                report.fail(std::string("pair fails: ") + gens[i].str() + " * " + gens[j].str() +
                            ": " + e.what());
            }
        }
    }
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = i; j < gens.size(); ++j) {
            GreenElement nij = green.normalize(GenWord{gens[i], gens[j]});
            for (size_t k = j; k < gens.size(); ++k) {
                ++report.checks;
                try {
                    GreenElement direct = green.normalize(GenWord{gens[i], gens[j], gens[k]});
                    GreenElement left = green.multiply(nij, nf[k]);
                    if (!green.equal(direct, left)) {
                        report.fail("association (ij)k disagrees at " + gens[i].str() + "," +
                                    gens[j].str() + "," + gens[k].str());
                        continue;
                    }
                    GreenElement njk = green.normalize(GenWord{gens[j], gens[k]});
                    GreenElement right = green.multiply(nf[i], njk);
                    if (!green.equal(direct, right)) {
                        report.fail("association i(jk) disagrees at " + gens[i].str() + "," +
                                    gens[j].str() + "," + gens[k].str());
                        continue;
                    }
                    GreenElement nik = green.normalize(GenWord{gens[i], gens[k]});
                    GreenElement mid = green.multiply(nik, nf[j]);
                    if (!green.equal(direct, mid))
                        report.fail("association (ik)j disagrees at " + gens[i].str() + "," +
                                    gens[j].str() + "," + gens[k].str());
                } catch (const std::exception& e) {
                    report.fail(std::string("triple fails: ") + gens[i].str() + "," +
                                gens[j].str() + "," + gens[k].str() + ": " + e.what());
                }
            }
        }
    }
    return report;
}

Report verify_product_lemmas(const GreenRing& green, int range) {
    Report report;
    int prec = green.params().precision;
    auto nf = [&](std::initializer_list<GenName> gens) {
        return green.normalize(GenWord(gens));
    };
    auto scaled = [&](const BigInt& coeff, std::initializer_list<GenName> gens) {
        return green.normalize(GenWord(gens), Scalar(coeff, prec));
    };
    auto check = [&](const GreenElement& lhs, const GreenElement& rhs, const std::string& what) {
        ++report.checks;
        if (!green.equal(lhs, rhs)) report.fail("lemma instance fails: " + what);
    };
    auto p2jm1 = [&](long long arg) -> BigInt {
        ExtNat e = j_exp(arg);
        if (e.is_infinite()) return 0;
        return pow2(ExtNat(e.value() - 1));
    };

    for (long long a = -range; a <= range; ++a)
        for (long long b = -range; b <= range; ++b) {
            check(nf({w(0), w(0), eta(a)}), scaled(2, {w(a)}), "w0^2 eta_a = 2 w_a");
            check(nf({eta(0), eta(0), w(a)}), scaled(2, {eta(a)}), "eta0^2 w_a = 2 eta_a");
            check(nf({eta(0), eta(0), eta(0), eta(a)}), nf({w(0), w(0), w(0), w(a + 1)}),
                  "eta0^3 eta_a = w0^3 w_{a+1}");
            if (b != 0) {
                check(green.multiply(nf({w(a)}), nf({tauh(2 * b)})), green.zero(8 * a - 1 - 0, 4 * b),
                      "w_a tau^{4b}h = 0");
                check(green.multiply(nf({eta(a)}), nf({tauh(2 * b)})),
                      green.zero(8 * a + 1, 4 * b), "eta_a tau^{4b}h = 0");
            }
            for (long long c = -range; c <= range; ++c) {
                check(nf({w(a), mu(b, c)}), nf({w(0), mu(a + b, c)}),
                      "w_a mu_{b,c} = w0 mu_{a+b,c}");
                check(nf({eta(a), mu(b, c)}), nf({eta(0), mu(a + b, c)}),
                      "eta_a mu_{b,c} = eta0 mu_{a+b,c}");
                check(nf({w(a), eta(b + c)}), nf({w(a + b), eta(c)}),
                      "w_a eta_{b+c} = w_{a+b} eta_c");
                check(nf({eta(a), zeta(b, c)}), green.zero(8 * (a + b) + 4, 4 * c + 1),
                      "eta_a zeta_{b,c} = 0");
                check(nf({w(a), zeta(b, c)}), nf({eta(0), mu(0, 0), mu(0, 0), rho(a + b, c)}),
                      "w_a zeta_{b,c} = eta0 mu0^2 rho_{a+b,c}");
                check(nf({eta(a), tauh(2 * b + 1)}), nf({w(0), mu(0, 0), mu(a, b)}),
                      "eta_a tau^{4b+2}h = w0 mu0 mu_{a,b}");
                check(nf({mu(a, b), tauh(2 * c)}),
                      c == 0 ? green.scale(-Scalar::one(prec), nf({w(0), eta(0), mu(a, b)}))
                             : nf({w(0), eta(0), mu(a, b + c)}),
                      "mu_{a,b} tau^{4c}h = w0 eta0 mu_{a,b+c}");
                check(nf({mu(a, b), tauh(2 * c + 1)}),
                      scaled(p2jm1(b + c + 1), {eta(0), eta(0), rho(a, b + c + 1)}),
                      "mu_{a,b} tau^{4c+2}h = 2^{j-1} eta0^2 rho_{a,b+c+1}");
            }
        }

    // note tau^{4c}h with c = 0 is not a generator; the c = 0 case above checks
    // mu * h = mu (2 - w0 eta0) = -w0 eta0 mu = w0 eta0 mu mod 2.

    for (long long a = -range; a <= range; ++a)
        for (long long b = -range; b <= range; ++b)
            for (long long c = -range; c <= range; ++c)
                for (long long d = -range; d <= range; ++d) {
                    check(nf({mu(a, b), mu(c, d)}), nf({mu(0, 0), mu(a + c, b + d)}),
                          "mu mu = mu0 mu shifted");
                    check(nf({w(a), w(b), mu(c, d)}),
                          scaled(p2jm1(2 * (a + b + c)), {tauh(1), rho(a + b + c, d)}),
                          "w w mu = 2^{j-1} t2h rho");
                    check(nf({eta(a), eta(b), mu(c, d)}), scaled(4, {zeta(a + b + c, d)}),
                          "eta eta mu = 4 zeta");
                }

    for (long long a = -range; a <= range; ++a)
        for (long long b = -range; b <= range; ++b) {
            check(nf({mu(0, 0), mu(0, 0), mu(a, 2 * b)}), scaled(4, {xi(a, 2 * b + 1)}),
                  "mu0^2 mu_{a,2b} = 4 xi_{a,2b+1}");
            GreenElement rhs = green.add(
                scaled(4, {xi(a, 2 * b)}),
                scaled(2 * u_unit(2 * a + 1, 2 * b, green.params()).value(),
                       {w(0), eta(0), xi(a, 2 * b)}));
            check(nf({mu(0, 0), mu(0, 0), mu(a, 2 * b - 1)}), rhs,
                  "mu0^2 mu_{a,2b-1} = 4 xi + 2u w0 eta0 xi");
            check(green.multiply(nf({w(0)}), nf({mu(0, 0), mu(0, 0), mu(a, b)})),
                  scaled(p2jm1(b + 1), {eta(0), eta(0), eta(0), rho(a, b + 1)}),
                  "w0 mu0^2 mu_{a,b} = 2^{j_{b+1}-1} eta0^3 rho_{a,b+1}");
            // tau^{2a}h tau^{2b}h = 2 tau^{2(a+b)}h
            if (a != 0 && b != 0) {
                GreenElement lhs = nf({tauh(a), tauh(b)});
                GreenElement expect =
                    (a + b != 0)
                        ? scaled(2, {tauh(a + b)})
                        : green.add(scaled(4, {}),
                                    green.scale(-Scalar(2, prec), nf({w(0), eta(0)})));
                check(lhs, expect, "t^{2a}h t^{2b}h = 2 t^{2(a+b)}h");
            }
        }
    return report;
}

Report verify_restriction_unit(const GreenRing& green, int range) {
    Report report;
    const ClassicalSphere& sphere = green.sphere();
    auto gens = generator_instances(range);
    std::vector<GreenElement> nf(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) nf[i] = green.normalize(GenWord{gens[i]});
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i; j < gens.size(); ++j) {
            ++report.checks;
            SElement lhs = green.restriction(green.multiply(nf[i], nf[j]));
            SElement rhs = sphere.multiply(green.restriction(nf[i]), green.restriction(nf[j]));
            if (!sphere.equal(lhs, rhs))
                report.fail("res not multiplicative on " + gens[i].str() + " * " + gens[j].str());
        }

    for (long long a = -1; a <= 1; ++a)
        for (long long b = -1; b <= 1; ++b)
            for (long long c = -1; c <= 1; ++c) {
                ++report.checks;
                SElement got = green.restriction(
                    green.normalize(GenWord{eta(a), eta(b), eta(c)}));
                SElement want = sphere.scale(
                    Scalar(4, green.params().precision),
                    sphere.generator(SGenName{SGenKind::Xi, 2 * (a + b + c)}));
                if (!sphere.equal(got, want))
                    report.fail("res(eta eta eta) != 4 xi at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
            }

    for (long long a = -range; a <= range; ++a) {
        for (SGenKind kind : {SGenKind::Rho, SGenKind::Mu, SGenKind::Xi, SGenKind::MuRho,
                              SGenKind::Mu2Rho, SGenKind::MuMu}) {
            ++report.checks;
            SGenName name{kind, 2 * a};
            SElement alpha = sphere.generator(name);
            SElement back = green.restriction(green.unit_map(alpha));
            if (!sphere.equal(back, alpha))
                report.fail("res(unit(" + name.str() + ")) != " + name.str());
        }
    }
    return report;
}

}  // namespace greensphere
