#include "greensphere/ku_ring.hpp"

#include <sstream>

namespace greensphere {

std::string KUMonomial::str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const char* sym, long long e) {
        if (e == 0) return;
        if (!first) os << "*";
        os << sym;
        if (e != 1) os << "^" << e;
        first = false;
    };
    emit("b", i);
    emit("t", 2 * j);
    emit("r", m);
    if (first) os << "1";
    return os.str();
}

bool KUElement::is_zero() const {
    for (const auto& a : coeff)
        if (!a.is_zero()) return false;
    return true;
}

KURing::KURing(Params params) : params_(params) { params_.validate(); }

std::vector<KUMonomial> KURing::basis(long long s, long long c) const {
    std::vector<KUMonomial> out;
    if (((c % 2) + 2) % 2 == 1) return out;
    if (((s % 2) + 2) % 2 == 0) {
        out.push_back(KUMonomial{s / 2, (c - s) / 2, 0});
        out.push_back(KUMonomial{s / 2 + 1, (c - s - 2) / 2, 2});
    } else {
        out.push_back(KUMonomial{(s + 1) / 2, (c - s - 1) / 2, 1});
    }
    return out;
}

FGModule KURing::group(long long s, long long c) const {
    auto b = basis(s, c);
    FGModule m = FGModule::free(int(b.size()));
    for (const auto& mono : b) m.basis_names.push_back(mono.str());
    return m;
}

KUElement KURing::zero(long long s, long long c) const {
    KUElement x;
    x.s = s;
    x.c = c;
    x.coeff.assign(basis(s, c).size(), Scalar::zero(params_.precision));
    return x;
}

int KURing::slot_of(const KUElement& x, int m) const {
    if (((x.s % 2) + 2) % 2 == 0) {
        if (m == 0) return 0;
        if (m == 2) return 1;
    } else if (m == 1) {
        return 0;
    }
    throw DomainError("KURing: monomial not in canonical basis");
}

void KURing::add_monomial(KUElement& x, const KUMonomial& mono, const Scalar& coeff) const {
    KUMonomial m = mono;
    Scalar a = coeff;
    Scalar two(2, params_.precision);
    while (m.m >= 3) {  // r^m X = 2 r^{m-2} t^2 b^{-1} X, valid for m >= 3
        a = a * two;
        m.i -= 1;
        m.j += 1;
        m.m -= 2;
    }
    if (m.stem() != x.s || m.coweight() != x.c)
        throw DomainError("KURing: bidegree mismatch");
    int slot = slot_of(x, m.m);
    x.coeff[slot] = x.coeff[slot] + a;
}

KUElement KURing::monomial_element(const KUMonomial& mono, Scalar coeff) const {
    KUMonomial m = mono;
    // normalize before fixing the bidegree (reduction preserves it)
    KUElement x = zero(m.stem(), m.coweight());
    add_monomial(x, mono, coeff);
    return x;
}

KUElement KURing::from_monomial(const KUMonomial& mono) const {
    return monomial_element(mono, Scalar::one(params_.precision));
}

KUElement KURing::add(const KUElement& x, const KUElement& y) const {
    if (x.s != y.s || x.c != y.c) throw DomainError("KURing::add: bidegree mismatch");
    KUElement r = x;
    for (size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] = r.coeff[i] + y.coeff[i];
    return r;
}

KUElement KURing::scale(const Scalar& a, const KUElement& x) const {
    KUElement r = x;
    for (auto& v : r.coeff) v = a * v;
    return r;
}

KUElement KURing::multiply(const KUElement& x, const KUElement& y) const {
    KUElement r = zero(x.s + y.s, x.c + y.c);
    auto bx = basis(x.s, x.c);
    auto by = basis(y.s, y.c);
    for (size_t p = 0; p < bx.size(); ++p) {
        if (x.coeff[p].is_zero()) continue;
        for (size_t q = 0; q < by.size(); ++q) {
            if (y.coeff[q].is_zero()) continue;
            KUMonomial prod{bx[p].i + by[q].i, bx[p].j + by[q].j, bx[p].m + by[q].m};
            add_monomial(r, prod, x.coeff[p] * y.coeff[q]);
        }
    }
    return r;
}

KUElement KURing::psi(long long k, const KUElement& x) const {
    if ((k & 1) == 0) throw DomainError("psi requires odd k");
    int n = params_.precision, wide = n + 8;
    KUElement r = zero(x.s, x.c);
    auto bx = basis(x.s, x.c);
    for (size_t p = 0; p < bx.size(); ++p) {
        if (x.coeff[p].is_zero()) continue;
        const KUMonomial& m = bx[p];
        if (m.m >= 1) {
            Scalar factor = unit_pow(k, m.i + m.j, n);
            add_monomial(r, m, x.coeff[p] * factor);
        } else {
            Scalar ki = unit_pow(k, m.i, n);
            add_monomial(r, m, x.coeff[p] * ki);
            // tau-twist correction lands on the m = 2 slot
            Scalar half_kj = Scalar(unit_pow(k, m.j, wide).value() - 1, wide).half();
            Scalar corr = Scalar(half_kj.value(), n) * ki * x.coeff[p];
            add_monomial(r, KUMonomial{m.i + 1, m.j - 1, 2}, corr);
        }
    }
    return r;
}

KUElement KURing::rho_action(const KUElement& x) const {
    KUElement r = zero(x.s - 1, x.c);
    auto bx = basis(x.s, x.c);
    for (size_t p = 0; p < bx.size(); ++p) {
        if (x.coeff[p].is_zero()) continue;
        add_monomial(r, KUMonomial{bx[p].i, bx[p].j, bx[p].m + 1}, x.coeff[p]);
    }
    return r;
}

KUElement KURing::h_class() const {
    // h = 2 - r^2 t^{-2} b
    KUElement h = zero(0, 0);
    h.coeff[0] = Scalar(2, params_.precision);
    h.coeff[1] = -Scalar::one(params_.precision);
    return h;
}

KUElement KURing::unit_class() const {
    KUElement e = zero(0, 0);
    e.coeff[0] = Scalar::one(params_.precision);
    return e;
}

IntMat KURing::rho_power_matrix(long long s, long long c, int t) const {
    auto src = basis(s + t, c);
    auto dst = basis(s, c);
    IntMat m(int(dst.size()), int(src.size()));
    for (size_t q = 0; q < src.size(); ++q) {
        KUMonomial mono{src[q].i, src[q].j, src[q].m + t};
        BigInt coeff = 1;
        while (mono.m >= 3) {
            coeff <<= 1;
            mono.i -= 1;
            mono.j += 1;
            mono.m -= 2;
        }
        for (size_t p = 0; p < dst.size(); ++p)
            if (dst[p].i == mono.i && dst[p].j == mono.j && dst[p].m == mono.m)
                m.at(int(p), int(q)) = coeff;
    }
    return m;
}

IntMat KURing::psi_matrix(long long s, long long c, long long k) const {
    if ((k & 1) == 0) throw DomainError("psi requires odd k");
    auto b = basis(s, c);
    IntMat m(int(b.size()), int(b.size()));
    int wide = working_precision();
    auto kpow = [&](long long e) -> BigInt {
        if (k == -1) return (e % 2 == 0) ? BigInt(1) : BigInt(-1);
        return unit_pow(k, e, wide).value();
    };
    for (size_t q = 0; q < b.size(); ++q) {
        const KUMonomial& mono = b[q];
        if (mono.m >= 1) {
            m.at(int(q), int(q)) = kpow(mono.i + mono.j) - 1;
        } else {
            m.at(0, int(q)) = kpow(mono.i) - 1;
            BigInt corr = kpow(mono.i) * ((kpow(mono.j) - 1) / 2);
            m.at(1, int(q)) = corr;  // m = 2 slot
        }
    }
    return m;
}

std::pair<FGModule, FGModule> KURing::finite_stunted(long long s, long long c, int n) const {
    if (n < 0) throw DomainError("finite_stunted: n >= 0 required");
    IntMat f = rho_power_matrix(s, c, n + 1);
    FGModule coker = cokernel(f, f.rows());
    IntMat ker = kernel(f);
    return {coker, FGModule::free(ker.cols())};
}

std::optional<long long> KURing::stunted_log2_order(long long s, long long c, int n) const {
    IntMat f = rho_power_matrix(s, c, n + 1);
    FGModule coker = cokernel(f, f.rows());
    // kernel term of the long exact sequence sits one coweight lower
    IntMat fk = rho_power_matrix(s - 1, c - 1, n + 1);
    IntMat ker = kernel(fk);
    if (!coker.is_finite() || ker.cols() > 0) {
        if (!coker.is_finite()) return std::nullopt;
        if (ker.cols() > 0) return std::nullopt;
    }
    return coker.torsion_log2_order();
}

}  // namespace greensphere
