#include "greensphere/classical_sphere.hpp"

#include <algorithm>
#include <sstream>

namespace greensphere {

namespace {

std::string half_str(long long p2) {
    if (p2 % 2 == 0) return std::to_string(p2 / 2);
    return std::to_string(p2) + "/2";
}

}  // namespace

long long SGenName::stem() const {
    switch (kind) {
        case SGenKind::One: return 0;
        case SGenKind::G: return 0;
        case SGenKind::Rho: return 4 * p2 - 1;
        case SGenKind::MuRho: return 4 * p2;
        case SGenKind::Mu: return 4 * p2 + 1;
        case SGenKind::Mu2Rho: return 4 * p2 + 1;
        case SGenKind::MuMu: return 4 * p2 + 2;
        case SGenKind::Xi: return 4 * p2 + 3;
    }
    return 0;
}

int SGenName::twist() const {
    if (kind == SGenKind::One) return 0;
    if (kind == SGenKind::G) return 1;
    return int(((p2 % 2) + 2) % 2);
}

std::string SGenName::str() const {
    switch (kind) {
        case SGenKind::One: return "1";
        case SGenKind::G: return "g";
        case SGenKind::Rho: return "rho[" + half_str(p2) + "]";
        case SGenKind::MuRho: return "mu0*rho[" + half_str(p2) + "]";
        case SGenKind::Mu: return "mu[" + half_str(p2) + "]";
        case SGenKind::Mu2Rho: return "mu0^2*rho[" + half_str(p2) + "]";
        case SGenKind::MuMu: return "mu0*mu[" + half_str(p2) + "]";
        case SGenKind::Xi: return "xi[" + half_str(p2) + "]";
    }
    return "?";
}

bool SElement::is_zero() const {
    for (const auto& a : coeff)
        if (!a.is_zero()) return false;
    return true;
}

std::string AttachingMap::str() const {
    if (zero) return "0";
    std::ostringstream os;
    if (unit_coefficient)
        os << "(unit)*";
    else if (coefficient != 1)
        os << coefficient.str() << "*";
    os << generator.str();
    return os.str();
}

ClassicalSphere::ClassicalSphere(Params params, const KORing* ko) : params_(params), ko_(ko) {
    params_.validate();
}

std::vector<SGenName> ClassicalSphere::s_basis(long long stem, int twist) const {
    std::vector<SGenName> out;
    if (stem == 0 && twist == 0) out.push_back(SGenName{SGenKind::One, 0});
    if (stem == 0 && twist == 1) out.push_back(SGenName{SGenKind::G, 0});
    auto try_kind = [&](SGenKind kind, long long offset) {
        long long num = stem - offset;
        if (((num % 4) + 4) % 4 != 0) return;
        SGenName g{kind, num / 4};
        if (g.twist() == twist) out.push_back(g);
    };
    try_kind(SGenKind::Rho, -1);
    try_kind(SGenKind::MuRho, 0);
    try_kind(SGenKind::Mu, 1);
    try_kind(SGenKind::Mu2Rho, 1);
    try_kind(SGenKind::MuMu, 2);
    try_kind(SGenKind::Xi, 3);
    return out;
}

std::optional<int> ClassicalSphere::order_exp(const SGenName& g) const {
    switch (g.kind) {
        case SGenKind::One:
        case SGenKind::G:
            return std::nullopt;
        case SGenKind::Rho: {
            ExtNat e = j_exp(g.p2);
            if (e.is_infinite()) return std::nullopt;
            return int(e.value());
        }
        case SGenKind::Xi: {
            ExtNat e = j_exp(g.p2 + 1);
            if (e.is_infinite()) return std::nullopt;
            return int(e.value());
        }
        default:
            return 1;
    }
}

FGModule ClassicalSphere::s_group(long long stem, int twist) const {
    FGModule m;
    for (const auto& g : s_basis(stem, twist)) {
        auto e = order_exp(g);
        if (e)
            m.torsion.push_back(*e);
        else
            m.free_rank += 1;
        m.basis_names.push_back(g.str());
    }
    std::sort(m.torsion.begin(), m.torsion.end());
    return m;
}

SElement ClassicalSphere::zero(long long stem, int twist) const {
    SElement x;
    x.stem = stem;
    x.twist = twist;
    x.coeff.assign(s_basis(stem, twist).size(), Scalar::zero(params_.precision));
    return x;
}

SElement ClassicalSphere::from_name(const SGenName& g, const Scalar& coeff) const {
    SElement x = zero(g.stem(), g.twist());
    auto basis = s_basis(g.stem(), g.twist());
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == g) {
            x.coeff[i] = coeff;
            auto e = order_exp(g);
            if (e) x.coeff[i] = Scalar(coeff.value() % (BigInt(1) << unsigned(*e)), params_.precision);
            return x;
        }
    throw DomainError("from_name: not a basis name in its degree");
}

SElement ClassicalSphere::generator(const SGenName& g) const {
    return from_name(g, Scalar::one(params_.precision));
}

SElement ClassicalSphere::add(const SElement& x, const SElement& y) const {
    if (x.stem != y.stem || x.twist != y.twist)
        throw DomainError("ClassicalSphere::add: degree mismatch");
    SElement r = x;
    auto basis = s_basis(x.stem, x.twist);
    for (size_t i = 0; i < r.coeff.size(); ++i) {
        r.coeff[i] = r.coeff[i] + y.coeff[i];
        auto e = order_exp(basis[i]);
        if (e) r.coeff[i] = Scalar(r.coeff[i].value() % (BigInt(1) << unsigned(*e)), params_.precision);
    }
    return r;
}

SElement ClassicalSphere::scale(const Scalar& a, const SElement& x) const {
    SElement r = x;
    auto basis = s_basis(x.stem, x.twist);
    for (size_t i = 0; i < r.coeff.size(); ++i) {
        r.coeff[i] = a * r.coeff[i];
        auto e = order_exp(basis[i]);
        if (e) r.coeff[i] = Scalar(r.coeff[i].value() % (BigInt(1) << unsigned(*e)), params_.precision);
    }
    return r;
}

bool ClassicalSphere::equal(const SElement& x, const SElement& y) const {
    if (x.stem != y.stem || x.twist != y.twist) return false;
    SElement d = add(x, scale(-Scalar::one(params_.precision), y));
    return d.is_zero();
}

namespace {

// Generator word over {G, Rho, Mu, Xi}; basis names decompose into these.
struct SWord {
    int g = 0;
    std::vector<long long> mus;   // doubled parameters
    std::vector<long long> rhos;  // at most one after reduction
    std::vector<long long> xis;
};

void decompose(const SGenName& name, SWord& w) {
    switch (name.kind) {
        case SGenKind::One: break;
        case SGenKind::G: w.g += 1; break;
        case SGenKind::Rho: w.rhos.push_back(name.p2); break;
        case SGenKind::MuRho:
            w.mus.push_back(0);
            w.rhos.push_back(name.p2);
            break;
        case SGenKind::Mu: w.mus.push_back(name.p2); break;
        case SGenKind::Mu2Rho:
            w.mus.push_back(0);
            w.mus.push_back(0);
            w.rhos.push_back(name.p2);
            break;
        case SGenKind::MuMu:
            w.mus.push_back(0);
            w.mus.push_back(name.p2);
            break;
        case SGenKind::Xi: w.xis.push_back(name.p2); break;
    }
}

std::optional<SGenName> canonical_name(const SWord& w) {
    if (w.g > 1 || w.xis.size() > 1 || w.rhos.size() > 1) return std::nullopt;
    if (w.g == 1) {
        if (w.mus.empty() && w.rhos.empty() && w.xis.empty()) return SGenName{SGenKind::G, 0};
        return std::nullopt;
    }
    if (!w.xis.empty()) {
        if (w.mus.empty() && w.rhos.empty()) return SGenName{SGenKind::Xi, w.xis[0]};
        return std::nullopt;
    }
    if (!w.rhos.empty()) {
        long long shift = 0;
        for (long long m : w.mus)
            if (m != 0) shift += m;
        if (shift != 0) return std::nullopt;  // parameters not yet consolidated
        if (w.mus.empty()) return SGenName{SGenKind::Rho, w.rhos[0]};
        if (w.mus.size() == 1) return SGenName{SGenKind::MuRho, w.rhos[0]};
        if (w.mus.size() == 2) return SGenName{SGenKind::Mu2Rho, w.rhos[0]};
        return std::nullopt;
    }
    if (w.mus.empty()) return SGenName{SGenKind::One, 0};
    if (w.mus.size() == 1) return SGenName{SGenKind::Mu, w.mus[0]};
    if (w.mus.size() == 2 && w.mus[0] == 0) return SGenName{SGenKind::MuMu, w.mus[1]};
    if (w.mus.size() == 2 && w.mus[1] == 0) return SGenName{SGenKind::MuMu, w.mus[0]};
    return std::nullopt;
}

}  // namespace

SElement ClassicalSphere::reduce(long long stem, int twist,
                                 std::vector<std::pair<BigInt, std::vector<SGenName>>> words) const {
    SElement out = zero(stem, twist);
    std::vector<std::pair<BigInt, SWord>> work;
    for (auto& [coeff, names] : words) {
        SWord w;
        for (const auto& nm : names) decompose(nm, w);
        work.emplace_back(coeff, std::move(w));
    }
    while (!work.empty()) {
        auto [coeff, w] = std::move(work.back());
        work.pop_back();
        if (coeff == 0) continue;
        std::sort(w.mus.begin(), w.mus.end());
        // canonical?
        if (auto name = canonical_name(w)) {
            SElement term = from_name(*name, Scalar(coeff, params_.precision));
            out = add(out, term);
            continue;
        }
        // rho * xi = 0
        if (!w.rhos.empty() && !w.xis.empty()) continue;
        // g-rules
        if (w.g >= 1 && !w.mus.empty()) continue;  // g mu = 0
        if (w.g >= 2) {                            // g^2 = 4
            w.g -= 2;
            work.emplace_back(coeff * 4, std::move(w));
            continue;
        }
        if (w.g == 1 && !w.rhos.empty()) {  // g rho_x = 2 xi_{x-1/2}
            long long p = w.rhos.back();
            w.rhos.pop_back();
            w.g -= 1;
            w.xis.push_back(p - 1);
            work.emplace_back(coeff * 2, std::move(w));
            continue;
        }
        if (w.g == 1 && !w.xis.empty()) {  // g xi_x = 2 rho_{x+1/2}
            long long p = w.xis.back();
            w.xis.pop_back();
            w.g -= 1;
            w.rhos.push_back(p + 1);
            work.emplace_back(coeff * 2, std::move(w));
            continue;
        }
        // parameter consolidation: mu_{x} y = mu_0 y_{shifted}
        if (!w.rhos.empty() && !w.mus.empty()) {
            bool shifted = false;
            for (auto& m : w.mus)
                if (m != 0) {
                    w.rhos[0] += m;
                    m = 0;
                    shifted = true;
                }
            if (shifted) {
                work.emplace_back(std::move(coeff), std::move(w));
                continue;
            }
        }
        if (w.mus.size() >= 2) {
            long long total = 0;
            for (auto m : w.mus) total += m;
            if (w.mus.size() == 2 && (w.mus[0] != 0 && w.mus[1] != 0)) {
                w.mus = {0, total};
                work.emplace_back(std::move(coeff), std::move(w));
                continue;
            }
            if (w.mus.size() >= 3) {  // mu_a mu_b mu_c = 2^{j(P+1)-1} xi_P
                long long p = w.mus[0] + w.mus[1] + w.mus[2];
                w.mus.erase(w.mus.begin(), w.mus.begin() + 3);
                ExtNat je = j_exp(p + 1);
                if (je.is_infinite()) continue;
                w.xis.push_back(p);
                work.emplace_back(coeff * pow2(ExtNat(je.value() - 1)), std::move(w));
                continue;
            }
        }
        // leftover non-canonical words: zero when the target group vanishes or
        // when a simple-torsion factor lands in a torsion-free group
        long long wstem = 0;
        int wtwist = 0;
        {
            SWord& ww = w;
            for (auto m : ww.mus) wstem += 4 * m + 1;
            for (auto r : ww.rhos) wstem += 4 * r - 1;
            for (auto x : ww.xis) wstem += 4 * x + 3;
            long long tw = ww.g;
            for (auto m : ww.mus) tw += m;
            for (auto r : ww.rhos) tw += r;
            for (auto x : ww.xis) tw += x;
            wtwist = int(((tw % 2) + 2) % 2);
        }
        FGModule target = s_group(wstem, wtwist);
        if (target.is_zero()) continue;
        bool has_torsion_factor = !w.mus.empty();
        if (has_torsion_factor && target.torsion.empty()) continue;
        throw UnspecifiedByPaper("product not determined by the stated relations in stem " +
                                 std::to_string(wstem) + ", twist " + std::to_string(wtwist));
    }
    return out;
}

SElement ClassicalSphere::multiply(const SElement& x, const SElement& y) const {
    long long stem = x.stem + y.stem;
    int twist = (x.twist + y.twist) % 2;
    auto bx = s_basis(x.stem, x.twist);
    auto by = s_basis(y.stem, y.twist);
    std::vector<std::pair<BigInt, std::vector<SGenName>>> words;
    for (size_t p = 0; p < bx.size(); ++p) {
        if (x.coeff[p].is_zero()) continue;
        for (size_t q = 0; q < by.size(); ++q) {
            if (y.coeff[q].is_zero()) continue;
            words.emplace_back(x.coeff[p].value() * y.coeff[q].value(),
                               std::vector<SGenName>{bx[p], by[q]});
        }
    }
    return reduce(stem, twist, std::move(words));
}

PicardClass ClassicalSphere::picard_class(long long w) const {
    if (((w % 2) + 2) % 2 != 1) throw DomainError("picard_class: w must be odd");
    long long n = (w - 1) / 2;
    long long r = ((n % 4) + 4) % 4;
    PicardClass lookup = (r == 0 || r == 3) ? PicardClass::S : PicardClass::T;

    // d3-survival of r b^{n+1} t^{-2(n+1)}, the psi-fixed generator of KU^0 P_w
    E2Monomial mono;
    if ((n + 1) % 2 == 0) {
        mono = E2Monomial{(n + 1) / 2, -(n + 1) / 2, 1, 0, 0, 0};
    } else {
        mono = E2Monomial{n / 2, -(n / 2), 0, 1, 0, 0};
    }
    bool survives = ko_->d3_monomial(mono).is_zero();
    PicardClass by_d3 = survives ? PicardClass::S : PicardClass::T;
    if (by_d3 != lookup)
        throw VerificationError("picard_class: residue lookup disagrees with d3 test at w = " +
                                std::to_string(w));
    return lookup;
}

AttachingMap ClassicalSphere::attaching_map(long long n, Cofibering side) const {
    AttachingMap out;
    if (n == 0) {
        out.zero = true;
        return out;
    }
    long long r = ((n % 4) + 4) % 4;
    if (side == Cofibering::Second) {
        switch (r) {
            case 0: {
                long long c = n / 4;
                out.coefficient = pow2(ExtNat(j_exp(2 * c).value() - 1));
                out.generator = SGenName{SGenKind::Rho, 2 * c};
                return out;
            }
            case 1: {
                long long c = (n - 1) / 4;
                out.unit_coefficient = true;
                out.generator = SGenName{SGenKind::Mu, 2 * c};
                return out;
            }
            case 2: {
                long long c = (n - 2) / 4;
                out.coefficient = 4;
                out.generator = SGenName{SGenKind::Rho, 2 * c + 1};
                return out;
            }
            default: {
                long long c = (n - 3) / 4;
                out.unit_coefficient = true;
                out.generator = SGenName{SGenKind::Mu, 2 * c + 1};
                return out;
            }
        }
    }
    switch (r) {
        case 0: {
            long long c = n / 4;
            out.coefficient = pow2(ExtNat(j_exp(-2 * c).value() - 1));
            out.generator = SGenName{SGenKind::Rho, -2 * c};
            return out;
        }
        case 3: {  // n = 4c - 1
            long long c = (n + 1) / 4;
            out.unit_coefficient = true;
            out.generator = SGenName{SGenKind::Mu, -2 * c};
            return out;
        }
        case 2: {  // n = 4c - 2
            long long c = (n + 2) / 4;
            out.coefficient = 4;
            out.generator = SGenName{SGenKind::Rho, -2 * c + 1};
            return out;
        }
        default: {  // n = 4c - 3
            long long c = (n + 3) / 4;
            out.unit_coefficient = true;
            out.generator = SGenName{SGenKind::Mu, -2 * c + 1};
            return out;
        }
    }
}

}  // namespace greensphere
