#include "greensphere/green_sphere.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <sstream>

namespace greensphere {

std::string GenName::str() const {
    std::ostringstream os;
    os << family_name(fam) << "[" << a;
    if (family_arity(fam) == 2) os << "," << b;
    os << "]";
    return os.str();
}

std::string word_str(const GenWord& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!first) os << "*";
        os << w[i].str();
        if (j - i > 1) os << "^" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

bool GreenElement::is_zero() const {
    for (const auto& a : coeff)
        if (!a.is_zero()) return false;
    return true;
}

std::string Report::summary(const std::string& label) const {
    std::ostringstream os;
    os << label << ": " << checks << " checks, " << failures.size() << " failures";
    return os.str();
}

namespace {

std::optional<long long> solve_linear(const LinExpr& e, int var, long long target) {
    long long coeff = 0;
    for (auto [v, c] : e.terms)
        if (v == var) coeff += c;
    if (coeff == 0) {
        if (e.constant != target) return std::nullopt;
        return 0;  // unused variable defaults to 0
    }
    long long num = target - e.constant;
    if (num % coeff != 0) return std::nullopt;
    return num / coeff;
}

SGenKind src_to_kind(SrcName s) {
    switch (s) {
        case SrcName::One: return SGenKind::One;
        case SrcName::Rho: return SGenKind::Rho;
        case SrcName::MuRho: return SGenKind::MuRho;
        case SrcName::Mu: return SGenKind::Mu;
        case SrcName::Mu2Rho: return SGenKind::Mu2Rho;
        case SrcName::MuMu: return SGenKind::MuMu;
        case SrcName::Xi: return SGenKind::Xi;
    }
    return SGenKind::One;
}

SrcName kind_to_src(SGenKind k) {
    switch (k) {
        case SGenKind::One: return SrcName::One;
        case SGenKind::Rho: return SrcName::Rho;
        case SGenKind::MuRho: return SrcName::MuRho;
        case SGenKind::Mu: return SrcName::Mu;
        case SGenKind::Mu2Rho: return SrcName::Mu2Rho;
        case SGenKind::MuMu: return SrcName::MuMu;
        case SGenKind::Xi: return SrcName::Xi;
        case SGenKind::G: break;
    }
    throw DomainError("twisted classes lie outside the implemented Mackey structure");
}

BigInt mod_pos(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

GreenRing::GreenRing(GreenTables tables, Params params, const KORing* ko,
                     const ClassicalSphere* sphere)
    : tables_(std::move(tables)), params_(params), ko_(ko), sphere_(sphere) {
    params_.validate();
    wide_params_ = params_;
    wide_params_.precision = params_.precision + 16;
    family_bideg_.resize(kFamilyCount);
    for (const auto& rec : tables_.table3) family_bideg_[size_t(rec.fam)] = {rec.s_expr, rec.c_expr};
    if (tables_.table3.size() != size_t(kFamilyCount))
        throw TableParseError(0, "table3 must list all seven generator families");
}

long long GreenRing::gen_stem(const GenName& g) const {
    return family_bideg_[size_t(g.fam)].first.eval({g.a, g.b});
}

long long GreenRing::gen_coweight(const GenName& g) const {
    return family_bideg_[size_t(g.fam)].second.eval({g.a, g.b});
}

GenWord GreenRing::instantiate(const std::vector<GenAtomTemplate>& tmpl,
                               const std::vector<long long>& vals) const {
    GenWord w;
    w.reserve(tmpl.size());
    for (const auto& atom : tmpl)
        w.push_back(GenName{atom.fam, atom.p0.eval(vals),
                            family_arity(atom.fam) == 2 ? atom.p1.eval(vals) : 0});
    std::sort(w.begin(), w.end());
    return w;
}

FGModule GreenRing::summand_module(const RowRec& row, long long a, long long b) const {
    std::vector<long long> vals{a, b};
    switch (row.group.kind) {
        case GroupKind::Z2:
            return FGModule::free(1);
        case GroupKind::Z2e: {
            FGModule m;
            m.torsion = {row.group.exponent};
            return m;
        }
        case GroupKind::SGroup: {
            ExtNat e = j_exp(row.group.s_arg.eval(vals));
            if (e.is_infinite()) return FGModule::free(1);
            FGModule m;
            m.torsion = {int(e.value())};
            return m;
        }
        case GroupKind::EPair: {
            long long ea = row.group.e_a.eval(vals), eb = row.group.e_b.eval(vals);
            ExtNat ja = j_exp(ea), jb = j_exp(eb), jd = j_exp(eb - ea);
            IntMat rels(2, 2);
            rels.at(0, 0) = pow2(ja);
            rels.at(1, 0) = jd.is_infinite()
                                ? BigInt(0)
                                : BigInt(pow2(ExtNat(jd.value() - 1)) *
                                         u_unit(ea, eb, wide_params_).value());
            rels.at(1, 1) = pow2(jb);
            return quotient_module(rels, 2);
        }
    }
    return FGModule::zero();
}

GreenGroup GreenRing::group(long long s, long long c) const {
    GreenGroup g;
    g.s = s;
    g.c = c;
    int summand = 0;
    for (size_t ri = 0; ri < tables_.table1.size(); ++ri) {
        const RowRec& row = tables_.table1[ri];
        auto a = solve_linear(row.s_expr, 0, s);
        auto b = solve_linear(row.c_expr, 1, c);
        if (!a || !b) continue;
        if (row.require_b_nonzero && *b == 0) continue;
        std::vector<long long> vals{*a, *b};
        for (size_t slot = 0; slot < row.words.size(); ++slot) {
            GreenBasisElt elt;
            elt.row = int(ri);
            elt.a = *a;
            elt.b = *b;
            elt.slot = int(slot);
            elt.word = instantiate(row.words[slot], vals);
            g.names.push_back(std::move(elt));
            g.summand_of.push_back(summand);
        }
        FGModule part = summand_module(row, *a, *b);
        g.module = g.module.direct_sum(part);
        ++summand;
    }
    for (const auto& name : g.names) g.module.basis_names.push_back(name.str());
    return g;
}

GreenElement GreenRing::zero(long long s, long long c) const {
    GreenElement x;
    x.s = s;
    x.c = c;
    x.coeff.assign(group(s, c).names.size(), Scalar::zero(params_.precision));
    return x;
}

std::optional<size_t> GreenRing::identify(const GreenGroup& g, const GenWord& word) const {
    for (size_t k = 0; k < g.names.size(); ++k)
        if (g.names[k].word == word) return k;
    return std::nullopt;
}

BigInt GreenRing::eval_coeff(const CoeffExpr& e, const std::vector<long long>& vals,
                             bool* is_zero) const {
    BigInt prod = 1;
    *is_zero = false;
    for (const auto& f : e) {
        switch (f.kind) {
            case CoeffFactor::Int:
                prod *= f.value;
                break;
            case CoeffFactor::Pow2JMinus1: {
                ExtNat j = j_exp(f.arg1.eval(vals));
                if (j.is_infinite()) {
                    *is_zero = true;
                    return 0;
                }
                prod *= pow2(ExtNat(j.value() - 1));
                break;
            }
            case CoeffFactor::Unit:
                prod *= u_unit(f.arg1.eval(vals), f.arg2.eval(vals), wide_params_).value();
                break;
        }
    }
    if (prod == 0) *is_zero = true;
    return prod;
}

bool GreenRing::match_rule(const RuleRec& rule, const GenWord& word, std::vector<Term>& produced,
                           const BigInt& coeff) const {
    // positions per family
    std::array<std::vector<int>, kFamilyCount> positions;
    for (int i = 0; i < int(word.size()); ++i) positions[size_t(word[i].fam)].push_back(i);
    std::array<std::vector<const AtomPattern*>, kFamilyCount> atoms;
    for (const auto& atom : rule.lhs) atoms[size_t(atom.fam)].push_back(&atom);
    for (int f = 0; f < kFamilyCount; ++f)
        if (atoms[size_t(f)].size() > positions[size_t(f)].size()) return false;

    std::vector<std::optional<long long>> binding(size_t(rule.nvars));
    std::vector<int> used(word.size(), 0);

    // depth-first assignment of pattern atoms to word positions, family by family
    std::vector<std::pair<const AtomPattern*, int>> flat;  // pattern, assigned position
    for (int f = 0; f < kFamilyCount; ++f)
        for (const auto* atom : atoms[size_t(f)]) flat.emplace_back(atom, -1);

    auto try_result = [&]() -> bool {
        std::vector<long long> vals(size_t(rule.nvars));
        for (int v = 0; v < rule.nvars; ++v) vals[size_t(v)] = binding[size_t(v)].value_or(0);
        GenWord rest;
        rest.reserve(word.size());
        for (size_t i = 0; i < word.size(); ++i)
            if (!used[i]) rest.push_back(word[i]);
        std::vector<Term> out;
        for (const auto& term : rule.rhs) {
            bool zero = false;
            BigInt c = eval_coeff(term.coeff, vals, &zero);
            if (zero) continue;
            Term t;
            t.coeff = coeff * c;
            t.word = rest;
            GenWord extra = instantiate(term.word, vals);
            t.word.insert(t.word.end(), extra.begin(), extra.end());
            std::sort(t.word.begin(), t.word.end());
            out.push_back(std::move(t));
        }
        // skip no-op rewrites (parameter-shift rules at their fixed points)
        if (out.size() == 1 && rule.rhs.size() == 1 && out[0].coeff == coeff &&
            out[0].word == word)
            return false;
        for (auto& t : out) produced.push_back(std::move(t));
        if (out.empty() && !rule.rhs.empty()) {
            // all right-hand terms vanished; still a successful rewrite to zero
        }
        return true;
    };

    std::function<bool(size_t)> assign = [&](size_t idx) -> bool {
        if (idx == flat.size()) return try_result();
        const AtomPattern* atom = flat[idx].first;
        for (int pos : positions[size_t(atom->fam)]) {
            if (used[pos]) continue;
            auto saved = binding;
            bool ok = atom->p0.match(word[size_t(pos)].a, binding);
            if (ok && family_arity(atom->fam) == 2)
                ok = atom->p1.match(word[size_t(pos)].b, binding);
            if (ok) {
                used[pos] = 1;
                if (assign(idx + 1)) return true;
                used[pos] = 0;
            }
            binding = std::move(saved);
        }
        return false;
    };
    return assign(0);
}

std::vector<BigInt> GreenRing::normalize_coords(const GreenGroup& g, const GenWord& w,
                                                const BigInt& coeff) const {
    std::vector<BigInt> coords(g.names.size());
    std::vector<Term> work;
    {
        Term t;
        t.coeff = coeff;
        t.word = w;
        std::sort(t.word.begin(), t.word.end());
        work.push_back(std::move(t));
    }
    long long fuel = 200000;
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        if (t.coeff == 0) continue;
        if (--fuel < 0)
            throw VerificationError("normalize: rewriting did not terminate on " + word_str(w));
        if (auto slot = identify(g, t.word)) {
            coords[*slot] += t.coeff;
            continue;
        }
        unsigned mask = 0;
        for (const auto& gn : t.word) mask |= 1u << int(gn.fam);
        bool matched = false;
        for (const auto& rule : tables_.table2) {
            if ((rule.family_mask & ~mask) != 0) continue;
            if (match_rule(rule, t.word, work, t.coeff)) {
                matched = true;
                break;
            }
        }
        if (!matched)
            throw VerificationError("normalize: no table rule applies to " + word_str(t.word) +
                                    " (from " + word_str(w) + ")");
    }
    return coords;
}

void GreenRing::reduce_coords(const GreenGroup& g, std::vector<BigInt>& coords) const {
    BigInt full = BigInt(1) << unsigned(params_.precision);
    size_t k = 0;
    while (k < g.names.size()) {
        const RowRec& row = tables_.table1[size_t(g.names[k].row)];
        std::vector<long long> vals{g.names[k].a, g.names[k].b};
        switch (row.group.kind) {
            case GroupKind::Z2:
                coords[k] = mod_pos(coords[k], full);
                ++k;
                break;
            case GroupKind::Z2e:
                coords[k] = mod_pos(coords[k], BigInt(1) << unsigned(row.group.exponent));
                ++k;
                break;
            case GroupKind::SGroup: {
                ExtNat e = j_exp(row.group.s_arg.eval(vals));
                coords[k] = mod_pos(coords[k], e.is_infinite() ? full : pow2(e));
                ++k;
                break;
            }
            case GroupKind::EPair: {
                long long ea = row.group.e_a.eval(vals), eb = row.group.e_b.eval(vals);
                ExtNat ja = j_exp(ea), jb = j_exp(eb), jd = j_exp(eb - ea);
                BigInt& cx = coords[k];
                BigInt& cy = coords[k + 1];
                if (!ja.is_infinite()) {
                    BigInt mod = pow2(ja);
                    BigInt r = mod_pos(cx, mod);
                    BigInt q = (cx - r) / mod;
                    if (!jd.is_infinite())
                        cy -= q * pow2(ExtNat(jd.value() - 1)) *
                              u_unit(ea, eb, wide_params_).value();
                    cx = r;
                } else {
                    cx = mod_pos(cx, full);
                }
                BigInt ymod = full;
                if (!jb.is_infinite()) {
                    // order of y: 2^{j_b}, except 2^{j_b - 1} when a-side is free
                    ymod = ja.is_infinite() ? pow2(ExtNat(jb.value() - 1)) : pow2(jb);
                }
                cy = mod_pos(cy, ymod);
                k += 2;
                break;
            }
        }
    }
}

GreenElement GreenRing::element_from_coords(const GreenGroup& g, std::vector<BigInt> coords) const {
    reduce_coords(g, coords);
    GreenElement x;
    x.s = g.s;
    x.c = g.c;
    x.coeff.reserve(coords.size());
    for (auto& v : coords) x.coeff.emplace_back(v, params_.precision);
    return x;
}

GreenElement GreenRing::normalize(const GenWord& w, const Scalar& coeff) const {
    long long s = 0, c = 0;
    for (const auto& gn : w) {
        s += gen_stem(gn);
        c += gen_coweight(gn);
    }
    GreenGroup g = group(s, c);
    return element_from_coords(g, normalize_coords(g, w, coeff.value()));
}

GreenElement GreenRing::normalize(const GenWord& w) const {
    return normalize(w, Scalar::one(params_.precision));
}

GreenElement GreenRing::add(const GreenElement& x, const GreenElement& y) const {
    if (x.s != y.s || x.c != y.c) throw DomainError("GreenRing::add: bidegree mismatch");
    GreenGroup g = group(x.s, x.c);
    std::vector<BigInt> coords(x.coeff.size());
    for (size_t i = 0; i < coords.size(); ++i) coords[i] = x.coeff[i].value() + y.coeff[i].value();
    return element_from_coords(g, std::move(coords));
}

GreenElement GreenRing::scale(const Scalar& a, const GreenElement& x) const {
    GreenGroup g = group(x.s, x.c);
    std::vector<BigInt> coords(x.coeff.size());
    for (size_t i = 0; i < coords.size(); ++i) coords[i] = a.value() * x.coeff[i].value();
    return element_from_coords(g, std::move(coords));
}

GreenElement GreenRing::multiply(const GreenElement& x, const GreenElement& y) const {
    GreenGroup gx = group(x.s, x.c), gy = group(y.s, y.c);
    GreenGroup g = group(x.s + y.s, x.c + y.c);
    std::vector<BigInt> coords(g.names.size());
    for (size_t p = 0; p < gx.names.size(); ++p) {
        if (x.coeff[p].is_zero()) continue;
        for (size_t q = 0; q < gy.names.size(); ++q) {
            if (y.coeff[q].is_zero()) continue;
            GenWord w = gx.names[p].word;
            w.insert(w.end(), gy.names[q].word.begin(), gy.names[q].word.end());
            std::sort(w.begin(), w.end());
            auto part = normalize_coords(g, w, x.coeff[p].value() * y.coeff[q].value());
            for (size_t i = 0; i < coords.size(); ++i) coords[i] += part[i];
        }
    }
    return element_from_coords(g, std::move(coords));
}

bool GreenRing::equal(const GreenElement& x, const GreenElement& y) const {
    if (x.s != y.s || x.c != y.c) return false;
    GreenGroup g = group(x.s, x.c);
    std::vector<BigInt> coords(x.coeff.size());
    for (size_t i = 0; i < coords.size(); ++i) coords[i] = x.coeff[i].value() - y.coeff[i].value();
    reduce_coords(g, coords);
    for (const auto& v : coords)
        if (v != 0) return false;
    return true;
}

SElement GreenRing::restriction(const GreenElement& x) const {
    GreenGroup g = group(x.s, x.c);
    SElement out = sphere_->zero(x.s, 0);
    for (size_t k = 0; k < g.names.size(); ++k) {
        if (x.coeff[k].is_zero()) continue;
        const RowRec& row = tables_.table1[size_t(g.names[k].row)];
        const ResTemplate& res = row.res[size_t(g.names[k].slot)];
        if (res.zero) continue;
        std::vector<long long> vals{g.names[k].a, g.names[k].b};
        bool zero = false;
        BigInt coeff = eval_coeff(res.coeff, vals, &zero);
        if (zero) continue;
        SGenName name{src_to_kind(res.name), res.name == SrcName::One ? 0 : 2 * res.param.eval(vals)};
        SElement term = sphere_->from_name(name, Scalar(coeff * x.coeff[k].value(), params_.precision));
        out = sphere_->add(out, term);
    }
    return out;
}

GreenElement GreenRing::transfer(long long c, const SElement& alpha) const {
    if (alpha.twist != 0)
        throw DomainError("transfer: twisted classes lie outside the implemented Mackey structure");
    GreenGroup g = group(alpha.stem, c);
    std::vector<BigInt> coords(g.names.size());
    auto basis = sphere_->s_basis(alpha.stem, 0);
    for (size_t k = 0; k < basis.size(); ++k) {
        if (alpha.coeff[k].is_zero()) continue;
        SrcName src = kind_to_src(basis[k].kind);
        long long a = basis[k].p2 / 2;
        bool found = false;
        for (const auto& rec : tables_.table4) {
            if (rec.src != src) continue;
            if (rec.s_expr.eval({a, 0}) != alpha.stem) continue;
            auto b = solve_linear(rec.c_expr, 1, c);
            if (!b) continue;
            std::vector<long long> vals{a, *b};
            for (const auto& term : rec.out) {
                bool zero = false;
                BigInt cf = eval_coeff(term.coeff, vals, &zero);
                if (zero) continue;
                GenWord w = instantiate(term.word, vals);
                auto part = normalize_coords(g, w, cf * alpha.coeff[k].value());
                for (size_t i = 0; i < coords.size(); ++i) coords[i] += part[i];
            }
            found = true;
            break;
        }
        if (!found)
            throw VerificationError("transfer: no table row for " + basis[k].str() + " at c = " +
                                    std::to_string(c));
    }
    return element_from_coords(g, std::move(coords));
}

GenWord GreenRing::unit_word(const SGenName& name) const {
    if (name.twist() != 0) throw DomainError("unit: twisted classes have no table image");
    long long a = name.p2 / 2;
    auto find = [&](SrcName src, long long param) -> GenWord {
        for (const auto& rec : tables_.unit)
            if (rec.src == src) return instantiate(rec.word, {param, 0});
        throw VerificationError("unit: missing table entry");
    };
    GenWord w;
    auto append = [&](GenWord part) { w.insert(w.end(), part.begin(), part.end()); };
    switch (name.kind) {
        case SGenKind::One: break;
        case SGenKind::G: throw DomainError("unit: twisted class");
        case SGenKind::Rho: append(find(SrcName::Rho, a)); break;
        case SGenKind::MuRho:
            append(find(SrcName::Mu, 0));
            append(find(SrcName::Rho, a));
            break;
        case SGenKind::Mu: append(find(SrcName::Mu, a)); break;
        case SGenKind::Mu2Rho:
            append(find(SrcName::Mu, 0));
            append(find(SrcName::Mu, 0));
            append(find(SrcName::Rho, a));
            break;
        case SGenKind::MuMu:
            append(find(SrcName::Mu, 0));
            append(find(SrcName::Mu, a));
            break;
        case SGenKind::Xi: append(find(SrcName::Xi, a)); break;
    }
    std::sort(w.begin(), w.end());
    return w;
}

GreenElement GreenRing::unit_map(const SElement& alpha) const {
    if (alpha.twist != 0) throw DomainError("unit: twisted input");
    GreenGroup g = group(alpha.stem, alpha.stem);
    std::vector<BigInt> coords(g.names.size());
    auto basis = sphere_->s_basis(alpha.stem, 0);
    for (size_t k = 0; k < basis.size(); ++k) {
        if (alpha.coeff[k].is_zero()) continue;
        GenWord w = unit_word(basis[k]);
        auto part = normalize_coords(g, w, alpha.coeff[k].value());
        for (size_t i = 0; i < coords.size(); ++i) coords[i] += part[i];
    }
    return element_from_coords(g, std::move(coords));
}

SElement GreenRing::weyl_action(long long c, const SElement& alpha) const {
    SElement res = restriction(transfer(c, alpha));
    return sphere_->add(res, sphere_->scale(-Scalar::one(params_.precision), alpha));
}

GreenElement GreenRing::tau4_shift(const GreenElement& x) const {
    if (((x.c % 4) + 4) % 4 == 3)
        throw DomainError("tau4_shift: coweight = -1 mod 4 has indeterminacy");
    GreenElement omega3 = normalize(GenWord{GenName{Family::W, 0, 0}, GenName{Family::W, 0, 0},
                                            GenName{Family::W, 0, 0}});
    if (!multiply(omega3, x).is_zero())
        throw DomainError("tau4_shift: element is not rho^3-torsion");
    GreenGroup g = group(x.s, x.c);
    GreenGroup gt = group(x.s, x.c + 4);
    std::vector<BigInt> coords(gt.names.size());
    for (size_t k = 0; k < g.names.size(); ++k) {
        if (x.coeff[k].is_zero()) continue;
        bool found = false;
        for (size_t t = 0; t < gt.names.size(); ++t)
            if (gt.names[t].row == g.names[k].row && gt.names[t].slot == g.names[k].slot &&
                gt.names[t].a == g.names[k].a && gt.names[t].b == g.names[k].b + 1) {
                coords[t] += x.coeff[k].value();
                found = true;
                break;
            }
        if (!found)
            throw DomainError("tau4_shift: name " + g.names[k].str() + " has no shifted partner");
    }
    return element_from_coords(gt, std::move(coords));
}

IntMat GreenRing::relations(long long s, long long c) const {
    GreenGroup g = group(s, c);
    std::vector<std::vector<BigInt>> cols;
    size_t k = 0;
    while (k < g.names.size()) {
        const RowRec& row = tables_.table1[size_t(g.names[k].row)];
        std::vector<long long> vals{g.names[k].a, g.names[k].b};
        auto col = [&](std::vector<std::pair<size_t, BigInt>> entries) {
            std::vector<BigInt> v(g.names.size());
            for (auto& [i, val] : entries) v[i] = val;
            cols.push_back(std::move(v));
        };
        switch (row.group.kind) {
            case GroupKind::Z2:
                ++k;
                break;
            case GroupKind::Z2e:
                col({{k, BigInt(1) << unsigned(row.group.exponent)}});
                ++k;
                break;
            case GroupKind::SGroup: {
                ExtNat e = j_exp(row.group.s_arg.eval(vals));
                if (!e.is_infinite()) col({{k, pow2(e)}});
                ++k;
                break;
            }
            case GroupKind::EPair: {
                long long ea = row.group.e_a.eval(vals), eb = row.group.e_b.eval(vals);
                ExtNat ja = j_exp(ea), jb = j_exp(eb), jd = j_exp(eb - ea);
                BigInt mixed = jd.is_infinite() ? BigInt(0)
                                                : BigInt(pow2(ExtNat(jd.value() - 1)) *
                                                         u_unit(ea, eb, wide_params_).value());
                if (!ja.is_infinite() || mixed != 0) col({{k, pow2(ja)}, {k + 1, mixed}});
                if (!jb.is_infinite()) col({{k + 1, pow2(jb)}});
                k += 2;
                break;
            }
        }
    }
    IntMat m(int(g.names.size()), int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < g.names.size(); ++i) m.at(int(i), int(j)) = cols[j][i];
    return m;
}

IntMat GreenRing::omega_matrix(long long s, long long c) const {
    GreenGroup src = group(s, c), dst = group(s - 1, c);
    GreenElement omega = normalize(GenWord{GenName{Family::W, 0, 0}});
    IntMat m(int(dst.names.size()), int(src.names.size()));
    for (size_t q = 0; q < src.names.size(); ++q) {
        GreenElement x = zero(s, c);
        x.coeff[q] = Scalar::one(params_.precision);
        GreenElement y = multiply(omega, x);
        for (size_t p = 0; p < dst.names.size(); ++p) m.at(int(p), int(q)) = y.coeff[p].value();
    }
    return m;
}

IntMat GreenRing::res_matrix(long long s, long long c) const {
    GreenGroup src = group(s, c);
    auto dst = sphere_->s_basis(s, 0);
    IntMat m(int(dst.size()), int(src.names.size()));
    for (size_t q = 0; q < src.names.size(); ++q) {
        GreenElement x = zero(s, c);
        x.coeff[q] = Scalar::one(params_.precision);
        SElement y = restriction(x);
        for (size_t p = 0; p < dst.size(); ++p) m.at(int(p), int(q)) = y.coeff[p].value();
    }
    return m;
}

IntMat GreenRing::tr_matrix(long long s, long long c) const {
    GreenGroup dst = group(s, c);
    auto src = sphere_->s_basis(s, 0);
    IntMat m(int(dst.names.size()), int(src.size()));
    for (size_t q = 0; q < src.size(); ++q) {
        SElement alpha = sphere_->generator(src[q]);
        GreenElement y = transfer(c, alpha);
        for (size_t p = 0; p < dst.names.size(); ++p) m.at(int(p), int(q)) = y.coeff[p].value();
    }
    return m;
}

IntMat GreenRing::s_relations(long long stem) const {
    auto basis = sphere_->s_basis(stem, 0);
    std::vector<std::pair<size_t, int>> torsion;
    for (size_t i = 0; i < basis.size(); ++i)
        if (auto e = sphere_->order_exp(basis[i])) torsion.emplace_back(i, *e);
    IntMat m(int(basis.size()), int(torsion.size()));
    for (size_t j = 0; j < torsion.size(); ++j)
        m.at(int(torsion[j].first), int(j)) = BigInt(1) << unsigned(torsion[j].second);
    return m;
}

Report GreenRing::verify_hfpss(int window) const {
    Report report;
    for (long long s = -window; s <= window; ++s) {
        for (long long c = -window; c <= window; ++c) {
            GreenGroup g = group(s, c);
            std::string where = "(" + std::to_string(s) + "," + std::to_string(c) + ")";

            IntMat above_psi = ko_->psi_minus_one_matrix(s + 1, c + 1);
            IntMat above_rels = ko_->relations(s + 1, c + 1);
            KerCoker above = hom_ker_coker(above_psi, above_rels, above_rels);
            IntMat here_psi = ko_->psi_minus_one_matrix(s, c);
            IntMat here_rels = ko_->relations(s, c);
            KerCoker here = hom_ker_coker(here_psi, here_rels, here_rels);

            FGModule assembled = above.coker.direct_sum(here.ker);
            ++report.checks;
            if (!assembled.same_type(g.module))
                report.fail("group mismatch at " + where + ": descent " + assembled.str() +
                            " vs table " + g.module.str());

            FGModule one_line;
            for (size_t k = 0; k < g.names.size();) {
                const RowRec& row = tables_.table1[size_t(g.names[k].row)];
                size_t span = row.group.kind == GroupKind::EPair ? 2 : 1;
                if (row.detect_line == 1)
                    one_line = one_line.direct_sum(summand_module(row, g.names[k].a, g.names[k].b));
                k += span;
            }
            ++report.checks;
            if (!above.coker.same_type(one_line))
                report.fail("1-line mismatch at " + where + ": descent " + above.coker.str() +
                            " vs table " + one_line.str());

            // omega0 rank profile on the 1-line
            GreenGroup gdst = group(s - 1, c);
            IntMat omega = omega_matrix(s, c);
            std::vector<int> one_cols;
            for (size_t k = 0; k < g.names.size(); ++k)
                if (tables_.table1[size_t(g.names[k].row)].detect_line == 1)
                    one_cols.push_back(int(k));
            IntMat table_map(int(gdst.names.size()), int(one_cols.size()));
            bool jumps = false;
            for (size_t j = 0; j < one_cols.size(); ++j)
                for (size_t i = 0; i < gdst.names.size(); ++i) {
                    table_map.at(int(i), int(j)) = omega.at(int(i), one_cols[j]);
                    if (tables_.table1[size_t(gdst.names[i].row)].detect_line == 0 &&
                        bit_test(table_map.at(int(i), int(j)), 0))
                        jumps = true;
                }
            ++report.checks;
            if (jumps) report.fail("omega0 leaves the 1-line at " + where);
            int table_rank = rank_mod2(table_map);

            IntMat rho = ko_->rho_power_matrix(s, c + 1, 1);
            IntMat target_block =
                ko_->psi_minus_one_matrix(s, c + 1).hcat(ko_->relations(s, c + 1));
            int descent_rank = rank_mod2(rho.hcat(target_block)) - rank_mod2(target_block);
            ++report.checks;
            if (table_rank != descent_rank)
                report.fail("omega0 rank profile mismatch at " + where + ": table " +
                            std::to_string(table_rank) + " vs descent " +
                            std::to_string(descent_rank));
        }
    }
    return report;
}

Report GreenRing::verify_axioms(int window) const {
    Report report;
    int prec = params_.precision;

    // (i) commutativity and associativity on a small dense block of names
    {
        int w = std::min(window, 6);
        std::vector<GreenBasisElt> names;
        for (long long s = -w; s <= w; ++s)
            for (long long c = -w; c <= w; ++c)
                for (auto& n : group(s, c).names) names.push_back(n);
        for (size_t i = 0; i < names.size(); ++i)
            for (size_t j = i; j < names.size(); ++j) {
                GreenElement xy = normalize(
                    [&] {
                        GenWord w2 = names[i].word;
                        w2.insert(w2.end(), names[j].word.begin(), names[j].word.end());
                        return w2;
                    }());
                GenWord rev = names[j].word;
                rev.insert(rev.end(), names[i].word.begin(), names[i].word.end());
                GreenElement yx = normalize(rev);
                ++report.checks;
                if (!equal(xy, yx))
                    report.fail("commutativity fails for " + names[i].str() + " * " +
                                names[j].str());
            }
        int w3 = std::min(window, 2);
        std::vector<GreenBasisElt> small;
        for (long long s = -w3; s <= w3; ++s)
            for (long long c = -w3; c <= w3; ++c)
                for (auto& n : group(s, c).names) small.push_back(n);
        for (const auto& x : small)
            for (const auto& y : small)
                for (const auto& z : small) {
                    GreenElement xy = normalize([&] {
                        GenWord w2 = x.word;
                        w2.insert(w2.end(), y.word.begin(), y.word.end());
                        return w2;
                    }());
                    GreenElement yz = normalize([&] {
                        GenWord w2 = y.word;
                        w2.insert(w2.end(), z.word.begin(), z.word.end());
                        return w2;
                    }());
                    GreenElement a = multiply(xy, normalize(z.word));
                    GreenElement b = multiply(normalize(x.word), yz);
                    ++report.checks;
                    if (!equal(a, b))
                        report.fail("associativity fails for " + x.str() + ", " + y.str() + ", " +
                                    z.str());
                }
    }

    // (ii) restriction is a ring map
    {
        int w = std::min(window, 6);
        std::vector<GreenBasisElt> names;
        for (long long s = -w; s <= w; ++s)
            for (long long c = -w; c <= w; ++c)
                for (auto& n : group(s, c).names) names.push_back(n);
        for (size_t i = 0; i < names.size(); ++i)
            for (size_t j = i; j < names.size(); ++j) {
                GreenElement x = normalize(names[i].word);
                GreenElement y = normalize(names[j].word);
                SElement lhs = restriction(multiply(x, y));
                SElement rhs = sphere_->multiply(restriction(x), restriction(y));
                ++report.checks;
                if (!sphere_->equal(lhs, rhs))
                    report.fail("restriction not multiplicative on " + names[i].str() + " * " +
                                names[j].str());
            }
    }

    // (iii) Frobenius reciprocity tr_c(res(x) * alpha) = x * tr_{c - c_x}(alpha)
    for (long long s = -window; s <= window; ++s) {
        for (long long c = -window; c <= window; ++c) {
            GreenGroup g = group(s, c);
            if (g.names.empty()) continue;
            for (const auto& name : g.names) {
                GreenElement x = zero(s, c);
                x.coeff[size_t(&name - g.names.data())] = Scalar::one(prec);
                SElement rx = restriction(x);
                for (long long t = -9; t <= 9; ++t) {
                    auto alphas = sphere_->s_basis(t, 0);
                    for (const auto& an : alphas) {
                        for (long long delta = -2; delta <= 2; ++delta) {
                            long long cc = c + delta;
                            SElement alpha = sphere_->generator(an);
                            GreenElement lhs = transfer(cc, sphere_->multiply(rx, alpha));
                            GreenElement rhs = multiply(x, transfer(cc - c, alpha));
                            ++report.checks;
                            if (!equal(lhs, rhs)) {
                                report.fail("Frobenius fails for x = " + name.str() +
                                            ", alpha = " + an.str() + ", c = " +
                                            std::to_string(cc));
                            }
                        }
                    }
                }
            }
        }
    }

    // (iv) ker(res) = im(omega0) and im(tr) = ker(omega0)
    for (long long s = -window; s <= window; ++s) {
        for (long long c = -window; c <= window; ++c) {
            IntMat rels = relations(s, c);
            IntMat res = res_matrix(s, c);
            IntMat srels = s_relations(s);
            KerCoker res_kc = hom_ker_coker(res, rels, srels);
            IntMat omega_in = omega_matrix(s + 1, c);
            ++report.checks;
            if (!subgroups_equal(res_kc.ker_lattice, omega_in.hcat(rels), rels, prec))
                report.fail("ker(res) != im(omega0) at (" + std::to_string(s) + "," +
                            std::to_string(c) + ")");

            IntMat tr = tr_matrix(s, c);
            IntMat omega_out = omega_matrix(s, c);
            KerCoker om_kc = hom_ker_coker(omega_out, rels, relations(s - 1, c));
            ++report.checks;
            if (!subgroups_equal(tr.hcat(rels), om_kc.ker_lattice, rels, prec))
                report.fail("im(tr) != ker(omega0) at (" + std::to_string(s) + "," +
                            std::to_string(c) + ")");
        }
    }

    // (v) the Weyl action is an additive involution
    for (long long s = -window; s <= window; ++s) {
        for (long long c = -window; c <= window; ++c) {
            for (const auto& an : sphere_->s_basis(s, 0)) {
                SElement alpha = sphere_->generator(an);
                SElement twice = weyl_action(c, weyl_action(c, alpha));
                ++report.checks;
                if (!sphere_->equal(twice, alpha))
                    report.fail("Weyl action not involutive on " + an.str() + " at c = " +
                                std::to_string(c));
            }
        }
    }
    return report;
}

}  // namespace greensphere
