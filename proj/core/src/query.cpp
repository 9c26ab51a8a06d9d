#include "greensphere/query.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace greensphere {

using nlohmann::json;

Engine::Engine(Params params, const std::string& tables_path) : params_(params) {
    params_.validate();
    ko_ = std::make_unique<KORing>(params_);
    sphere_ = std::make_unique<ClassicalSphere>(params_, ko_.get());
    green_ = std::make_unique<GreenRing>(load_tables(tables_path), params_, ko_.get(),
                                         sphere_.get());
}

namespace {

struct ExprParser {
    const std::string& s;
    size_t pos = 0;
    explicit ExprParser(const std::string& str) : s(str) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ExprError(msg + " at offset " + std::to_string(pos) + " in '" + s + "'");
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    long long parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected integer");
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return std::stoll(s.substr(start, pos - start));
    }
    std::string parse_ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) fail("expected name");
        return s.substr(start, pos - start);
    }
    bool peek_int() {
        skip_ws();
        if (pos >= s.size()) return false;
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) return true;
        if (s[pos] == '-' && pos + 1 < s.size() &&
            std::isdigit(static_cast<unsigned char>(s[pos + 1])))
            return true;
        return false;
    }
};

std::optional<Family> family_of(const std::string& name) {
    if (name == "w") return Family::W;
    if (name == "eta") return Family::Eta;
    if (name == "tauh") return Family::Tauh;
    if (name == "mu") return Family::Mu;
    if (name == "zeta") return Family::Zeta;
    if (name == "rho") return Family::Rho;
    if (name == "xi") return Family::Xi;
    return std::nullopt;
}

}  // namespace

std::vector<GreenExprTerm> parse_green_expr(const std::string& text) {
    ExprParser p(text);
    std::vector<GreenExprTerm> terms;
    for (;;) {
        GreenExprTerm term;
        if (p.peek_int()) {
            term.coeff = p.parse_int();
            if (!p.eat('*')) {
                // bare integer stands for a multiple of 1
                terms.push_back(std::move(term));
                if (!p.eat('+')) break;
                continue;
            }
        }
        for (;;) {
            p.skip_ws();
            if (p.pos < p.s.size() && p.s[p.pos] == '1') {
                ++p.pos;
            } else {
                std::string name = p.parse_ident();
                auto fam = family_of(name);
                if (!fam) p.fail("unknown generator '" + name + "'");
                GenName g;
                g.fam = *fam;
                if (!p.eat('[')) p.fail("expected '['");
                g.a = p.parse_int();
                if (family_arity(*fam) == 2) {
                    if (!p.eat(',')) p.fail("expected ','");
                    g.b = p.parse_int();
                }
                if (!p.eat(']')) p.fail("expected ']'");
                long long power = 1;
                if (p.eat('^')) power = p.parse_int();
                if (power < 0) p.fail("negative powers are not supported");
                for (long long i = 0; i < power; ++i) term.word.push_back(g);
            }
            if (!p.eat('*')) break;
            if (p.peek_int()) {
                term.coeff *= p.parse_int();
                if (!p.eat('*')) break;
            }
        }
        std::sort(term.word.begin(), term.word.end());
        terms.push_back(std::move(term));
        if (!p.eat('+')) break;
    }
    if (!p.done()) p.fail("trailing input");
    return terms;
}

std::vector<std::pair<BigInt, SGenName>> parse_s_expr(const std::string& text) {
    ExprParser p(text);
    std::vector<std::pair<BigInt, SGenName>> terms;
    auto parse_half = [&]() -> long long {
        long long num = p.parse_int();
        if (p.eat('/')) {
            long long den = p.parse_int();
            if (den != 2) p.fail("only halves are supported");
            return num;  // already doubled
        }
        return 2 * num;
    };
    for (;;) {
        BigInt coeff = 1;
        if (p.peek_int()) {
            coeff = p.parse_int();
            if (!p.eat('*')) {
                terms.emplace_back(coeff, SGenName{SGenKind::One, 0});
                if (!p.eat('+')) break;
                continue;
            }
        }
        p.skip_ws();
        SGenName g;
        if (p.pos < p.s.size() && p.s[p.pos] == '1') {
            ++p.pos;
            g = SGenName{SGenKind::One, 0};
        } else {
            std::string name = p.parse_ident();
            SGenKind kind;
            if (name == "g") {
                terms.emplace_back(coeff, SGenName{SGenKind::G, 0});
                if (!p.eat('+')) break;
                continue;
            } else if (name == "rho") {
                kind = SGenKind::Rho;
            } else if (name == "mu") {
                kind = SGenKind::Mu;
            } else if (name == "xi") {
                kind = SGenKind::Xi;
            } else if (name == "mu0rho") {
                kind = SGenKind::MuRho;
            } else if (name == "mu02rho") {
                kind = SGenKind::Mu2Rho;
            } else if (name == "mu0mu") {
                kind = SGenKind::MuMu;
            } else {
                p.fail("unknown classical generator '" + name + "'");
            }
            if (!p.eat('[')) p.fail("expected '['");
            long long p2 = parse_half();
            if (!p.eat(']')) p.fail("expected ']'");
            g = SGenName{kind, p2};
        }
        terms.emplace_back(coeff, g);
        if (!p.eat('+')) break;
    }
    if (!p.done()) p.fail("trailing input");
    return terms;
}

GreenElement eval_green_expr(const GreenRing& ring, const std::string& text) {
    auto terms = parse_green_expr(text);
    std::optional<GreenElement> acc;
    for (const auto& term : terms) {
        GreenElement x = ring.normalize(term.word, Scalar(term.coeff, ring.params().precision));
        if (!acc) {
            acc = x;
        } else {
            if (acc->s != x.s || acc->c != x.c)
                throw ExprError("bidegree mismatch between summands in '" + text + "'");
            acc = ring.add(*acc, x);
        }
    }
    if (!acc) throw ExprError("empty expression");
    return *acc;
}

SElement eval_s_expr(const ClassicalSphere& sphere, const std::string& text) {
    auto terms = parse_s_expr(text);
    std::optional<SElement> acc;
    for (const auto& [coeff, name] : terms) {
        SElement x = sphere.from_name(name, Scalar(coeff, sphere.params().precision));
        if (!acc) {
            acc = x;
        } else {
            if (acc->stem != x.stem || acc->twist != x.twist)
                throw ExprError("degree mismatch between summands in '" + text + "'");
            acc = sphere.add(*acc, x);
        }
    }
    if (!acc) throw ExprError("empty expression");
    return *acc;
}

std::string element_str(const GreenRing& ring, const GreenElement& x) {
    GreenGroup g = ring.group(x.s, x.c);
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < g.names.size(); ++k) {
        if (x.coeff[k].is_zero()) continue;
        if (!first) os << " + ";
        BigInt v = x.coeff[k].signed_value();
        if (v != 1) os << v.str() << "*";
        os << g.names[k].str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string element_str(const ClassicalSphere& sphere, const SElement& x) {
    auto basis = sphere.s_basis(x.stem, x.twist);
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < basis.size(); ++k) {
        if (x.coeff[k].is_zero()) continue;
        if (!first) os << " + ";
        BigInt v = x.coeff[k].signed_value();
        if (v != 1) os << v.str() << "*";
        os << basis[k].str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string QueryResult::to_json() const {
    json j;
    j["kind"] = kind;
    j["ring"] = ring;
    j["bidegree"] = {s, c};
    j["group"] = group;
    j["basis"] = basis;
    j["values"] = values;
    return j.dump();
}

QueryResult QueryResult::from_json(const std::string& text) {
    json j = json::parse(text);
    QueryResult q;
    q.kind = j.at("kind").get<std::string>();
    q.ring = j.at("ring").get<std::string>();
    q.s = j.at("bidegree").at(0).get<long long>();
    q.c = j.at("bidegree").at(1).get<long long>();
    q.group = j.at("group").get<std::string>();
    q.basis = j.at("basis").get<std::vector<std::string>>();
    q.values = j.at("values").get<std::vector<std::string>>();
    return q;
}

bool QueryResult::operator==(const QueryResult& o) const {
    return kind == o.kind && ring == o.ring && s == o.s && c == o.c && group == o.group &&
           basis == o.basis && values == o.values;
}

std::string QueryResult::text() const {
    std::ostringstream os;
    os << kind << " " << ring << " (" << s << "," << c << ")\n";
    os << "  group: " << group << "\n";
    size_t width = 0;
    for (const auto& b : basis) width = std::max(width, b.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        os << "  " << basis[i];
        if (i < values.size() && !values.empty()) {
            for (size_t pad = basis[i].size(); pad < width + 2; ++pad) os << ' ';
            os << values[i];
        }
        os << "\n";
    }
    return os.str();
}

QueryResult group_query(const Engine& engine, const std::string& ring, long long s, long long c) {
    QueryResult q;
    q.kind = "group";
    q.ring = ring;
    q.s = s;
    q.c = c;
    if (ring == "sphere") {
        GreenGroup g = engine.green().group(s, c);
        q.group = g.module.str();
        for (const auto& n : g.names) q.basis.push_back(n.str());
    } else if (ring == "ku") {
        FGModule m = engine.ku().group(s, c);
        q.group = m.str();
        q.basis = m.basis_names;
    } else if (ring == "ko") {
        FGModule m = engine.ko().ko_group(s, c);
        q.group = m.str();
        q.basis = m.basis_names;
    } else if (ring == "classical") {
        FGModule m = engine.sphere().s_group(s, int(((c % 2) + 2) % 2));
        q.group = m.str();
        q.basis = m.basis_names;
    } else {
        throw ExprError("unknown ring '" + ring + "'");
    }
    return q;
}

QueryResult element_query(const GreenRing& ring, const GreenElement& x) {
    QueryResult q;
    q.kind = "element";
    q.ring = "sphere";
    q.s = x.s;
    q.c = x.c;
    GreenGroup g = ring.group(x.s, x.c);
    q.group = g.module.str();
    for (size_t k = 0; k < g.names.size(); ++k) {
        q.basis.push_back(g.names[k].str());
        q.values.push_back(x.coeff[k].str());
    }
    return q;
}

QueryResult selement_query(const ClassicalSphere& sphere, const SElement& x) {
    QueryResult q;
    q.kind = "selement";
    q.ring = "classical";
    q.s = x.stem;
    q.c = x.twist;
    auto basis = sphere.s_basis(x.stem, x.twist);
    q.group = sphere.s_group(x.stem, x.twist).str();
    for (size_t k = 0; k < basis.size(); ++k) {
        q.basis.push_back(basis[k].str());
        q.values.push_back(x.coeff[k].str());
    }
    return q;
}

}  // namespace greensphere
