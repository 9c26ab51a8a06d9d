#include "greensphere/tables.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace greensphere {

int family_arity(Family f) {
    switch (f) {
        case Family::W:
        case Family::Eta:
        case Family::Tauh:
            return 1;
        default:
            return 2;
    }
}

const char* family_name(Family f) {
    switch (f) {
        case Family::W: return "w";
        case Family::Eta: return "eta";
        case Family::Tauh: return "tauh";
        case Family::Mu: return "mu";
        case Family::Zeta: return "zeta";
        case Family::Rho: return "rho";
        case Family::Xi: return "xi";
    }
    return "?";
}

long long LinExpr::eval(const std::vector<long long>& vals) const {
    long long v = constant;
    for (auto [var, coeff] : terms) v += coeff * vals.at(size_t(var));
    return v;
}

bool ParamPattern::match(long long v, std::vector<std::optional<long long>>& binding) const {
    auto bind = [&](long long value) {
        if (binding[size_t(var)] && *binding[size_t(var)] != value) return false;
        binding[size_t(var)] = value;
        return true;
    };
    switch (kind) {
        case Lit: return v == lit;
        case Var: return bind(v);
        case TwoVar: return v % 2 == 0 && bind(v / 2);
        case TwoVarPlusOne: {
            long long r = ((v % 2) + 2) % 2;
            return r == 1 && bind((v - 1) / 2);
        }
    }
    return false;
}

namespace {

struct LineParser {
    const std::string& s;
    size_t pos = 0;
    int line;
    std::map<char, int>* vars;
    bool allow_new_vars = true;

    LineParser(const std::string& str, int line_, std::map<char, int>* vars_)
        : s(str), line(line_), vars(vars_) {}

    [[noreturn]] void fail(const std::string& msg) const { throw TableParseError(line, msg); }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char ch) {
        skip_ws();
        if (pos < s.size() && s[pos] == ch) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char ch) {
        if (!eat(ch)) fail(std::string("expected '") + ch + "'");
    }
    bool eat_word(const std::string& word) {
        skip_ws();
        if (s.compare(pos, word.size(), word) == 0) {
            size_t end = pos + word.size();
            if (end < s.size() && (std::isalnum(s[end]) || s[end] == '_')) return false;
            pos = end;
            return true;
        }
        return false;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    long long parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        if (pos >= s.size() || !std::isdigit(s[pos])) fail("expected integer");
        while (pos < s.size() && std::isdigit(s[pos])) ++pos;
        return std::stoll(s.substr(start, pos - start));
    }

    int var_id(char name) {
        auto it = vars->find(name);
        if (it != vars->end()) return it->second;
        if (!allow_new_vars) fail(std::string("unknown variable '") + name + "'");
        int id = int(vars->size());
        (*vars)[name] = id;
        return id;
    }

    // linear expression: term (('+'|'-') term)*, term = INT | INT? VAR
    LinExpr parse_lin() {
        LinExpr e;
        bool first = true;
        for (;;) {
            skip_ws();
            long long sign = 1;
            if (eat('+')) {
                sign = 1;
            } else if (eat('-')) {
                sign = -1;
            } else if (!first) {
                break;
            }
            skip_ws();
            long long coeff = 1;
            bool saw_int = false;
            if (pos < s.size() && std::isdigit(s[pos])) {
                size_t start = pos;
                while (pos < s.size() && std::isdigit(s[pos])) ++pos;
                coeff = std::stoll(s.substr(start, pos - start));
                saw_int = true;
            }
            if (pos < s.size() && std::isalpha(s[pos])) {
                char name = s[pos++];
                e.terms.emplace_back(var_id(name), sign * coeff);
            } else if (saw_int) {
                e.constant += sign * coeff;
            } else if (first) {
                fail("expected linear expression");
            } else {
                fail("dangling sign in linear expression");
            }
            first = false;
        }
        return e;
    }

    // LHS parameter pattern: INT | VAR | 2 VAR | 2 VAR + 1
    ParamPattern parse_param_pattern() {
        skip_ws();
        ParamPattern p;
        bool neg = false;
        if (pos < s.size() && s[pos] == '-') {
            neg = true;
            ++pos;
        }
        if (pos < s.size() && std::isdigit(s[pos])) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(s[pos])) ++pos;
            long long value = std::stoll(s.substr(start, pos - start));
            if (pos < s.size() && std::isalpha(s[pos])) {
                if (neg || value != 2) fail("only patterns 2v / 2v+1 are supported");
                char name = s[pos++];
                p.var = var_id(name);
                if (eat('+')) {
                    long long one = parse_int();
                    if (one != 1) fail("only +1 offsets are supported in patterns");
                    p.kind = ParamPattern::TwoVarPlusOne;
                } else {
                    p.kind = ParamPattern::TwoVar;
                }
                return p;
            }
            p.kind = ParamPattern::Lit;
            p.lit = neg ? -value : value;
            return p;
        }
        if (pos < s.size() && std::isalpha(s[pos])) {
            if (neg) fail("negated variables are not supported in patterns");
            p.kind = ParamPattern::Var;
            p.var = var_id(s[pos++]);
            return p;
        }
        fail("expected parameter pattern");
    }

    Family parse_family() {
        for (int f = 0; f < kFamilyCount; ++f) {
            // longest names first to avoid prefix clashes: tauh before t..., eta before e
            static const Family order[] = {Family::Tauh, Family::Eta, Family::Zeta,
                                           Family::Rho, Family::Xi, Family::Mu, Family::W};
            Family fam = order[f];
            if (eat_word(family_name(fam))) return fam;
        }
        fail("expected generator family name");
    }

    std::vector<AtomPattern> parse_word_pattern() {
        std::vector<AtomPattern> atoms;
        for (;;) {
            AtomPattern atom;
            atom.fam = parse_family();
            expect('[');
            atom.p0 = parse_param_pattern();
            if (family_arity(atom.fam) == 2) {
                expect(',');
                atom.p1 = parse_param_pattern();
            }
            expect(']');
            atoms.push_back(atom);
            if (!eat('*')) break;
        }
        return atoms;
    }

    std::vector<GenAtomTemplate> parse_word_template() {
        std::vector<GenAtomTemplate> atoms;
        skip_ws();
        if (pos < s.size() && s[pos] == '1' &&
            (pos + 1 >= s.size() || !std::isalnum(s[pos + 1]))) {
            ++pos;
            return atoms;  // the empty word
        }
        for (;;) {
            GenAtomTemplate atom;
            atom.fam = parse_family();
            expect('[');
            atom.p0 = parse_lin();
            if (family_arity(atom.fam) == 2) {
                expect(',');
                atom.p1 = parse_lin();
            }
            expect(']');
            int power = 1;
            if (eat('^')) power = int(parse_int());
            for (int i = 0; i < power; ++i) atoms.push_back(atom);
            if (!eat('*')) break;
        }
        return atoms;
    }

    CoeffExpr parse_coeff() {
        CoeffExpr e;
        for (;;) {
            skip_ws();
            CoeffFactor f;
            if (s.compare(pos, 4, "2^(j") == 0) {
                pos += 4;
                expect('(');
                f.kind = CoeffFactor::Pow2JMinus1;
                f.arg1 = parse_lin();
                expect(')');
                expect('-');
                if (parse_int() != 1) fail("only j(..)-1 exponents are supported");
                expect(')');
            } else if (eat_word("u")) {
                expect('(');
                f.kind = CoeffFactor::Unit;
                f.arg1 = parse_lin();
                expect(',');
                f.arg2 = parse_lin();
                expect(')');
            } else {
                f.kind = CoeffFactor::Int;
                f.value = parse_int();
            }
            e.push_back(f);
            if (!eat('*')) break;
        }
        return e;
    }

    std::vector<TermTemplate> parse_rhs() {
        std::vector<TermTemplate> terms;
        skip_ws();
        if (pos < s.size() && s[pos] == '0' &&
            (pos + 1 >= s.size() || !std::isalnum(s[pos + 1]))) {
            ++pos;
            return terms;
        }
        for (;;) {
            TermTemplate t;
            expect('(');
            t.coeff = parse_coeff();
            expect(')');
            t.word = parse_word_template();
            terms.push_back(std::move(t));
            if (!eat('+')) break;
        }
        return terms;
    }

    SrcName parse_src(LinExpr* param) {
        static const std::pair<const char*, SrcName> names[] = {
            {"s1", SrcName::One},        {"smu2rho", SrcName::Mu2Rho},
            {"smurho", SrcName::MuRho},  {"smumu", SrcName::MuMu},
            {"srho", SrcName::Rho},      {"smu", SrcName::Mu},
            {"sxi", SrcName::Xi},
        };
        for (auto [name, id] : names) {
            if (eat_word(name)) {
                if (id != SrcName::One) {
                    expect('(');
                    *param = parse_lin();
                    expect(')');
                }
                return id;
            }
        }
        fail("expected classical-sphere generator name");
    }
};

}  // namespace

GreenTables parse_tables(const std::string& text) {
    GreenTables out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    enum class Section { None, Table3, Table1, Table2, Table4, Unit } section = Section::None;
    bool saw_header = false;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line = line.substr(start);

        if (!saw_header) {
            std::map<char, int> vars;
            LineParser p(line, lineno, &vars);
            if (!p.eat_word("greensphere-tables")) p.fail("missing greensphere-tables header");
            out.version = int(p.parse_int());
            if (out.version != 1) p.fail("unsupported table version");
            saw_header = true;
            continue;
        }
        if (line == "[table3]") { section = Section::Table3; continue; }
        if (line == "[table1]") { section = Section::Table1; continue; }
        if (line == "[table2]") { section = Section::Table2; continue; }
        if (line == "[table4]") { section = Section::Table4; continue; }
        if (line == "[unit]") { section = Section::Unit; continue; }

        std::map<char, int> vars;
        LineParser p(line, lineno, &vars);
        switch (section) {
            case Section::Table3: {
                if (!p.eat_word("gen")) p.fail("expected 'gen'");
                GenRec rec;
                rec.fam = p.parse_family();
                p.expect('[');
                p.parse_lin();
                if (family_arity(rec.fam) == 2) {
                    p.expect(',');
                    p.parse_lin();
                }
                p.expect(']');
                p.expect('(');
                rec.s_expr = p.parse_lin();
                p.expect(',');
                rec.c_expr = p.parse_lin();
                p.expect(')');
                rec.nparams = family_arity(rec.fam);
                out.table3.push_back(rec);
                break;
            }
            case Section::Table1: {
                if (!p.eat_word("row")) p.fail("expected 'row'");
                RowRec rec;
                rec.src_line = lineno;
                rec.text = line;
                // the two row variables are fixed as a then b
                p.var_id('a');
                p.var_id('b');
                p.expect('(');
                rec.s_expr = p.parse_lin();
                p.expect(',');
                rec.c_expr = p.parse_lin();
                p.expect(')');
                if (p.eat_word("req")) {
                    if (!p.eat_word("b!=0")) p.fail("unknown row constraint");
                    rec.require_b_nonzero = true;
                }
                p.expect(':');
                rec.words.push_back(p.parse_word_template());
                if (p.eat('&')) rec.words.push_back(p.parse_word_template());
                p.expect(':');
                if (p.eat_word("Z2")) {
                    rec.group.kind = GroupKind::Z2;
                } else if (p.eat_word("Z/2")) {
                    rec.group.kind = GroupKind::Z2e;
                    rec.group.exponent = 1;
                } else if (p.eat_word("Z/8")) {
                    rec.group.kind = GroupKind::Z2e;
                    rec.group.exponent = 3;
                } else if (p.eat_word("S")) {
                    rec.group.kind = GroupKind::SGroup;
                    p.expect('(');
                    rec.group.s_arg = p.parse_lin();
                    p.expect(')');
                } else if (p.eat_word("E")) {
                    rec.group.kind = GroupKind::EPair;
                    p.expect('(');
                    rec.group.e_a = p.parse_lin();
                    p.expect(',');
                    rec.group.e_b = p.parse_lin();
                    p.expect(')');
                } else {
                    p.fail("expected group spec");
                }
                p.expect(':');
                rec.detect_line = int(p.parse_int());
                p.expect(':');
                for (;;) {
                    ResTemplate res;
                    p.skip_ws();
                    if (p.peek() == '0') {
                        p.expect('0');
                        res.zero = true;
                    } else {
                        res.zero = false;
                        p.expect('(');
                        res.coeff = p.parse_coeff();
                        p.expect(')');
                        res.name = p.parse_src(&res.param);
                    }
                    rec.res.push_back(std::move(res));
                    if (!p.eat('&')) break;
                }
                if (rec.res.size() != rec.words.size())
                    p.fail("restriction count does not match generator count");
                if ((rec.group.kind == GroupKind::EPair) != (rec.words.size() == 2))
                    p.fail("paired generators require an E group");
                if (!p.at_end()) p.fail("trailing input");
                out.table1.push_back(std::move(rec));
                break;
            }
            case Section::Table2: {
                if (!p.eat_word("rule")) p.fail("expected 'rule'");
                RuleRec rec;
                rec.text = line;
                rec.lhs = p.parse_word_pattern();
                p.expect('-');
                p.expect('>');
                p.allow_new_vars = false;
                rec.rhs = p.parse_rhs();
                rec.nvars = int(vars.size());
                for (const auto& atom : rec.lhs) rec.family_mask |= 1u << int(atom.fam);
                if (!p.at_end()) p.fail("trailing input");
                out.table2.push_back(std::move(rec));
                break;
            }
            case Section::Table4: {
                if (!p.eat_word("tr")) p.fail("expected 'tr'");
                TrRec rec;
                p.var_id('a');
                p.var_id('b');
                p.expect('(');
                rec.s_expr = p.parse_lin();
                p.expect(',');
                rec.c_expr = p.parse_lin();
                p.expect(')');
                LinExpr param;
                rec.src = p.parse_src(&param);
                p.expect('-');
                p.expect('>');
                rec.out = p.parse_rhs();
                if (!p.at_end()) p.fail("trailing input");
                out.table4.push_back(std::move(rec));
                break;
            }
            case Section::Unit: {
                if (!p.eat_word("unit")) p.fail("expected 'unit'");
                UnitRec rec;
                LinExpr param;
                rec.src = p.parse_src(&param);
                p.expect('-');
                p.expect('>');
                rec.word = p.parse_word_template();
                if (!p.at_end()) p.fail("trailing input");
                out.unit.push_back(std::move(rec));
                break;
            }
            case Section::None:
                p.fail("content before any section header");
        }
    }
    if (!saw_header) throw TableParseError(0, "empty table file");
    if (out.table1.empty() || out.table2.empty() || out.table3.empty() || out.table4.empty())
        throw TableParseError(lineno, "missing table section");
    return out;
}

GreenTables load_tables(const std::string& explicit_path) {
    std::string path = explicit_path;
    if (path.empty()) {
        if (const char* env = std::getenv("GREENSPHERE_TABLES")) path = env;
    }
    if (path.empty()) return parse_tables(embedded_tables_text());
    std::ifstream in(path);
    if (!in) throw TableParseError(0, "cannot open table file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tables(buf.str());
}

}  // namespace greensphere
