#pragma once

#include "greensphere/twoadic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace greensphere {

struct TableParseError : std::runtime_error {
    int line;
    TableParseError(int line_, const std::string& msg)
        : std::runtime_error("tables:" + std::to_string(line_) + ": " + msg), line(line_) {}
};

enum class Family : int { W = 0, Eta, Tauh, Mu, Zeta, Rho, Xi };
constexpr int kFamilyCount = 7;
int family_arity(Family f);
const char* family_name(Family f);

// Linear expression in per-record variables.
struct LinExpr {
    long long constant = 0;
    std::vector<std::pair<int, long long>> terms;  // (var index, coefficient)
    long long eval(const std::vector<long long>& vals) const;
    bool is_constant() const { return terms.empty(); }
};

// Left-hand-side parameter pattern: literal, variable, 2*variable (even) or
// 2*variable+1 (odd).
struct ParamPattern {
    enum Kind { Lit, Var, TwoVar, TwoVarPlusOne } kind = Lit;
    long long lit = 0;
    int var = -1;
    bool match(long long v, std::vector<std::optional<long long>>& binding) const;
};

struct AtomPattern {
    Family fam = Family::W;
    ParamPattern p0, p1;
};

struct GenAtomTemplate {
    Family fam = Family::W;
    LinExpr p0, p1;
};

struct CoeffFactor {
    enum Kind { Int, Pow2JMinus1, Unit } kind = Int;
    BigInt value = 1;  // Int
    LinExpr arg1, arg2;
};
using CoeffExpr = std::vector<CoeffFactor>;

struct TermTemplate {
    CoeffExpr coeff;
    std::vector<GenAtomTemplate> word;
};

struct RuleRec {
    std::vector<AtomPattern> lhs;
    std::vector<TermTemplate> rhs;  // empty means the product vanishes
    int nvars = 0;
    unsigned family_mask = 0;
    std::string text;
};

enum class SrcName { One, Rho, MuRho, Mu, Mu2Rho, MuMu, Xi };

struct ResTemplate {
    bool zero = true;
    CoeffExpr coeff;
    SrcName name = SrcName::One;
    LinExpr param;
};

enum class GroupKind { Z2, Z2e, SGroup, EPair };
struct GroupSpec {
    GroupKind kind = GroupKind::Z2;
    int exponent = 0;
    LinExpr s_arg;
    LinExpr e_a, e_b;
};

struct RowRec {
    LinExpr s_expr, c_expr;  // in the variables a, b
    bool require_b_nonzero = false;
    std::vector<std::vector<GenAtomTemplate>> words;
    GroupSpec group;
    int detect_line = 0;  // 0-line or 1-line of the descent spectral sequence
    int src_line = 0;
    std::vector<ResTemplate> res;
    std::string text;
};

struct GenRec {
    Family fam = Family::W;
    LinExpr s_expr, c_expr;
    int nparams = 1;
};

struct TrRec {
    LinExpr s_expr, c_expr;
    SrcName src = SrcName::One;
    std::vector<TermTemplate> out;
};

struct UnitRec {
    SrcName src = SrcName::One;
    std::vector<GenAtomTemplate> word;
};

struct GreenTables {
    int version = 0;
    std::vector<GenRec> table3;
    std::vector<RowRec> table1;
    std::vector<RuleRec> table2;
    std::vector<TrRec> table4;
    std::vector<UnitRec> unit;
};

GreenTables parse_tables(const std::string& text);

// Byte-for-byte copy of data/greensphere_tables.txt baked in at build time.
const std::string& embedded_tables_text();

// Load order: explicit path argument, then GREENSPHERE_TABLES, then the
// embedded copy.
GreenTables load_tables(const std::string& explicit_path = "");

}  // namespace greensphere
