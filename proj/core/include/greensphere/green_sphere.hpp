#pragma once

#include "greensphere/classical_sphere.hpp"
#include "greensphere/ko_ring.hpp"
#include "greensphere/tables.hpp"

#include <string>
#include <vector>

namespace greensphere {

// A generator of one of the seven multiplicative families; tauh stores the
// tau-exponent half t (tau^{2t} h) in a.
struct GenName {
    Family fam = Family::W;
    long long a = 0, b = 0;

    bool operator==(const GenName& o) const { return fam == o.fam && a == o.a && b == o.b; }
    bool operator<(const GenName& o) const {
        if (fam != o.fam) return int(fam) < int(o.fam);
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
    std::string str() const;
};

using GenWord = std::vector<GenName>;
std::string word_str(const GenWord& w);

// One named additive generator of pi_{s,c}: a table row instance plus the slot
// within an E-pair.
struct GreenBasisElt {
    int row = 0;
    long long a = 0, b = 0;
    int slot = 0;
    GenWord word;
    std::string str() const { return word_str(word); }
};

struct GreenGroup {
    long long s = 0, c = 0;
    std::vector<GreenBasisElt> names;
    // summand index and size bookkeeping: each table1 row instance is one
    // summand (E-pairs span two adjacent name slots)
    std::vector<int> summand_of;  // per name slot
    FGModule module;
};

struct GreenElement {
    long long s = 0, c = 0;
    std::vector<Scalar> coeff;  // over GreenGroup::names
    bool is_zero() const;
};

struct Report {
    long long checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    void fail(const std::string& what) { failures.push_back(what); }
    std::string summary(const std::string& label) const;
};

class GreenRing {
public:
    GreenRing(GreenTables tables, Params params, const KORing* ko, const ClassicalSphere* sphere);

    const Params& params() const { return params_; }
    const GreenTables& tables() const { return tables_; }
    const ClassicalSphere& sphere() const { return *sphere_; }
    const KORing& ko() const { return *ko_; }

    long long gen_stem(const GenName& g) const;
    long long gen_coweight(const GenName& g) const;

    GreenGroup group(long long s, long long c) const;
    GreenElement zero(long long s, long long c) const;

    // Rewrites coeff * w to its normal form over the table1 additive basis.
    GreenElement normalize(const GenWord& w, const Scalar& coeff) const;
    GreenElement normalize(const GenWord& w) const;

    GreenElement add(const GreenElement& x, const GreenElement& y) const;
    GreenElement scale(const Scalar& a, const GreenElement& x) const;
    GreenElement multiply(const GreenElement& x, const GreenElement& y) const;
    bool equal(const GreenElement& x, const GreenElement& y) const;

    SElement restriction(const GreenElement& x) const;
    GreenElement transfer(long long c, const SElement& alpha) const;
    GreenElement unit_map(const SElement& alpha) const;
    SElement weyl_action(long long c, const SElement& alpha) const;
    GreenElement tau4_shift(const GreenElement& x) const;

    // Presentation matrix of group(s,c) in its named coordinates.
    IntMat relations(long long s, long long c) const;
    // omega0-multiplication pi_{s,c} -> pi_{s-1,c}.
    IntMat omega_matrix(long long s, long long c) const;
    // Restriction pi_{s,c} -> pi_s S in named coordinates.
    IntMat res_matrix(long long s, long long c) const;
    // Transfer pi_s S -> pi_{s,c}.
    IntMat tr_matrix(long long s, long long c) const;
    IntMat s_relations(long long stem) const;

    Report verify_hfpss(int window) const;
    Report verify_axioms(int window) const;

private:
    GreenTables tables_;
    Params params_;
    Params wide_params_;
    const KORing* ko_;
    const ClassicalSphere* sphere_;
    std::vector<std::pair<LinExpr, LinExpr>> family_bideg_;  // per Family

    struct Term {
        BigInt coeff;
        GenWord word;
    };

    BigInt eval_coeff(const CoeffExpr& e, const std::vector<long long>& vals, bool* is_zero) const;
    GenWord instantiate(const std::vector<GenAtomTemplate>& tmpl,
                        const std::vector<long long>& vals) const;
    bool match_rule(const RuleRec& rule, const GenWord& word, std::vector<Term>& produced,
                    const BigInt& coeff) const;
    std::optional<size_t> identify(const GreenGroup& g, const GenWord& word) const;
    void reduce_coords(const GreenGroup& g, std::vector<BigInt>& coords) const;
    GreenElement element_from_coords(const GreenGroup& g, std::vector<BigInt> coords) const;
    std::vector<BigInt> normalize_coords(const GreenGroup& g, const GenWord& w,
                                         const BigInt& coeff) const;
    GenWord unit_word(const SGenName& name) const;
    FGModule summand_module(const RowRec& row, long long a, long long b) const;
};

}  // namespace greensphere
