#pragma once

#include "greensphere/twoadic.hpp"

#include <string>
#include <utility>
#include <vector>

namespace greensphere {

// Dense matrix over exact big integers. Entries are never pre-reduced mod 2^N,
// so pivot valuations stay exact through elimination.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
    static IntMat identity(int n);
    static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    const BigInt& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

    IntMat operator*(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat transpose() const;
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool is_zero() const;

    // Horizontal concatenation [*this | o].
    IntMat hcat(const IntMat& o) const;
    std::vector<BigInt> apply(const std::vector<BigInt>& x) const;  // this * x
    std::string str() const;

private:
    int rows_, cols_;
    std::vector<BigInt> a_;
};

// U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}.
struct SnfResult {
    IntMat d, u, v;
    std::vector<BigInt> diagonal() const;
};

SnfResult smith_normal_form(const IntMat& m);

// Saturated basis of the right kernel {x : Mx = 0}, as columns.
IntMat kernel(const IntMat& m);

// Finitely generated Z_2-module: free rank plus 2-power torsion exponents.
struct FGModule {
    int free_rank = 0;
    std::vector<int> torsion;  // ascending exponents e with summand Z/2^e
    std::vector<std::string> basis_names;

    static FGModule free(int rank) { return FGModule{rank, {}, {}}; }
    static FGModule zero() { return FGModule{}; }
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    // log2 of the order of the torsion part.
    long long torsion_log2_order() const;
    bool same_type(const FGModule& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    FGModule direct_sum(const FGModule& o) const;
    std::string str() const;
    // Presentation matrix: Z^g / columns, g = free_rank + torsion count.
    IntMat presentation() const;
    int generator_count() const { return free_rank + int(torsion.size()); }
};

// Z_2^{ambient_rank} / (column span of m); unit invariant factors dropped,
// only 2-parts of the rest are kept.
FGModule cokernel(const IntMat& m, int ambient_rank);

// Invariant factors (2-parts) of Z^{g}/(columns of rels), where g = ambient.
FGModule quotient_module(const IntMat& rels, int ambient);

// Map of presented modules f: M -> N, given by its matrix on generators.
struct ModuleMap {
    FGModule source, target;
    IntMat matrix;
};

struct KerCoker {
    FGModule ker, coker;
    // Columns generate the kernel sublattice in source generators.
    IntMat ker_lattice;
    // Distinguished lifts of the cokernel generators in target generators,
    // one column per nonzero invariant factor, free generators first.
    IntMat coker_lifts;
};

// Kernel and cokernel of a map of finitely presented Z_2-modules.
KerCoker hom_ker_coker(const IntMat& f, const IntMat& rels_source, const IntMat& rels_target);

// Spec-facing wrapper for an endomorphism of a finitely generated module.
KerCoker ker_coker_endo(const FGModule& m, const ModuleMap& phi);

// H^n(C_2; M) for the involution sigma: H^0 = ker(sigma-1), odd n:
// ker(sigma+1)/im(sigma-1), even n > 0: ker(sigma-1)/im(sigma+1).
// Rejects sigma with sigma^2 != id.
FGModule c2_cohomology(const FGModule& m, const ModuleMap& sigma, int n);

// Solve f * x = b + rels * y 2-locally (odd denominators allowed). Returns the
// x part reduced to Scalars, or nullopt when no 2-local solution exists.
std::optional<std::vector<Scalar>> solve_2local(const IntMat& f, const IntMat& rels,
                                                const std::vector<BigInt>& b, int precision);

// Membership of b in the subgroup generated by the columns of gens inside
// Z^g/(columns of rels), 2-locally.
bool subgroup_contains(const IntMat& gens, const IntMat& rels, const std::vector<BigInt>& b,
                       int precision);

// Equality of the subgroups generated by the columns of a and b in
// Z^g/(columns of rels).
bool subgroups_equal(const IntMat& a, const IntMat& b, const IntMat& rels, int precision);

// Invariant factors of the subquotient (lattice spanned by gens + rels)/(rels)
// inside Z^g/rels.
FGModule subgroup_module(const IntMat& gens, const IntMat& rels);

// F_2-rank of a matrix.
int rank_mod2(const IntMat& m);

}  // namespace greensphere
