#pragma once

#include "greensphere/modlin.hpp"
#include "greensphere/twoadic.hpp"

#include <utility>
#include <vector>

namespace greensphere {

// Monomial b^i t^{2j} r^m in the Borel KU ring; bidegree s = 2i - m, c = 2i + 2j.
struct KUMonomial {
    long long i = 0;
    long long j = 0;
    int m = 0;

    long long stem() const { return 2 * i - m; }
    long long coweight() const { return 2 * i + 2 * j; }
    std::string str() const;
};

// Element of pi_{s,c} b(KU) over the canonical basis of that bidegree:
// nothing for odd c; the single m = 1 monomial for odd s; the m = 0 and m = 2
// monomials for even s. Higher r-powers are rewritten downward via
// 2 r^m X = r^{m+2} t^{-2} b X (m >= 1 only).
struct KUElement {
    long long s = 0, c = 0;
    std::vector<Scalar> coeff;  // one entry per canonical basis slot
    bool is_zero() const;
};

class KURing {
public:
    explicit KURing(Params params);

    const Params& params() const { return params_; }

    // Canonical basis of pi_{s,c}; empty for odd coweight.
    std::vector<KUMonomial> basis(long long s, long long c) const;
    FGModule group(long long s, long long c) const;

    KUElement zero(long long s, long long c) const;
    KUElement monomial_element(const KUMonomial& mono, Scalar coeff) const;
    KUElement from_monomial(const KUMonomial& mono) const;

    KUElement add(const KUElement& x, const KUElement& y) const;
    KUElement scale(const Scalar& a, const KUElement& x) const;
    KUElement multiply(const KUElement& x, const KUElement& y) const;
    // psi^k for any odd k given as an exact integer parameter.
    KUElement psi(long long k, const KUElement& x) const;
    KUElement rho_action(const KUElement& x) const;

    // h = 2 - r^2 t^{-2} b in pi_{0,0}, and the orientation class z = r eta0.
    KUElement h_class() const;
    KUElement unit_class() const;

    // Matrix of multiplication by rho^t into pi_{s,c} (from pi_{s+t,c}),
    // columns = images of the source basis.
    IntMat rho_power_matrix(long long s, long long c, int t) const;
    // Matrix of psi^k - 1 on pi_{s,c} (exact integer entries when k = -1;
    // residues at extended working precision otherwise).
    IntMat psi_matrix(long long s, long long c, long long k) const;

    // Cokernel and kernel of rho^{n+1}: pi_{s+n+1,c} -> pi_{s,c}.
    std::pair<FGModule, FGModule> finite_stunted(long long s, long long c, int n) const;
    // Total order exponent of pi_{s,c}(b(KU) ⊗ Cof(rho^{n+1})) via the rho tower
    // long exact sequence; nullopt when the group is infinite.
    std::optional<long long> stunted_log2_order(long long s, long long c, int n) const;

    int working_precision() const { return 2 * params_.precision + 16; }

private:
    Params params_;
    int slot_of(const KUElement& x, int m) const;
    void add_monomial(KUElement& x, const KUMonomial& mono, const Scalar& coeff) const;
};

}  // namespace greensphere
