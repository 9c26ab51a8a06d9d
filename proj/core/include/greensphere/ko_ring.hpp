#pragma once

#include "greensphere/ku_ring.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace greensphere {

// Canonical monomial of H^*(C_2; pi b(KU)) = Z2[b^{±2}, t^{±4}, r, t2h, e0, mu]/I:
// b^{2i} t^{4j} r^rho e0^eta (t2h)^q mu^mu with the core normalized so that
// eta <= 1, (rho,eta) as in the six filtration-0 / four mu-tower cores.
// Position: s = 4i - rho + eta + mu, c = 4i + 4j + 2q + mu; filtration = mu.
struct E2Monomial {
    long long i = 0, j = 0;
    int rho = 0, eta = 0, q = 0, mu = 0;

    long long stem() const { return 4 * i - rho + eta + mu; }
    long long coweight() const { return 4 * i + 4 * j + 2 * q + mu; }
    int filtration() const { return mu; }
    bool operator==(const E2Monomial& o) const {
        return i == o.i && j == o.j && rho == o.rho && eta == o.eta && q == o.q && mu == o.mu;
    }
    std::string str() const;
};

// Homogeneous class on the E2 page at position (s,c) and filtration n.
struct E2Class {
    long long s = 0, c = 0;
    int n = 0;
    std::vector<Scalar> coeff;  // over e2_basis(s,c,n)
    bool is_zero() const;
};

// Canonical basis element of pi_{s,c} b(KO): v^a t^{4b} times one of twenty cores
// in r = rho, e = eta0, w = 2 sqrt(v), H = t^2 h, W = t^2 h sqrt(v), m = mu.
enum class KOCore {
    One, R, R2, R3, E, RE, E2, E3, E4, W2, H, WH,
    M, MR, ME, MRE, M2, M2R, M2E, M2RE
};

struct KOBasisElt {
    long long a = 0, b = 0;
    KOCore core = KOCore::One;
    bool is_torsion() const;  // mu cores are Z/2, the rest are Z2
    std::string str() const;
};

struct KOElement {
    long long s = 0, c = 0;
    std::vector<Scalar> coeff;  // over ko basis of (s,c)
    bool is_zero() const;
};

class KORing {
public:
    explicit KORing(Params params);

    const Params& params() const { return params_; }
    const KURing& ku() const { return ku_; }

    // ---- E2 page of the HFPSS for KO = KU^{hC2} ----

    std::vector<E2Monomial> e2_basis(long long s, long long c, int n) const;
    // Closed-form group at (s,c,n): Z2^k in filtration 0, (Z/2)^k above.
    FGModule e2_closed_form(long long s, long long c, int n) const;
    // Same group computed through modlin from the psi^{-1} action on pi b(KU);
    // throws VerificationError if it disagrees with the closed form.
    FGModule e2_page(long long s, long long c, int n) const;

    E2Class e2_zero(long long s, long long c, int n) const;
    E2Class e2_monomial(const E2Monomial& mono, const Scalar& coeff) const;
    E2Class d3(const E2Class& x) const;
    // d3 of a single (not necessarily canonical) monomial.
    E2Class d3_monomial(const E2Monomial& mono) const;

    // E4 = E_infinity: homology of d3.
    FGModule e4_page(long long s, long long c, int n) const;

    // ---- pi_{*,*} b(KO) ----

    std::vector<KOBasisElt> basis(long long s, long long c) const;
    // Closed-form group, with names; asserted against the spectral-sequence
    // assembly (throws VerificationError on mismatch).
    FGModule ko_group(long long s, long long c) const;
    FGModule ko_group_closed_form(long long s, long long c) const;
    FGModule ko_group_via_ss(long long s, long long c) const;

    KOElement zero(long long s, long long c) const;
    KOElement basis_element(long long s, long long c, size_t slot) const;
    KOElement core_element(long long a, long long b, KOCore core) const;
    KOElement add(const KOElement& x, const KOElement& y) const;
    KOElement scale(const Scalar& a, const KOElement& x) const;
    KOElement multiply(const KOElement& x, const KOElement& y) const;
    KOElement psi(long long k, const KOElement& x) const;

    // Relations of the canonical basis of (s,c) as a presentation matrix.
    IntMat relations(long long s, long long c) const;
    // Matrix of psi^k - 1 on pi_{s,c} b(KO), entries at working precision.
    IntMat psi_minus_one_matrix(long long s, long long c) const;
    // Matrix of rho^t: pi_{s+t,c} -> pi_{s,c}.
    IntMat rho_power_matrix(long long s, long long c, int t) const;

    // Witness y with rho^t y = x, if one exists 2-locally.
    std::optional<KOElement> divisible_by_rho(const KOElement& x, int t) const;

    // Cokernel and kernel of rho^{n+1}: pi_{s+n+1,c} -> pi_{s,c}.
    std::pair<FGModule, FGModule> finite_stunted(long long s, long long c, int n) const;
    // Total order exponent of pi_{s,c}(b(KO) ⊗ Cof(rho^{n+1})) via the rho-tower
    // long exact sequence; nullopt when infinite.
    std::optional<long long> stunted_log2_order(long long s, long long c, int n) const;
    // log2 |reduced KO^0(P_1^n)|, the Adams vector-field order.
    long long stunted_p1_log2_order(int n) const;

    int working_precision() const { return ku_.working_precision(); }

    // Intermediate monomial v^a T^b r^r e^e w^w H^H W^W m^m during reduction.
    struct Term {
        BigInt coeff;
        long long a = 0, b = 0;
        int r = 0, e = 0, w = 0, H = 0, W = 0, m = 0;
    };

private:
    Params params_;
    KURing ku_;

    void reduce_terms(std::vector<Term>& work, std::vector<Term>& out) const;
    std::vector<BigInt> terms_to_coords(long long s, long long c,
                                        const std::vector<KOBasisElt>& basis,
                                        std::vector<Term> terms) const;
    KOElement element_from_terms(long long s, long long c, const std::vector<Term>& terms,
                                 int precision) const;
    KOElement multiply_at(const KOElement& x, const KOElement& y, int precision) const;
    KOElement psi_at(long long k, const KOElement& x, int precision) const;
    KOElement zero_at(long long s, long long c, int precision) const;
};

// Exponent data of each core in the order of the KOCore enum.
struct KOCoreInfo {
    int r, e, w, H, W, m;
    int pos_s, pos_c;
    const char* name;
};
const std::array<KOCoreInfo, 20>& ko_core_table();

}  // namespace greensphere
