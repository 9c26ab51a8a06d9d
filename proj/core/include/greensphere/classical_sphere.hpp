#pragma once

#include "greensphere/ko_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace greensphere {

// Basis names of the K(1)-local stems pi_* S and their T-twisted companions.
// Parameters live in (1/2)Z and are stored doubled: SGenName{RHO, 2a} is rho_a,
// SGenName{RHO, 2a+1} is rho_{a+1/2}. The twist is the parameter's parity
// (G is the twist-1/2 unit-degree class).
enum class SGenKind { One, G, Rho, MuRho, Mu, Mu2Rho, MuMu, Xi };

struct SGenName {
    SGenKind kind = SGenKind::One;
    long long p2 = 0;  // doubled parameter

    long long stem() const;
    int twist() const;  // 0 or 1 (meaning epsilon = 1/2)
    std::string str() const;
    bool operator==(const SGenName& o) const { return kind == o.kind && p2 == o.p2; }
};

struct SElement {
    long long stem = 0;
    int twist = 0;
    std::vector<Scalar> coeff;  // over s_basis(stem, twist)
    bool is_zero() const;
};

enum class PicardClass { S, T };

// Attaching map of the 2-cell structure on P_{2n}; the unit coefficient of the
// odd rows cannot be pinned down and stays symbolic.
struct AttachingMap {
    bool zero = false;
    bool unit_coefficient = false;  // (unit) * generator
    BigInt coefficient = 1;         // used when unit_coefficient is false
    SGenName generator;
    std::string str() const;
};

struct UnspecifiedByPaper : std::runtime_error {
    explicit UnspecifiedByPaper(const std::string& msg) : std::runtime_error(msg) {}
};

class ClassicalSphere {
public:
    ClassicalSphere(Params params, const KORing* ko);

    const Params& params() const { return params_; }

    std::vector<SGenName> s_basis(long long stem, int twist) const;
    // Additive order exponent of a basis name; nullopt for the Z2 classes.
    std::optional<int> order_exp(const SGenName& g) const;
    FGModule s_group(long long stem, int twist) const;

    SElement zero(long long stem, int twist) const;
    SElement generator(const SGenName& g) const;
    SElement from_name(const SGenName& g, const Scalar& coeff) const;
    SElement add(const SElement& x, const SElement& y) const;
    SElement scale(const Scalar& a, const SElement& x) const;
    SElement multiply(const SElement& x, const SElement& y) const;
    bool equal(const SElement& x, const SElement& y) const;

    // P_{2n+1} in the K(1)-local Picard group, by residue lookup and by the
    // d3-survival of r b^{n+1} t^{-2(n+1)}; the two must agree.
    PicardClass picard_class(long long w) const;

    enum class Cofibering { First, Second };
    AttachingMap attaching_map(long long n, Cofibering side) const;

private:
    Params params_;
    const KORing* ko_;
    SElement reduce(long long stem, int twist,
                    std::vector<std::pair<BigInt, std::vector<SGenName>>> words) const;
};

}  // namespace greensphere
