#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace greensphere {

using BigInt = boost::multiprecision::cpp_int;

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Engine-wide configuration: coefficients are residues in Z/2^precision and the
// Adams operation parameter k must generate Z_2^x / {±1}, i.e. k = ±3 mod 8.
struct Params {
    int precision = 32;
    long long k = 3;

    void validate() const;
};

// 2-adic valuation of a nonzero integer.
int val2(const BigInt& n);

// A nonnegative integer extended by infinity, so that 2^infinity = 0 in Z_2.
class ExtNat {
public:
    ExtNat() = default;
    explicit ExtNat(long long v) : value_(v) {
        if (v < 0) throw DomainError("ExtNat: negative value");
    }
    static ExtNat infinity() {
        ExtNat e;
        e.value_ = -1;
        return e;
    }
    bool is_infinite() const { return value_ < 0; }
    long long value() const {
        if (is_infinite()) throw DomainError("ExtNat: value() of infinity");
        return value_;
    }
    ExtNat operator+(long long d) const {
        return is_infinite() ? infinity() : ExtNat(value_ + d);
    }
    bool operator==(const ExtNat& o) const { return value_ == o.value_; }
    std::string str() const { return is_infinite() ? "oo" : std::to_string(value_); }

private:
    long long value_ = 0;
};

// j(a) = 3 + val2(a) for a != 0, j(0) = infinity; so Z_2/(2^{j(a)}) = Z_2/(8a).
ExtNat j_exp(long long a);

// 2^e as an exact integer, with 2^infinity = 0.
BigInt pow2(const ExtNat& e);

// nth Radon-Hurwitz number: #{0 < m <= n : m = 0,1,2,4 mod 8}.
long long gamma_rh(long long n);

// Residue in Z/2^N, N = precision. Arithmetic is exact modulo 2^N.
class Scalar {
public:
    Scalar() : value_(0), precision_(32) {}
    Scalar(BigInt v, int precision);
    static Scalar zero(int precision) { return Scalar(0, precision); }
    static Scalar one(int precision) { return Scalar(1, precision); }

    const BigInt& value() const { return value_; }
    int precision() const { return precision_; }
    bool is_zero() const { return value_ == 0; }

    // Valuation, or nullopt for the zero residue.
    std::optional<int> val2() const;
    bool is_unit() const { return bit_test(value_, 0); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    bool operator==(const Scalar& o) const {
        return value_ == o.value_ && precision_ == o.precision_;
    }

    // Inverse of an odd residue.
    Scalar inverse() const;
    // Exact halving; requires an even residue. Loses one bit of precision at the
    // top, which the extended working precision below absorbs.
    Scalar half() const;

    // Signed representative in (-2^{N-1}, 2^{N-1}].
    BigInt signed_value() const;
    std::string str() const;

private:
    BigInt value_;
    int precision_;
    void check(const Scalar& o) const;
};

// k^e mod 2^precision for odd k and arbitrary (possibly negative) exponent.
Scalar unit_pow(long long k, long long e, int precision);

// u_{a,b} = 2^{j_a - j_{b-a}} (k^{2b} - k^{2a}) / (k^{2a} - 1), a 2-adic unit,
// with u_{a,b} = 1 when a = 0 or a = b. Throws PrecisionError when the
// precision cannot certify unit-hood.
Scalar u_unit(long long a, long long b, const Params& params);

}  // namespace greensphere
