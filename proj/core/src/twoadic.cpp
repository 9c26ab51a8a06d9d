#include "greensphere/twoadic.hpp"

namespace greensphere {

void Params::validate() const {
    if (precision < 8) throw DomainError("precision must be at least 8");
    long long r = ((k % 8) + 8) % 8;
    if (r != 3 && r != 5)
        throw DomainError("k must be = ±3 mod 8 to generate Z_2^x/{±1}");
}

int val2(const BigInt& n) {
    if (n == 0) throw DomainError("val2(0) is undefined");
    return static_cast<int>(lsb(abs(n)));
}

ExtNat j_exp(long long a) {
    if (a == 0) return ExtNat::infinity();
    return ExtNat(3 + val2(BigInt(a)));
}

BigInt pow2(const ExtNat& e) {
    if (e.is_infinite()) return 0;
    return BigInt(1) << static_cast<unsigned>(e.value());
}

long long gamma_rh(long long n) {
    if (n < 0) throw DomainError("gamma(n) requires n >= 0");
    long long full = n / 8, rem = n % 8, extra = 0;
    for (long long m = 1; m <= rem; ++m) {
        long long r = m % 8;
        if (r == 0 || r == 1 || r == 2 || r == 4) ++extra;
    }
    return 4 * full + extra;
}

Scalar::Scalar(BigInt v, int precision) : precision_(precision) {
    if (precision < 1) throw DomainError("Scalar precision must be positive");
    BigInt mod = BigInt(1) << static_cast<unsigned>(precision);
    value_ = v % mod;
    if (value_ < 0) value_ += mod;
}

void Scalar::check(const Scalar& o) const {
    if (precision_ != o.precision_)
        throw DomainError("Scalar precision mismatch");
}

std::optional<int> Scalar::val2() const {
    if (value_ == 0) return std::nullopt;
    return greensphere::val2(value_);
}

Scalar Scalar::operator+(const Scalar& o) const {
    check(o);
    return Scalar(value_ + o.value_, precision_);
}
Scalar Scalar::operator-(const Scalar& o) const {
    check(o);
    return Scalar(value_ - o.value_, precision_);
}
Scalar Scalar::operator*(const Scalar& o) const {
    check(o);
    return Scalar(value_ * o.value_, precision_);
}
Scalar Scalar::operator-() const { return Scalar(-value_, precision_); }

Scalar Scalar::inverse() const {
    if (!is_unit()) throw DomainError("Scalar::inverse: even residue");
    // Newton iteration x -> x(2 - ax) doubles correct bits each round.
    BigInt mod = BigInt(1) << static_cast<unsigned>(precision_);
    BigInt x = 1;
    for (int bits = 1; bits < precision_; bits *= 2) {
        x = (x * (2 - value_ * x)) % mod;
        if (x < 0) x += mod;
    }
    return Scalar(x, precision_);
}

Scalar Scalar::half() const {
    if (bit_test(value_, 0)) throw DomainError("Scalar::half: odd residue");
    return Scalar(value_ >> 1, precision_);
}

BigInt Scalar::signed_value() const {
    BigInt half_mod = BigInt(1) << static_cast<unsigned>(precision_ - 1);
    if (value_ > half_mod) return value_ - (BigInt(1) << static_cast<unsigned>(precision_));
    return value_;
}

std::string Scalar::str() const { return signed_value().str(); }

Scalar unit_pow(long long k, long long e, int precision) {
    if ((k & 1) == 0) throw DomainError("unit_pow: even base");
    BigInt mod = BigInt(1) << static_cast<unsigned>(precision);
    BigInt base = BigInt(k) % mod;
    if (base < 0) base += mod;
    if (e < 0) {
        base = Scalar(base, precision).inverse().value();
        e = -e;
    }
    return Scalar(powm(base, BigInt(e), mod), precision);
}

Scalar u_unit(long long a, long long b, const Params& params) {
    params.validate();
    int n = params.precision;
    if (a == 0 || a == b) return Scalar::one(n);

    ExtNat ja = j_exp(a), jd = j_exp(b - a);
    if (ja.value() >= n || jd.value() >= n)
        throw PrecisionError("u_unit: precision too small to certify unit-hood");

    // u = k^{2a} * [(k^{2(b-a)} - 1) / 2^{j_{b-a}}] * [(k^{2a} - 1) / 2^{j_a}]^{-1}.
    // Both bracketed factors are odd; everything is exact mod 2^N.
    int wide = n + 8;
    BigInt num = unit_pow(params.k, 2 * (b - a), wide).value() - 1;
    BigInt den = unit_pow(params.k, 2 * a, wide).value() - 1;
    if (num == 0 || den == 0 || val2(num) != jd.value() || val2(den) != ja.value())
        throw PrecisionError("u_unit: valuation overflow at this precision");
    Scalar num_odd(num >> static_cast<unsigned>(jd.value()), n);
    Scalar den_odd(den >> static_cast<unsigned>(ja.value()), n);
    Scalar u = unit_pow(params.k, 2 * a, n) * num_odd * den_odd.inverse();
    if (!u.is_unit()) throw PrecisionError("u_unit: result not a unit");
    return u;
}

}  // namespace greensphere
