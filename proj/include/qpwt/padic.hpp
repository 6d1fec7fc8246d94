#pragma once

#include <boost/integer/mod_inverse.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qpwt/errors.hpp"

namespace qpwt {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// p^e as a grid size; throws instead of overflowing (grids are allocated
/// from this, so the cap also bounds memory).
inline std::int64_t checked_pow(long p, long e) {
    if (e < 0) throw std::invalid_argument("checked_pow: negative exponent");
    std::int64_t r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 46) / p)
            throw std::length_error("checked_pow: grid size exceeds 2^46");
        r *= p;
    }
    return r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a % m) * (b % m)) % m);
}

/// p^e as a double for signed e, by binary exponentiation. Deterministic on
/// IEEE hardware, unlike std::pow across libm versions.
inline double pow_real(long p, long e) {
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    double base = static_cast<double>(p);
    double r = 1.0;
    while (k) {
        if (k & 1ul) r *= base;
        base *= base;
        k >>= 1;
    }
    return inv ? 1.0 / r : r;
}

/// An exact element of Z[1/p] viewed inside Q_p: zero, or unit * p^val with
/// the (signed) unit coprime to p. Equal elements always have identical
/// encodings, so operator== is structural.
class PAdic {
public:
    static PAdic zero(long p) {
        check_prime(p);
        PAdic x;
        x.prime_ = p;
        return x;
    }

    static PAdic integer(long p, BigInt v) { return scaled(p, std::move(v), 0); }

    /// v * p^exponent, normalized.
    static PAdic scaled(long p, BigInt v, long exponent) {
        check_prime(p);
        PAdic x;
        x.prime_ = p;
        if (v == 0) return x;
        while (v % p == 0) {
            v /= p;
            ++exponent;
        }
        x.zero_ = false;
        x.val_ = exponent;
        x.unit_ = std::move(v);
        return x;
    }

    long prime() const { return prime_; }
    bool is_zero() const { return zero_; }

    /// Valuation v with |x| = p^(-v). Only defined for nonzero x.
    long valuation() const {
        if (zero_) throw std::domain_error("valuation of zero is +infinity");
        return val_;
    }

    /// Signed unit part, coprime to p. Zero for the zero element.
    const BigInt& unit() const { return unit_; }

    double abs() const { return zero_ ? 0.0 : pow_real(prime_, -val_); }

    PAdic operator-() const {
        PAdic x = *this;
        x.unit_ = -x.unit_;
        return x;
    }

    friend PAdic operator+(const PAdic& a, const PAdic& b) {
        require_same_prime(a, b);
        if (a.zero_) return b;
        if (b.zero_) return a;
        long v = std::min(a.val_, b.val_);
        BigInt t = a.unit_ * pow_big(a.prime_, a.val_ - v) + b.unit_ * pow_big(a.prime_, b.val_ - v);
        return scaled(a.prime_, std::move(t), v);
    }

    friend PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }

    friend PAdic operator*(const PAdic& a, const PAdic& b) {
        require_same_prime(a, b);
        if (a.zero_ || b.zero_) return zero(a.prime_);
        PAdic x;
        x.prime_ = a.prime_;
        x.zero_ = false;
        x.val_ = a.val_ + b.val_;
        x.unit_ = a.unit_ * b.unit_;
        return x;
    }

    bool operator==(const PAdic& o) const {
        return prime_ == o.prime_ && zero_ == o.zero_ && (zero_ || (val_ == o.val_ && unit_ == o.unit_));
    }
    bool operator!=(const PAdic& o) const { return !(*this == o); }

    static BigInt pow_big(long p, long e) {
        if (e < 0) throw std::invalid_argument("pow_big: negative exponent");
        BigInt r = 1;
        for (long i = 0; i < e; ++i) r *= p;
        return r;
    }

private:
    static void check_prime(long p) {
        if (!is_prime(p)) throw std::invalid_argument("p must be a prime >= 2");
    }
    static void require_same_prime(const PAdic& a, const PAdic& b) {
        if (a.prime_ != b.prime_) throw std::invalid_argument("prime mismatch");
    }

    long prime_ = 2;
    bool zero_ = true;
    long val_ = 0;
    BigInt unit_ = 0;
};

/// y with val(y) = -val(x) and |x*y - 1| <= p^(-L): the unit part is inverted
/// modulo p^L.
inline PAdic invert_mod(const PAdic& x, long L) {
    if (x.is_zero()) throw DegenerateInputError("invert_mod: x = 0");
    if (L < 1) throw std::invalid_argument("invert_mod: L must be >= 1");
    BigInt modulus = PAdic::pow_big(x.prime(), L);
    BigInt residue = ((x.unit() % modulus) + modulus) % modulus;
    BigInt inv = boost::integer::mod_inverse(residue, modulus);
    return PAdic::scaled(x.prime(), std::move(inv), -x.valuation());
}

/// Exact rational in [0,1); denominator is p^(-val) when val < 0 and 1 otherwise.
struct Rational {
    BigInt num;
    BigInt den;
};

/// {x}_p: the negative-power tail of the p-adic expansion.
inline Rational fractional_part(const PAdic& x) {
    if (x.is_zero() || x.valuation() >= 0) return {0, 1};
    BigInt den = PAdic::pow_big(x.prime(), -x.valuation());
    BigInt num = ((x.unit() % den) + den) % den;
    return {std::move(num), std::move(den)};
}

/// chi(x) = exp(2 pi i {x}_p): the standard additive character, trivial on Z_p.
inline std::complex<double> character(const PAdic& x) {
    Rational f = fractional_part(x);
    if (f.num == 0) return {1.0, 0.0};
    double ratio = f.num.convert_to<double>() / f.den.convert_to<double>();
    return std::polar(1.0, 2.0 * std::numbers::pi * ratio);
}

/// Index k into the p^(m+n) cosets of p^n Z_p inside p^(-m) Z_p.
/// Representative: x_k = k * p^(-m), i.e. digits of k placed at p^(-m)..p^(n-1).
struct CosetIndex {
    long p;
    long m;
    long n;
    std::int64_t k;
};

inline PAdic representative(const CosetIndex& c) {
    return PAdic::scaled(c.p, BigInt(c.k), -c.m);
}

inline std::vector<CosetIndex> enumerate_cosets(long p, long m, long n) {
    if (m + n < 0) throw std::invalid_argument("enumerate_cosets: m + n < 0");
    std::int64_t total = checked_pow(p, m + n);
    std::vector<CosetIndex> out;
    out.reserve(static_cast<std::size_t>(total));
    for (std::int64_t k = 0; k < total; ++k) out.push_back({p, m, n, k});
    return out;
}

/// Index of the coset of p^n Z_p containing x, or nullopt when |x| > p^m.
inline std::optional<std::int64_t> coset_index_of(const PAdic& x, long m, long n) {
    std::int64_t size = checked_pow(x.prime(), m + n);
    if (x.is_zero()) return 0;
    if (x.valuation() + m < 0) return std::nullopt;
    BigInt big = x.unit() * PAdic::pow_big(x.prime(), x.valuation() + m);
    BigInt idx = ((big % size) + size) % size;
    return idx.convert_to<std::int64_t>();
}

} // namespace qpwt
