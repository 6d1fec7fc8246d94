#pragma once

#include <random>

#include "qpwt/wavelet.hpp"

namespace qpwt {

/// Seeded random stream for the verification suites. The generator identity
/// is part of the external contract: std::mt19937_64 seeded directly, with
/// uniform doubles taken as (next() >> 11) * 2^-53 and integers as next() % n.
/// std distributions are avoided because their mappings are
/// implementation-defined and would break cross-platform reproducibility.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::int64_t uniform_int(std::int64_t n) {
        return static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(n));
    }

    /// Integer in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) { return lo + uniform_int(hi - lo + 1); }

private:
    std::mt19937_64 gen_;
};

/// Random test function with values in the complex unit square.
inline TestFunction random_test_function(DeterministicRng& rng, long p, long m, long n) {
    std::int64_t size = checked_pow(p, m + n);
    std::vector<Complex> vals(static_cast<std::size_t>(size));
    for (Complex& v : vals) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return {p, m, n, std::move(vals)};
}

/// Random test function projected to zero mean (the admissible class).
inline TestFunction random_zero_mean_function(DeterministicRng& rng, long p, long m, long n) {
    TestFunction f = random_test_function(rng, p, m, n);
    Complex shift = f.mean() * pow_real(p, -m);
    for (Complex& v : f.values()) v -= shift;
    return f;
}

inline Wavelet random_wavelet(DeterministicRng& rng, long p, long m, long n) {
    return make_wavelet(random_zero_mean_function(rng, p, m, n));
}

/// Random nonzero exact point, unit in [1, p^3) coprime to p, valuation in
/// [val_lo, val_hi], random sign.
inline PAdic random_padic(DeterministicRng& rng, long p, long val_lo, long val_hi) {
    std::int64_t cap = checked_pow(p, 3);
    std::int64_t unit = 0;
    do {
        unit = 1 + rng.uniform_int(cap - 1);
    } while (unit % p == 0);
    if (rng.uniform_int(2) == 1) unit = -unit;
    return PAdic::scaled(p, BigInt(unit), rng.range(val_lo, val_hi));
}

} // namespace qpwt
