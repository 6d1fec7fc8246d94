#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "qpwt/test_function.hpp"

namespace qpwt {
namespace detail {

/// Full table of p^t-th roots of unity, w[i] = exp(-2 pi i * i / p^t).
/// Built once per (p, t) and then read-only; first access may race, so the
/// build is serialized and callers always see one consistent table.
inline std::shared_ptr<const std::vector<Complex>> twiddle_table(long p, long t) {
    static std::mutex mtx;
    static std::map<std::pair<long, long>, std::shared_ptr<const std::vector<Complex>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, t);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::int64_t size = checked_pow(p, t);
    auto table = std::make_shared<std::vector<Complex>>(static_cast<std::size_t>(size));
    for (std::int64_t i = 0; i < size; ++i)
        (*table)[static_cast<std::size_t>(i)] =
            std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(size));
    cache.emplace(key, table);
    return table;
}

inline std::int64_t digit_reverse(std::int64_t i, long p, long t) {
    std::int64_t r = 0;
    for (long s = 0; s < t; ++s) {
        r = r * p + i % p;
        i /= p;
    }
    return r;
}

/// In-place DFT of size p^t factored into t radix-p stages (decimation in
/// time, digit-reversed input ordering). forward uses the kernel w^(-jk).
inline void radix_p_fft(std::vector<Complex>& v, long p, long t, bool forward) {
    std::int64_t size = static_cast<std::int64_t>(v.size());
    auto table_ptr = twiddle_table(p, t);
    const std::vector<Complex>& w = *table_ptr;
    auto root = [&](std::int64_t i) {
        i %= size;
        return forward ? w[static_cast<std::size_t>(i)] : w[static_cast<std::size_t>((size - i) % size)];
    };
    for (std::int64_t i = 0; i < size; ++i) {
        std::int64_t j = digit_reverse(i, p, t);
        if (j > i) std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
    }
    std::vector<Complex> butterfly(static_cast<std::size_t>(p));
    std::int64_t width = 1;
    for (long stage = 1; stage <= t; ++stage) {
        std::int64_t next = width * p;       // block size after this stage
        std::int64_t stride = size / next;   // twiddle stride for w_next
        for (std::int64_t block = 0; block < size; block += next) {
            for (std::int64_t q = 0; q < width; ++q) {
                for (long r = 0; r < p; ++r)
                    butterfly[static_cast<std::size_t>(r)] =
                        v[static_cast<std::size_t>(block + q + r * width)] * root(q * r * stride);
                for (long l = 0; l < p; ++l) {
                    Complex acc{0.0, 0.0};
                    for (long r = 0; r < p; ++r)
                        acc += butterfly[static_cast<std::size_t>(r)] * root(static_cast<std::int64_t>(l) * r * width * stride);
                    v[static_cast<std::size_t>(block + q + l * width)] = acc;
                }
            }
        }
        width = next;
    }
}

} // namespace detail

/// Fourier transform f^(xi) = integral f(x) chi(-xi x) dx. On the coset grid
/// this is the size-p^(m+n) DFT scaled by p^(-n), with support and resolution
/// exponents swapped: (m, n) -> (n, m).
inline TestFunction fourier(const TestFunction& f) {
    std::vector<Complex> v = f.values();
    detail::radix_p_fft(v, f.prime(), f.support_exponent() + f.resolution_exponent(), true);
    double scale = pow_real(f.prime(), -f.resolution_exponent());
    for (Complex& x : v) x *= scale;
    return {f.prime(), f.resolution_exponent(), f.support_exponent(), std::move(v)};
}

inline TestFunction inverse_fourier(const TestFunction& g) {
    std::vector<Complex> v = g.values();
    detail::radix_p_fft(v, g.prime(), g.support_exponent() + g.resolution_exponent(), false);
    double scale = pow_real(g.prime(), -g.resolution_exponent());
    for (Complex& x : v) x *= scale;
    return {g.prime(), g.resolution_exponent(), g.support_exponent(), std::move(v)};
}

/// Literal O(N^2) double sum with the character evaluated through exact
/// p-adic arithmetic. Same contract as fourier(); kept as an independent
/// reference path for tests and the --oracle CLI flag.
inline TestFunction fourier_oracle(const TestFunction& f) {
    long p = f.prime();
    long m = f.support_exponent();
    long n = f.resolution_exponent();
    std::int64_t size = f.size();
    double scale = pow_real(p, -n);
    std::vector<Complex> out(static_cast<std::size_t>(size));
    for (std::int64_t j = 0; j < size; ++j) {
        PAdic xi = PAdic::scaled(p, BigInt(j), -n);
        Complex acc{0.0, 0.0};
        for (std::int64_t k = 0; k < size; ++k)
            acc += f.values()[static_cast<std::size_t>(k)] * character(-(xi * f.representative(k)));
        out[static_cast<std::size_t>(j)] = acc * scale;
    }
    return {p, n, m, std::move(out)};
}

/// (f * g)(t) = integral f(x) g(t - x) dx, evaluated exactly on the joint
/// grid through the Fourier route; fourier(convolve(f, g)) equals the
/// pointwise product of the transforms.
inline TestFunction convolve(const TestFunction& f, const TestFunction& g) {
    auto [f2, g2] = common_grid(f, g);
    return inverse_fourier(pointwise_product(fourier(f2), fourier(g2)));
}

} // namespace qpwt
