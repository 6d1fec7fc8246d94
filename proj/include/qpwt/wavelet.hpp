#pragma once

#include <cstring>

#include "qpwt/fourier.hpp"

namespace qpwt {

/// Coefficients below this threshold count as zero when classifying spectra;
/// the admissibility remark ("zero mean") is implemented at this tolerance.
inline constexpr double kSpectralTolerance = 1e-12;

/// Shells p^lo <= |xi| <= p^hi carrying every spectral coefficient above the
/// tolerance. Empty (lo > hi) for the zero function.
struct SpectralAnnulus {
    long lo = 0;
    long hi = -1;
    bool empty() const { return lo > hi; }
};

namespace detail {

inline long trailing_p_valuation(std::int64_t k, long p) {
    long v = 0;
    while (k % p == 0) {
        k /= p;
        ++v;
    }
    return v;
}

/// Annulus of an already-transformed function; index 0 is the zero coset.
inline SpectralAnnulus annulus_of_spectrum(const TestFunction& fhat) {
    SpectralAnnulus a;
    bool any = false;
    for (std::int64_t j = 1; j < fhat.size(); ++j) {
        if (std::abs(fhat.values()[static_cast<std::size_t>(j)]) <= kSpectralTolerance) continue;
        long shell = fhat.support_exponent() - trailing_p_valuation(j, fhat.prime());
        if (!any) {
            a.lo = a.hi = shell;
            any = true;
        } else {
            a.lo = std::min(a.lo, shell);
            a.hi = std::max(a.hi, shell);
        }
    }
    if (!any) a = SpectralAnnulus{};
    return a;
}

} // namespace detail

inline SpectralAnnulus spectral_annulus(const TestFunction& f) {
    return detail::annulus_of_spectrum(fourier(f));
}

/// c_psi = integral of |psi^(xi)|^2 / |xi| d xi as an exact shell sum over the
/// spectral grid. Divergence (a nonzero coefficient on the zero coset, i.e.
/// nonzero mean) is an error.
inline double admissibility_constant(const TestFunction& psi) {
    if (psi == TestFunction::zero(psi.prime(), psi.support_exponent(), psi.resolution_exponent()))
        throw DegenerateInputError("admissibility_constant: psi = 0");
    TestFunction hat = fourier(psi);
    if (std::abs(hat.values()[0]) > kSpectralTolerance)
        throw NotAdmissibleError("not admissible: nonzero mean");
    long p = psi.prime();
    double cell = pow_real(p, -hat.resolution_exponent());
    double c = 0.0;
    for (std::int64_t j = 1; j < hat.size(); ++j) {
        double a2 = std::norm(hat.values()[static_cast<std::size_t>(j)]);
        if (a2 == 0.0) continue;
        long shell = hat.support_exponent() - detail::trailing_p_valuation(j, p);
        c += a2 * cell * pow_real(p, -shell);
    }
    return c;
}

/// A mother wavelet: test function with certified zero mean, cached
/// admissibility constant and spectral annulus.
class Wavelet {
public:
    explicit Wavelet(TestFunction psi)
        : psi_(std::move(psi)), c_psi_(admissibility_constant(psi_)), annulus_(spectral_annulus(psi_)) {}

    const TestFunction& psi() const { return psi_; }
    double c_psi() const { return c_psi_; }
    const SpectralAnnulus& annulus() const { return annulus_; }
    long prime() const { return psi_.prime(); }

private:
    TestFunction psi_;
    double c_psi_;
    SpectralAnnulus annulus_;
};

inline Wavelet make_wavelet(TestFunction psi) { return Wavelet(std::move(psi)); }

/// The Kozyrev wavelet psi(x) = chi(x/p) 1_{Z_p}(x), with c_psi = 1/p.
inline Wavelet kozyrev(long p) {
    if (!is_prime(p)) throw std::invalid_argument("kozyrev: p must be prime");
    std::vector<Complex> vals(static_cast<std::size_t>(p));
    for (long c = 0; c < p; ++c)
        vals[static_cast<std::size_t>(c)] = std::polar(1.0, 2.0 * std::numbers::pi * c / p);
    return make_wavelet(TestFunction(p, 0, 1, std::move(vals)));
}

/// Generalized Kozyrev-type wavelet psi(x) = chi(num x / p^t) 1_{Z_p}(x) for
/// num coprime to p. Its spectrum is the single coset num/p^t + Z_p, so
/// c_psi = p^(-t). Triples of these with matching spectral coset sums drive
/// the associated-convolution factorization.
inline Wavelet character_wavelet(long p, std::int64_t num, long t) {
    if (!is_prime(p)) throw std::invalid_argument("character_wavelet: p must be prime");
    if (t < 1 || num % p == 0) throw std::invalid_argument("character_wavelet: need t >= 1, p does not divide num");
    std::int64_t size = checked_pow(p, t);
    std::vector<Complex> vals(static_cast<std::size_t>(size));
    for (std::int64_t k = 0; k < size; ++k) {
        std::int64_t rem = (mul_mod(num, k, size) + size) % size;
        vals[static_cast<std::size_t>(k)] =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(rem) / static_cast<double>(size));
    }
    return make_wavelet(TestFunction(p, 0, t, std::move(vals)));
}

/// Daughter wavelet psi_{a,b}(x) = |a|^(-1/2) psi((x - b)/a).
inline TestFunction daughter(const Wavelet& w, const PAdic& a, const PAdic& b) {
    if (a.is_zero()) throw DegenerateInputError("daughter: a = 0");
    double scale = pow_real(w.prime(), a.valuation());  // |a|^(-1/2) = p^(val/2)
    return w.psi().dilate(a).translate(b).scaled(Complex{std::sqrt(scale), 0.0});
}

/// psi * phi is again a mother wavelet whenever it is nonzero (its mean is
/// mean(psi) * mean(phi) = 0), with c bounded by (max |phi^|)^2 c_psi.
inline Wavelet conv_wavelet(const Wavelet& w, const TestFunction& phi) {
    TestFunction conv = convolve(w.psi(), phi);
    double scale = std::max(w.psi().norm_l2() * phi.norm_l1(), 1.0);
    if (conv.norm_l2() <= 1e-14 * scale)
        throw DegenerateInputError("conv_wavelet: psi * phi vanishes");
    return make_wavelet(std::move(conv));
}

/// FNV-1a hash of the canonical byte serialization (p, m, n, IEEE bits of the
/// values in index order). Identifies the wavelet a scalogram belongs to.
inline std::uint64_t fingerprint(const TestFunction& f) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, std::size_t len) {
        const unsigned char* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    std::int64_t header[3] = {f.prime(), f.support_exponent(), f.resolution_exponent()};
    mix(header, sizeof(header));
    for (Complex v : f.values()) {
        double re = v.real() == 0.0 ? 0.0 : v.real();  // collapse -0.0
        double im = v.imag() == 0.0 ? 0.0 : v.imag();
        std::uint64_t bits[2];
        std::memcpy(&bits[0], &re, sizeof(double));
        std::memcpy(&bits[1], &im, sizeof(double));
        mix(bits, sizeof(bits));
    }
    return h;
}

inline std::uint64_t fingerprint(const Wavelet& w) { return fingerprint(w.psi()); }

} // namespace qpwt
