#pragma once

#include "qpwt/wavelet.hpp"

namespace qpwt {

/// Translation window at one scale: b ranges over p^(-M) Z_p with resolution
/// p^N, i.e. a CosetIndex grid with p^(M+N) cells.
struct ScaleWindow {
    long M = 0;
    long N = 0;
    bool operator==(const ScaleWindow&) const = default;
};

/// Discretization of the scale/translation half-space carrying da db/|a|^2.
/// Scales are a = p^j u with |a| = p^(-j), j in [j_min, j_max], u running over
/// the units mod p^L coprime to p; the CWT is constant on every cell as soon
/// as L >= m_psi + n_psi and N_j >= n_psi + j, which makes the quadrature
/// exact rather than approximate.
class GridSpec {
public:
    GridSpec(long p, long j_min, long j_max, long L, std::vector<ScaleWindow> windows)
        : p_(p), j_min_(j_min), j_max_(j_max), L_(L), windows_(std::move(windows)) {
        if (!is_prime(p_)) throw std::invalid_argument("p must be a prime >= 2");
        if (L_ < 1) throw GridError("GridSpec: unit resolution L must be >= 1");
        long count = j_max_ >= j_min_ ? j_max_ - j_min_ + 1 : 0;
        if (static_cast<long>(windows_.size()) != count)
            throw GridError("GridSpec: one window required per scale exponent");
        for (const ScaleWindow& w : windows_)
            if (w.M + w.N < 0) throw GridError("GridSpec: window with M + N < 0");
    }

    static GridSpec empty(long p, long L = 1) { return {p, 0, -1, L, {}}; }

    long prime() const { return p_; }
    long j_min() const { return j_min_; }
    long j_max() const { return j_max_; }
    long unit_resolution() const { return L_; }
    bool is_empty() const { return j_max_ < j_min_; }
    long scale_count() const { return is_empty() ? 0 : j_max_ - j_min_ + 1; }

    const ScaleWindow& window(long j) const {
        if (j < j_min_ || j > j_max_) throw GridError("GridSpec: scale exponent outside range");
        return windows_[static_cast<std::size_t>(j - j_min_)];
    }

    /// Unit-coset representatives mod p^L, ascending; p^(L-1)(p-1) of them.
    std::vector<std::int64_t> unit_residues() const {
        std::int64_t modulus = checked_pow(p_, L_);
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(modulus - modulus / p_));
        for (std::int64_t u = 1; u < modulus; ++u)
            if (u % p_ != 0) out.push_back(u);
        return out;
    }

    std::int64_t translation_cells(long j) const {
        const ScaleWindow& w = window(j);
        return checked_pow(p_, w.M + w.N);
    }

    /// Quadrature weight of one (j, u, b) cell for the measure da db/|a|^2:
    /// da-measure p^(-j-L) times db-measure p^(-N_j) times |a|^(-2) = p^(2j).
    double weight(long j) const { return pow_real(p_, j - L_ - window(j).N); }

    /// Scale-cell invariants for the given wavelet; signal support is checked
    /// separately because it depends on the transformed function.
    void validate_for_wavelet(const Wavelet& w) const {
        long mn = w.psi().support_exponent() + w.psi().resolution_exponent();
        if (L_ < mn)
            throw GridError("grid too coarse: unit resolution L < m_psi + n_psi");
        for (long j = j_min_; j <= j_max_; ++j)
            if (window(j).N < w.psi().resolution_exponent() + j)
                throw GridError("grid too coarse: N_j < n_psi + j");
    }

    void validate_for_signal(const TestFunction& f, const Wavelet& w) const {
        validate_for_wavelet(w);
        if (f.prime() != p_ || w.prime() != p_) throw std::invalid_argument("prime mismatch");
        for (long j = j_min_; j <= j_max_; ++j) {
            long needed = std::max(f.support_exponent(), w.psi().support_exponent() - j);
            if (window(j).M < needed)
                throw GridError("grid window too small: M_j does not cover the translation support");
        }
    }

    /// True when this grid contains every cell of the other (range, unit
    /// resolution and windows at least as large).
    bool covers(const GridSpec& other) const {
        if (other.is_empty()) return true;
        if (p_ != other.p_ || L_ < other.L_) return false;
        if (other.j_min_ < j_min_ || other.j_max_ > j_max_) return false;
        for (long j = other.j_min_; j <= other.j_max_; ++j)
            if (window(j).M < other.window(j).M || window(j).N < other.window(j).N) return false;
        return true;
    }

    static GridSpec join(const GridSpec& a, const GridSpec& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("prime mismatch");
        if (a.is_empty()) return b.with_unit_resolution(std::max(a.L_, b.L_));
        if (b.is_empty()) return a.with_unit_resolution(std::max(a.L_, b.L_));
        long lo = std::min(a.j_min_, b.j_min_);
        long hi = std::max(a.j_max_, b.j_max_);
        std::vector<ScaleWindow> windows;
        windows.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (long j = lo; j <= hi; ++j) {
            bool ina = j >= a.j_min_ && j <= a.j_max_;
            bool inb = j >= b.j_min_ && j <= b.j_max_;
            ScaleWindow w;
            if (ina && inb)
                w = {std::max(a.window(j).M, b.window(j).M), std::max(a.window(j).N, b.window(j).N)};
            else
                w = ina ? a.window(j) : b.window(j);
            windows.push_back(w);
        }
        return {a.p_, lo, hi, std::max(a.L_, b.L_), std::move(windows)};
    }

    GridSpec with_unit_resolution(long L) const { return {p_, j_min_, j_max_, L, windows_}; }

    GridSpec with_bumped_translation_resolution() const {
        std::vector<ScaleWindow> windows = windows_;
        for (ScaleWindow& w : windows) ++w.N;
        return {p_, j_min_, j_max_, L_, std::move(windows)};
    }

    /// Raise every window's support exponent to at least M (e.g. to analyze a
    /// function synthesized on this grid, whose support spans the windows).
    GridSpec with_min_window_support(long M) const {
        std::vector<ScaleWindow> windows = windows_;
        for (ScaleWindow& w : windows) w.M = std::max(w.M, M);
        return {p_, j_min_, j_max_, L_, std::move(windows)};
    }

    GridSpec with_extended_range(long j_min, long j_max, const TestFunction& f, const Wavelet& w) const {
        long lo = std::min(j_min, j_min_);
        long hi = std::max(j_max, j_max_);
        std::vector<ScaleWindow> windows;
        for (long j = lo; j <= hi; ++j) {
            if (j >= j_min_ && j <= j_max_) {
                windows.push_back(window(j));
            } else {
                windows.push_back({std::max(f.support_exponent(), w.psi().support_exponent() - j),
                                   w.psi().resolution_exponent() + j});
            }
        }
        return {p_, lo, hi, L_, std::move(windows)};
    }

    bool operator==(const GridSpec& o) const {
        return p_ == o.p_ && j_min_ == o.j_min_ && j_max_ == o.j_max_ && L_ == o.L_ && windows_ == o.windows_;
    }

private:
    long p_;
    long j_min_;
    long j_max_;
    long L_;
    std::vector<ScaleWindow> windows_;
};

namespace detail {
inline GridSpec grid_for_range(const TestFunction& f, const Wavelet& w, long j_min, long j_max) {
    long L = std::max(1L, w.psi().support_exponent() + w.psi().resolution_exponent());
    if (j_max < j_min) return GridSpec::empty(f.prime(), L);
    std::vector<ScaleWindow> windows;
    windows.reserve(static_cast<std::size_t>(j_max - j_min + 1));
    for (long j = j_min; j <= j_max; ++j)
        windows.push_back({std::max(f.support_exponent(), w.psi().support_exponent() - j),
                           w.psi().resolution_exponent() + j});
    return {f.prime(), j_min, j_max, L, std::move(windows)};
}
} // namespace detail

/// Smallest grid outside which K_psi f vanishes identically, from the
/// spectral annuli: K(a, .) != 0 forces |a| into [p^(lo_psi - hi_f),
/// p^(hi_psi - lo_f)]. Requires zero mean (otherwise the scale range is
/// unbounded and explicit bounds must be supplied).
inline GridSpec required_grid(const TestFunction& f, const Wavelet& w) {
    if (f.prime() != w.prime()) throw std::invalid_argument("prime mismatch");
    TestFunction fhat = fourier(f);
    if (std::abs(fhat.values()[0]) > kSpectralTolerance)
        throw GridError("required_grid: signal has nonzero mean; supply explicit scale bounds");
    SpectralAnnulus af = detail::annulus_of_spectrum(fhat);
    if (af.empty()) return GridSpec::empty(f.prime(), std::max(1L, w.psi().support_exponent() + w.psi().resolution_exponent()));
    return detail::grid_for_range(f, w, af.lo - w.annulus().hi, af.hi - w.annulus().lo);
}

/// Grid over the caller-chosen scale range (the nonzero-mean escape hatch).
inline GridSpec required_grid(const TestFunction& f, const Wavelet& w, long j_min, long j_max) {
    if (f.prime() != w.prime()) throw std::invalid_argument("prime mismatch");
    return detail::grid_for_range(f, w, j_min, j_max);
}

/// One grid valid for every (signal, wavelet) combination: the union of the
/// required scale ranges, with each window sized for the finest wavelet. A
/// plain join of required grids is not enough because a window taken from a
/// coarse wavelet's range can violate N_j >= n_psi + j for a finer one.
inline GridSpec shared_grid(std::initializer_list<const TestFunction*> signals,
                            std::initializer_list<const Wavelet*> wavelets) {
    long p = (*wavelets.begin())->prime();
    long L = 1;
    bool any = false;
    long lo = 0, hi = -1;
    for (const Wavelet* w : wavelets) {
        L = std::max(L, w->psi().support_exponent() + w->psi().resolution_exponent());
        for (const TestFunction* f : signals) {
            GridSpec r = required_grid(*f, *w);
            if (r.is_empty()) continue;
            if (!any) {
                lo = r.j_min();
                hi = r.j_max();
                any = true;
            } else {
                lo = std::min(lo, r.j_min());
                hi = std::max(hi, r.j_max());
            }
        }
    }
    if (!any) return GridSpec::empty(p, L);
    std::vector<ScaleWindow> windows;
    for (long j = lo; j <= hi; ++j) {
        ScaleWindow win{0, 0};
        bool first = true;
        for (const Wavelet* w : wavelets) {
            long N = w->psi().resolution_exponent() + j;
            long M = w->psi().support_exponent() - j;
            for (const TestFunction* f : signals) M = std::max(M, f->support_exponent());
            if (first) {
                win = {M, N};
                first = false;
            } else {
                win = {std::max(win.M, M), std::max(win.N, N)};
            }
        }
        windows.push_back(win);
    }
    return {p, lo, hi, L, std::move(windows)};
}

} // namespace qpwt
