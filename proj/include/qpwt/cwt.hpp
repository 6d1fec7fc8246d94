#pragma once

#include <unordered_map>

#include "qpwt/grid.hpp"

namespace qpwt {

/// CWT coefficients K_psi f(a, b) over a GridSpec, stored per (j, u) slice in
/// translation order. Quadrature weights are recomputed from the grid, never
/// stored, so weights and cells cannot drift apart.
class Scalogram {
public:
    Scalogram(GridSpec grid, std::uint64_t wavelet_fingerprint, double c_psi)
        : grid_(std::move(grid)),
          fingerprint_(wavelet_fingerprint),
          c_psi_(c_psi),
          units_(grid_.unit_residues()) {
        slices_.reserve(static_cast<std::size_t>(grid_.scale_count()) * units_.size());
        for (long j = grid_.j_min(); j <= grid_.j_max(); ++j)
            for (std::size_t ui = 0; ui < units_.size(); ++ui)
                slices_.emplace_back(static_cast<std::size_t>(grid_.translation_cells(j)));
        for (std::size_t ui = 0; ui < units_.size(); ++ui)
            unit_index_[units_[ui]] = ui;
    }

    const GridSpec& grid() const { return grid_; }
    std::uint64_t wavelet_fingerprint() const { return fingerprint_; }
    double c_psi() const { return c_psi_; }
    long prime() const { return grid_.prime(); }
    const std::vector<std::int64_t>& unit_residues() const { return units_; }

    std::vector<Complex>& slice(long j, std::size_t unit_index) {
        return slices_[slice_offset(j, unit_index)];
    }
    const std::vector<Complex>& slice(long j, std::size_t unit_index) const {
        return slices_[slice_offset(j, unit_index)];
    }

    /// Scale representative a = p^j u.
    PAdic scale_representative(long j, std::size_t unit_index) const {
        return PAdic::scaled(prime(), BigInt(units_[unit_index]), j);
    }

    PAdic translation_representative(long j, std::int64_t k) const {
        return PAdic::scaled(prime(), BigInt(k), -grid_.window(j).M);
    }

    /// Coefficient of the cell containing the exact point (a, b); zero for
    /// cells outside the grid. This is the lookup the shift/scaling/symmetry
    /// identities are tested through.
    Complex coefficient_at(const PAdic& a, const PAdic& b) const {
        if (a.is_zero()) throw DegenerateInputError("coefficient_at: a = 0");
        long j = a.valuation();
        if (j < grid_.j_min() || j > grid_.j_max()) return {0.0, 0.0};
        std::int64_t modulus = checked_pow(prime(), grid_.unit_resolution());
        BigInt residue = ((a.unit() % modulus) + modulus) % modulus;
        auto it = unit_index_.find(residue.convert_to<std::int64_t>());
        if (it == unit_index_.end()) return {0.0, 0.0};
        const ScaleWindow& w = grid_.window(j);
        auto kb = coset_index_of(b, w.M, w.N);
        if (!kb) return {0.0, 0.0};
        return slice(j, it->second)[static_cast<std::size_t>(*kb)];
    }

    bool compatible_with(const Scalogram& o) const {
        return grid_ == o.grid_ && fingerprint_ == o.fingerprint_;
    }

private:
    std::size_t slice_offset(long j, std::size_t unit_index) const {
        if (j < grid_.j_min() || j > grid_.j_max()) throw GridError("scale exponent outside range");
        if (unit_index >= units_.size()) throw GridError("unit index out of range");
        return static_cast<std::size_t>(j - grid_.j_min()) * units_.size() + unit_index;
    }

    GridSpec grid_;
    std::uint64_t fingerprint_;
    double c_psi_;
    std::vector<std::int64_t> units_;
    std::unordered_map<std::int64_t, std::size_t> unit_index_;
    std::vector<std::vector<Complex>> slices_;
};

/// K_psi f(a, b) = <f, psi_{a,b}>, cell by cell. Each slice fixes a = p^j u,
/// refines f and the dilated wavelet to one common grid, and reads the inner
/// product of index-shifted arrays; this is the literal Eq-(2.4) path.
inline Scalogram cwt(const TestFunction& f, const Wavelet& w, const GridSpec& grid) {
    grid.validate_for_signal(f, w);
    Scalogram out(grid, fingerprint(w), w.c_psi());
    long p = f.prime();
    const std::vector<std::int64_t>& units = out.unit_residues();
    for (long j = grid.j_min(); j <= grid.j_max(); ++j) {
        const ScaleWindow& win = grid.window(j);
        std::int64_t cells = grid.translation_cells(j);
        for (std::size_t ui = 0; ui < units.size(); ++ui) {
            PAdic a = out.scale_representative(j, ui);
            TestFunction d0 = daughter(w, a, PAdic::zero(p));
            long mc = std::max({f.support_exponent(), d0.support_exponent(), win.M});
            long nc = std::max(f.resolution_exponent(), d0.resolution_exponent());
            TestFunction f2 = f.refine(mc, nc);
            TestFunction d2 = d0.refine(mc, nc);
            std::int64_t sz = f2.size();
            std::int64_t rep_stride = checked_pow(p, mc - win.M);
            double cell_measure = pow_real(p, -nc);
            std::vector<Complex>& slice = out.slice(j, ui);
            for (std::int64_t kb = 0; kb < cells; ++kb) {
                std::int64_t shift = mul_mod(kb, rep_stride, sz);
                Complex acc{0.0, 0.0};
                for (std::int64_t k = 0; k < sz; ++k)
                    acc += f2.values()[static_cast<std::size_t>(k)] *
                           std::conj(d2.values()[static_cast<std::size_t>(((k - shift) % sz + sz) % sz)]);
                slice[static_cast<std::size_t>(kb)] = acc * cell_measure;
            }
        }
    }
    return out;
}

/// Same transform computed scale by scale as a single convolution
/// K_psi f(a, .) = f * g_a with the reflected kernel
/// g_a(x) = |a|^(-1/2) conj(psi(-x/a)); goes through the Fourier path and is
/// the independent route for the path-equivalence checks.
inline Scalogram cwt_via_convolution(const TestFunction& f, const Wavelet& w, const GridSpec& grid) {
    grid.validate_for_signal(f, w);
    Scalogram out(grid, fingerprint(w), w.c_psi());
    long p = f.prime();
    const std::vector<std::int64_t>& units = out.unit_residues();
    for (long j = grid.j_min(); j <= grid.j_max(); ++j) {
        const ScaleWindow& win = grid.window(j);
        std::int64_t cells = grid.translation_cells(j);
        for (std::size_t ui = 0; ui < units.size(); ++ui) {
            PAdic a = out.scale_representative(j, ui);
            double amp = std::sqrt(pow_real(p, a.valuation()));
            TestFunction kernel = w.psi().dilate(a).parity().conjugated().scaled(Complex{amp, 0.0});
            TestFunction slice_fn = convolve(f, kernel);
            std::vector<Complex>& slice = out.slice(j, ui);
            for (std::int64_t kb = 0; kb < cells; ++kb)
                slice[static_cast<std::size_t>(kb)] =
                    slice_fn.eval(PAdic::scaled(p, BigInt(kb), -win.M));
        }
    }
    return out;
}

/// Discrete realization of the Plancherel pairing
/// integral K_psi f conj(K_psi g) da db/|a|^2; equals c_psi <f, g> whenever
/// both scalograms live on a grid covering their required ranges.
inline Complex plancherel_pairing(const Scalogram& sf, const Scalogram& sg) {
    if (!sf.compatible_with(sg))
        throw std::invalid_argument("plancherel_pairing: grid or wavelet mismatch");
    Complex total{0.0, 0.0};
    const GridSpec& grid = sf.grid();
    for (long j = grid.j_min(); j <= grid.j_max(); ++j) {
        double wj = grid.weight(j);
        Complex shell{0.0, 0.0};
        for (std::size_t ui = 0; ui < sf.unit_residues().size(); ++ui) {
            const std::vector<Complex>& a = sf.slice(j, ui);
            const std::vector<Complex>& b = sg.slice(j, ui);
            for (std::size_t k = 0; k < a.size(); ++k) shell += a[k] * std::conj(b[k]);
        }
        total += shell * wj;
    }
    return total;
}

/// ||f||^2 recovered from the scalogram: pairing with itself over c_psi.
inline double energy(const Scalogram& sf) {
    return plancherel_pairing(sf, sf).real() / sf.c_psi();
}

/// Inversion formula: (1/c_psi) sum of K(a,b) psi_{a,b} against da db/|a|^2.
/// Each (j, u) slice contributes p^(j-L) * (slice * psi_{a,0}) via one exact
/// convolution; the output lives on the finest grid the sum requires.
inline TestFunction invert(const Scalogram& sf, const Wavelet& w) {
    if (fingerprint(w) != sf.wavelet_fingerprint())
        throw FingerprintMismatchError("invert: scalogram was built from a different wavelet");
    const GridSpec& grid = sf.grid();
    grid.validate_for_wavelet(w);
    long p = grid.prime();
    if (grid.is_empty()) return TestFunction::zero(p);
    TestFunction acc = TestFunction::zero(p);
    for (long j = grid.j_min(); j <= grid.j_max(); ++j) {
        const ScaleWindow& win = grid.window(j);
        double shell_weight = pow_real(p, j - grid.unit_resolution());
        for (std::size_t ui = 0; ui < sf.unit_residues().size(); ++ui) {
            PAdic a = sf.scale_representative(j, ui);
            TestFunction d0 = daughter(w, a, PAdic::zero(p));
            TestFunction slice_fn(p, win.M, win.N, sf.slice(j, ui));
            acc = acc + convolve(slice_fn, d0).scaled(Complex{shell_weight, 0.0});
        }
    }
    return acc.scaled(Complex{1.0 / sf.c_psi(), 0.0});
}

/// Cellwise product of two scalograms on one grid, retagged for the wavelet
/// that will synthesize it (the associated-convolution route).
inline Scalogram scalogram_product(const Scalogram& sa, const Scalogram& sb, const Wavelet& target) {
    if (!(sa.grid() == sb.grid()))
        throw std::invalid_argument("scalogram_product: grid mismatch");
    Scalogram out(sa.grid(), fingerprint(target), target.c_psi());
    for (long j = sa.grid().j_min(); j <= sa.grid().j_max(); ++j)
        for (std::size_t ui = 0; ui < sa.unit_residues().size(); ++ui) {
            const std::vector<Complex>& a = sa.slice(j, ui);
            const std::vector<Complex>& b = sb.slice(j, ui);
            std::vector<Complex>& o = out.slice(j, ui);
            for (std::size_t k = 0; k < o.size(); ++k) o[k] = a[k] * b[k];
        }
    return out;
}

} // namespace qpwt
