#pragma once

#include "qpwt/cwt.hpp"

namespace qpwt {

/// The three wavelets of the section-4.1 construction. The paper's third
/// wavelet is called chi there; it is chi_prime here to keep it apart from
/// the additive character.
struct WaveletTriple {
    Wavelet psi;        // analyzes h
    Wavelet chi_prime;  // analyzes g
    Wavelet phi;        // synthesizes the product
};

namespace detail {
inline void require_complete_grid(const GridSpec& grid, const TestFunction& h, const TestFunction& g,
                                  const WaveletTriple& w) {
    for (const Wavelet* wav : {&w.psi, &w.chi_prime, &w.phi}) {
        for (const TestFunction* f : {&h, &g}) {
            if (!grid.covers(required_grid(*f, *wav)))
                throw GridError("associated convolution: grid does not cover a required scale range");
        }
    }
}
} // namespace detail

/// Associated convolution h # g: the cellwise product of the two analysis
/// transforms, synthesized through the third wavelet's inversion formula.
/// K_phi[h # g] factors into (K_psi h)(K_chi' g) exactly when the three
/// spectra are compatible (e.g. single-coset character wavelets whose psi and
/// chi' coset sum equals phi's coset).
inline TestFunction hash_convolve(const TestFunction& h, const TestFunction& g, const WaveletTriple& w,
                                  const GridSpec& grid) {
    detail::require_complete_grid(grid, h, g, w);
    Scalogram sh = cwt(h, w.psi, grid);
    Scalogram sg = cwt(g, w.chi_prime, grid);
    return invert(scalogram_product(sh, sg, w.phi), w.phi);
}

/// Finite-grid value of the basic function D(x, y, z) =
/// c_phi^(-1) sum conj(psi_{a,b}(z)) conj(chi'_{a,b}(y)) phi_{a,b}(x) w(j).
/// D is a distribution in general; this is its truncation to the given grid,
/// consistent with hash_convolve by construction.
inline Complex kernel_D(const PAdic& x, const PAdic& y, const PAdic& z, const WaveletTriple& w,
                        const GridSpec& grid) {
    long p = grid.prime();
    Complex acc{0.0, 0.0};
    std::vector<std::int64_t> units = grid.unit_residues();
    for (long j = grid.j_min(); j <= grid.j_max(); ++j) {
        double wj = grid.weight(j);
        const ScaleWindow& win = grid.window(j);
        std::int64_t cells = grid.translation_cells(j);
        for (std::int64_t u : units) {
            PAdic a = PAdic::scaled(p, BigInt(u), j);
            TestFunction dpsi = daughter(w.psi, a, PAdic::zero(p));
            TestFunction dchi = daughter(w.chi_prime, a, PAdic::zero(p));
            TestFunction dphi = daughter(w.phi, a, PAdic::zero(p));
            for (std::int64_t kb = 0; kb < cells; ++kb) {
                PAdic b = PAdic::scaled(p, BigInt(kb), -win.M);
                acc += std::conj(dpsi.eval(z - b)) * std::conj(dchi.eval(y - b)) * dphi.eval(x - b) * wj;
            }
        }
    }
    return acc / w.phi.c_psi();
}

/// (tau_x h)(y) = integral D(x, y, z) h(z) dz, realized as the exact grid sum
/// c_phi^(-1) sum K_psi h(a,b) phi_{a,b}(x) conj(chi'_{a,b}(y)) w(j) and
/// returned as a test function of y on the window the sum spans.
inline TestFunction translate_tau(const TestFunction& h, const PAdic& x, const WaveletTriple& w,
                                  const GridSpec& grid) {
    long p = grid.prime();
    Scalogram sh = cwt(h, w.psi, grid);
    TestFunction acc = TestFunction::zero(p);
    for (long j = grid.j_min(); j <= grid.j_max(); ++j) {
        double wj = grid.weight(j);
        const ScaleWindow& win = grid.window(j);
        std::int64_t cells = grid.translation_cells(j);
        for (std::size_t ui = 0; ui < sh.unit_residues().size(); ++ui) {
            PAdic a = sh.scale_representative(j, ui);
            TestFunction dchi = daughter(w.chi_prime, a, PAdic::zero(p)).conjugated();
            TestFunction dphi = daughter(w.phi, a, PAdic::zero(p));
            const std::vector<Complex>& slice = sh.slice(j, ui);
            for (std::int64_t kb = 0; kb < cells; ++kb) {
                PAdic b = PAdic::scaled(p, BigInt(kb), -win.M);
                Complex coeff = slice[static_cast<std::size_t>(kb)] * dphi.eval(x - b) * wj;
                if (coeff == Complex{0.0, 0.0}) continue;
                acc = acc + dchi.translate(b).scaled(coeff);
            }
        }
    }
    return acc.scaled(Complex{1.0 / w.phi.c_psi(), 0.0});
}

} // namespace qpwt
