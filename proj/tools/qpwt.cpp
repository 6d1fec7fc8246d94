// Command-line surface for the Q_p continuous wavelet analysis library:
// Fourier transforms, admissibility, scalograms, reconstruction, plain and
// associated convolution, and the seeded verification suites.
//
// Exit codes (stable): 0 success; 1 not admissible / failed checks;
// 2 malformed input or unknown suite; 3 parameter violation or degenerate
// input; 4 nonzero-mean signal without explicit scale bounds; 5 scalogram /
// wavelet fingerprint mismatch; 6 incomplete scalogram grid.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "qpwt/io.hpp"
#include "qpwt/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotAdmissible = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitParameter = 3;
constexpr int kExitNeedsBounds = 4;
constexpr int kExitFingerprint = 5;
constexpr int kExitIncompleteGrid = 6;

std::string sidecar_path(const std::string& csv_path) { return csv_path + ".json"; }

qpwt::TestFunction load_function(const std::string& path) {
    return qpwt::test_function_from_json(qpwt::read_json_file(path));
}

qpwt::Wavelet load_wavelet(const std::string& path) {
    return qpwt::wavelet_from_json(qpwt::read_json_file(path));
}

int cmd_fourier(const std::string& in, const std::string& out, bool use_oracle) {
    qpwt::TestFunction f = load_function(in);
    qpwt::TestFunction hat = use_oracle ? qpwt::fourier_oracle(f) : qpwt::fourier(f);
    qpwt::write_text_file(out, qpwt::to_json(hat).dump() + "\n");
    return kExitOk;
}

int cmd_admissibility(const std::string& in) {
    qpwt::TestFunction psi = load_function(in);
    try {
        double c = qpwt::admissibility_constant(psi);
        std::cout << qpwt::format_significant12(c) << "\n";
        return kExitOk;
    } catch (const qpwt::NotAdmissibleError& e) {
        std::cout << e.what() << "\n";
        return kExitNotAdmissible;
    }
}

int cmd_cwt(const std::string& signal_path, const std::string& wavelet_path, const std::string& out,
            std::optional<long> jmin, std::optional<long> jmax) {
    qpwt::TestFunction f = load_function(signal_path);
    qpwt::Wavelet w = load_wavelet(wavelet_path);
    bool zero_mean = std::abs(qpwt::fourier(f).values()[0]) <= qpwt::kSpectralTolerance;
    qpwt::GridSpec grid = qpwt::GridSpec::empty(f.prime());
    if (jmin && jmax) {
        grid = qpwt::required_grid(f, w, *jmin, *jmax);
    } else if (zero_mean) {
        grid = qpwt::required_grid(f, w);
    } else {
        std::cerr << "signal has nonzero mean: pass --jmin and --jmax to truncate the scale range\n";
        return kExitNeedsBounds;
    }
    qpwt::Scalogram s = qpwt::cwt(f, w, grid);
    qpwt::write_text_file(out, qpwt::to_csv(s));
    qpwt::write_text_file(sidecar_path(out), qpwt::sidecar_json(s).dump() + "\n");
    return kExitOk;
}

int cmd_invert(const std::string& csv_path, const std::string& wavelet_path, const std::string& out) {
    std::ifstream csv_in(csv_path);
    if (!csv_in) throw std::runtime_error("cannot open " + csv_path);
    std::stringstream csv;
    csv << csv_in.rdbuf();
    qpwt::Scalogram s = qpwt::scalogram_from_csv(csv.str(), qpwt::read_json_file(sidecar_path(csv_path)));
    qpwt::Wavelet w = load_wavelet(wavelet_path);
    qpwt::TestFunction rec = qpwt::invert(s, w);
    qpwt::write_text_file(out, qpwt::to_json(rec).dump() + "\n");
    return kExitOk;
}

int cmd_convolve(const std::string& in1, const std::string& in2, const std::string& out,
                 const std::string& mode, const std::string& psi_path, const std::string& chi_path,
                 const std::string& phi_path) {
    qpwt::TestFunction f = load_function(in1);
    qpwt::TestFunction g = load_function(in2);
    if (mode == "plain") {
        qpwt::write_text_file(out, qpwt::to_json(qpwt::convolve(f, g)).dump() + "\n");
        return kExitOk;
    }
    if (psi_path.empty() || chi_path.empty() || phi_path.empty()) {
        std::cerr << "hash mode needs --psi, --chi and --phi wavelet files\n";
        return kExitParameter;
    }
    qpwt::WaveletTriple triple{load_wavelet(psi_path), load_wavelet(chi_path), load_wavelet(phi_path)};
    try {
        qpwt::GridSpec grid =
            qpwt::shared_grid({&f, &g}, {&triple.psi, &triple.chi_prime, &triple.phi});
        qpwt::write_text_file(out, qpwt::to_json(qpwt::hash_convolve(f, g, triple, grid)).dump() + "\n");
    } catch (const qpwt::GridError& e) {
        // hash mode needs zero-mean operands for a finite shared grid
        std::cerr << e.what() << "\n";
        return kExitParameter;
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, long p, std::uint64_t seed, long trials, bool inject) {
    std::vector<qpwt::verify::CheckResult> results;
    try {
        results = qpwt::verify::run_suite(suite, p, seed, trials, inject);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitMalformed;
    }
    int failures = 0;
    for (const auto& r : results) {
        std::printf("%-44s max_err=%.6e tol=%.1e %s\n", r.name.c_str(), r.max_error, r.tolerance,
                    r.pass ? "PASS" : "FAIL");
        if (!r.pass) ++failures;
    }
    std::printf("verify %s: %zu checks, %d failed (p=%ld seed=%llu trials=%ld)\n", suite.c_str(),
                results.size(), failures, p, static_cast<unsigned long long>(seed), trials);
    return failures == 0 ? kExitOk : kExitNotAdmissible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous wavelet analysis on the field of p-adic numbers"};
    app.require_subcommand(1);

    std::string in_path, in2_path, out_path, wavelet_path;
    bool use_oracle = false;

    auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform of a test-function JSON file");
    fourier_cmd->add_option("input", in_path)->required();
    fourier_cmd->add_option("output", out_path)->required();
    fourier_cmd->add_flag("--oracle", use_oracle, "use the O(N^2) reference sum instead of the fast path");

    auto* adm_cmd = app.add_subcommand("admissibility", "admissibility constant of a candidate wavelet");
    adm_cmd->add_option("input", in_path)->required();

    std::optional<long> jmin, jmax;
    auto* cwt_cmd = app.add_subcommand("cwt", "continuous wavelet transform to CSV + sidecar JSON");
    cwt_cmd->add_option("signal", in_path)->required();
    cwt_cmd->add_option("wavelet", wavelet_path)->required();
    cwt_cmd->add_option("output", out_path)->required();
    cwt_cmd->add_option("--jmin", jmin, "smallest scale exponent (|a| = p^-j)");
    cwt_cmd->add_option("--jmax", jmax, "largest scale exponent");

    auto* inv_cmd = app.add_subcommand("invert", "reconstruct a signal from a scalogram");
    inv_cmd->add_option("scalogram", in_path)->required();
    inv_cmd->add_option("wavelet", wavelet_path)->required();
    inv_cmd->add_option("output", out_path)->required();

    std::string mode = "plain", psi_path, chi_path, phi_path;
    auto* conv_cmd = app.add_subcommand("convolve", "plain or associated (#) convolution");
    conv_cmd->add_option("first", in_path)->required();
    conv_cmd->add_option("second", in2_path)->required();
    conv_cmd->add_option("output", out_path)->required();
    conv_cmd->add_option("--mode", mode)->check(CLI::IsMember({"plain", "hash"}));
    conv_cmd->add_option("--psi", psi_path, "analysis wavelet for the first operand (hash mode)");
    conv_cmd->add_option("--chi", chi_path, "analysis wavelet for the second operand (hash mode)");
    conv_cmd->add_option("--phi", phi_path, "synthesis wavelet (hash mode)");

    std::string suite = "all";
    long prime = 2;
    std::uint64_t seed = 42;
    long trials = 10;
    bool inject = false;
    auto* verify_cmd = app.add_subcommand("verify", "run the seeded verification suites");
    verify_cmd->add_option("suite_pos", suite, "parseval|plancherel|inversion|properties|assoc|all");
    verify_cmd->add_option("--suite", suite, "same as the positional suite argument");
    verify_cmd->add_option("--p", prime, "prime of the field Q_p");
    verify_cmd->add_option("--seed", seed, "seed of the documented mt19937_64 stream");
    verify_cmd->add_option("--trials", trials, "random instances per check");
    verify_cmd->add_flag("--inject-nonzero-mean", inject,
                         "negative control: corrupt wavelets and expect FAIL lines");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fourier_cmd->parsed()) return cmd_fourier(in_path, out_path, use_oracle);
        if (adm_cmd->parsed()) return cmd_admissibility(in_path);
        if (cwt_cmd->parsed()) return cmd_cwt(in_path, wavelet_path, out_path, jmin, jmax);
        if (inv_cmd->parsed()) return cmd_invert(in_path, wavelet_path, out_path);
        if (conv_cmd->parsed())
            return cmd_convolve(in_path, in2_path, out_path, mode, psi_path, chi_path, phi_path);
        if (verify_cmd->parsed()) return cmd_verify(suite, prime, seed, trials, inject);
    } catch (const qpwt::FingerprintMismatchError& e) {
        std::cerr << e.what() << "\n";
        return kExitFingerprint;
    } catch (const qpwt::GridError& e) {
        std::cerr << e.what() << "\n";
        return kExitIncompleteGrid;
    } catch (const qpwt::NotAdmissibleError& e) {
        std::cerr << e.what() << "\n";
        return kExitNotAdmissible;
    } catch (const qpwt::DegenerateInputError& e) {
        std::cerr << e.what() << "\n";
        return kExitParameter;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitParameter;
    } catch (const std::length_error& e) {
        std::cerr << e.what() << "\n";
        return kExitParameter;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}
