#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qpwt/cwt.hpp"

namespace qpwt {

using OrderedJson = nlohmann::ordered_json;

/// Shortest round-trip decimal for a double (what nlohmann emits), used for
/// every number written to JSON or CSV so outputs are byte-reproducible.
inline std::string format_double(double x) {
    return nlohmann::json(x == 0.0 ? 0.0 : x).dump();  // collapse -0.0
}

/// Fixed 12-significant-digit decimal for human-facing values.
inline std::string format_significant12(double x) {
    if (x == 0.0) return "0.000000000000";
    int magnitude = static_cast<int>(std::floor(std::log10(std::abs(x))));
    int decimals = 11 - magnitude;
    if (decimals < 0) decimals = 0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

/// "u*p^v" with decimal integers, or "0". Example: 3/2 in Q_2 is "3*2^-1".
inline std::string to_string(const PAdic& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    os << x.unit() << "*" << x.prime() << "^" << x.valuation();
    return os.str();
}

inline PAdic parse_padic(const std::string& text, long expected_prime) {
    if (text == "0") return PAdic::zero(expected_prime);
    std::size_t star = text.find('*');
    std::size_t caret = text.find('^', star == std::string::npos ? 0 : star);
    if (star == std::string::npos || caret == std::string::npos)
        throw std::invalid_argument("PAdic string must be \"u*p^v\" or \"0\": " + text);
    BigInt unit(text.substr(0, star));
    long p = std::stol(text.substr(star + 1, caret - star - 1));
    long val = std::stol(text.substr(caret + 1));
    if (p != expected_prime) throw std::invalid_argument("PAdic string has prime " + std::to_string(p));
    PAdic x = PAdic::scaled(p, unit, val);
    if (!x.is_zero() && x.valuation() != val)
        throw std::invalid_argument("PAdic string is not normalized: " + text);
    return x;
}

inline OrderedJson to_json(const TestFunction& f) {
    OrderedJson j;
    j["p"] = f.prime();
    j["m"] = f.support_exponent();
    j["n"] = f.resolution_exponent();
    OrderedJson values = OrderedJson::array();
    for (Complex v : f.values())
        values.push_back({v.real() == 0.0 ? 0.0 : v.real(), v.imag() == 0.0 ? 0.0 : v.imag()});
    j["values"] = std::move(values);
    return j;
}

inline TestFunction test_function_from_json(const nlohmann::json& j) {
    long p = j.at("p").get<long>();
    long m = j.at("m").get<long>();
    long n = j.at("n").get<long>();
    std::vector<Complex> values;
    for (const auto& entry : j.at("values")) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::invalid_argument("values entries must be [re, im] pairs");
        values.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    return {p, m, n, std::move(values)};
}

inline OrderedJson to_json(const Wavelet& w) {
    OrderedJson j = to_json(w.psi());
    j["c_psi"] = w.c_psi();
    return j;
}

/// Rebuilds the wavelet and recomputes c_psi; a stored value farther than
/// 1e-9 from the recomputed one is rejected as corrupt.
inline Wavelet wavelet_from_json(const nlohmann::json& j) {
    Wavelet w = make_wavelet(test_function_from_json(j));
    if (j.contains("c_psi")) {
        double stored = j.at("c_psi").get<double>();
        if (std::abs(stored - w.c_psi()) > 1e-9)
            throw std::invalid_argument("stored c_psi disagrees with the recomputed constant");
    }
    return w;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return nlohmann::json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

inline std::string fingerprint_hex(std::uint64_t fp) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
    return buf;
}

inline OrderedJson to_json(const GridSpec& grid) {
    OrderedJson j;
    j["p"] = grid.prime();
    j["j_min"] = grid.j_min();
    j["j_max"] = grid.j_max();
    j["L"] = grid.unit_resolution();
    OrderedJson windows = OrderedJson::array();
    for (long s = grid.j_min(); s <= grid.j_max(); ++s)
        windows.push_back({{"j", s}, {"M", grid.window(s).M}, {"N", grid.window(s).N}});
    j["windows"] = std::move(windows);
    return j;
}

inline GridSpec grid_from_json(const nlohmann::json& j) {
    long p = j.at("p").get<long>();
    long j_min = j.at("j_min").get<long>();
    long j_max = j.at("j_max").get<long>();
    long L = j.at("L").get<long>();
    std::vector<ScaleWindow> windows;
    for (const auto& w : j.at("windows"))
        windows.push_back({w.at("M").get<long>(), w.at("N").get<long>()});
    return {p, j_min, j_max, L, std::move(windows)};
}

/// Scalogram CSV: header j,u,k,b,re,im; rows sorted by (j, u, k); b is the
/// serialized translation representative. The sidecar JSON carries the grid,
/// the wavelet fingerprint and c_psi.
inline std::string to_csv(const Scalogram& s) {
    std::ostringstream os;
    os << "j,u,k,b,re,im\n";
    const GridSpec& grid = s.grid();
    for (long j = grid.j_min(); j <= grid.j_max(); ++j) {
        std::int64_t cells = grid.translation_cells(j);
        for (std::size_t ui = 0; ui < s.unit_residues().size(); ++ui) {
            const std::vector<Complex>& slice = s.slice(j, ui);
            for (std::int64_t k = 0; k < cells; ++k) {
                Complex v = slice[static_cast<std::size_t>(k)];
                os << j << ',' << s.unit_residues()[ui] << ',' << k << ','
                   << to_string(s.translation_representative(j, k)) << ','
                   << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
            }
        }
    }
    return os.str();
}

inline OrderedJson sidecar_json(const Scalogram& s) {
    OrderedJson j;
    j["grid"] = to_json(s.grid());
    j["wavelet_fingerprint"] = fingerprint_hex(s.wavelet_fingerprint());
    j["c_psi"] = s.c_psi();
    return j;
}

/// Rebuild a scalogram from CSV text plus its sidecar. Every cell of the grid
/// must be present exactly once; anything missing or extra is an
/// incomplete-grid error.
inline Scalogram scalogram_from_csv(const std::string& csv, const nlohmann::json& sidecar) {
    GridSpec grid = grid_from_json(sidecar.at("grid"));
    std::uint64_t fp = std::stoull(sidecar.at("wavelet_fingerprint").get<std::string>(), nullptr, 16);
    double c_psi = sidecar.at("c_psi").get<double>();
    Scalogram out(grid, fp, c_psi);

    std::unordered_map<std::int64_t, std::size_t> unit_index;
    for (std::size_t ui = 0; ui < out.unit_residues().size(); ++ui)
        unit_index[out.unit_residues()[ui]] = ui;

    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "j,u,k,b,re,im")
        throw std::invalid_argument("scalogram CSV: bad header");
    std::int64_t expected = 0;
    for (long j = grid.j_min(); j <= grid.j_max(); ++j)
        expected += grid.translation_cells(j) * static_cast<std::int64_t>(out.unit_residues().size());
    std::int64_t rows = 0;
    std::vector<std::vector<char>> seen;
    for (long j = grid.j_min(); j <= grid.j_max(); ++j)
        for (std::size_t ui = 0; ui < out.unit_residues().size(); ++ui)
            seen.emplace_back(static_cast<std::size_t>(grid.translation_cells(j)), 0);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw std::invalid_argument("scalogram CSV: bad row: " + line);
        long j = std::stol(fields[0]);
        std::int64_t u = std::stoll(fields[1]);
        std::int64_t k = std::stoll(fields[2]);
        if (j < grid.j_min() || j > grid.j_max())
            throw GridError("scalogram CSV: row outside the sidecar scale range");
        auto it = unit_index.find(u);
        if (it == unit_index.end()) throw GridError("scalogram CSV: unknown unit residue");
        if (k < 0 || k >= grid.translation_cells(j))
            throw GridError("scalogram CSV: translation index outside the window");
        out.slice(j, it->second)[static_cast<std::size_t>(k)] = {std::stod(fields[4]), std::stod(fields[5])};
        seen[static_cast<std::size_t>(j - grid.j_min()) * out.unit_residues().size() + it->second]
            [static_cast<std::size_t>(k)] = 1;
        ++rows;
    }
    if (rows != expected) throw GridError("scalogram CSV: incomplete grid (missing rows)");
    for (const auto& s : seen)
        for (char c : s)
            if (!c) throw GridError("scalogram CSV: incomplete grid (duplicate and missing rows)");
    return out;
}

} // namespace qpwt
