#include <catch2/catch_amalgamated.hpp>

#include "qpwt/io.hpp"
#include "qpwt/rng.hpp"

using namespace qpwt;

TEST_CASE("padic strings") {
    CHECK(to_string(PAdic::scaled(2, 3, -1)) == "3*2^-1");
    CHECK(to_string(PAdic::integer(5, 1)) == "1*5^0");
    CHECK(to_string(PAdic::zero(7)) == "0");
    CHECK(to_string(PAdic::integer(3, -6)) == "-2*3^1");

    CHECK(parse_padic("3*2^-1", 2) == PAdic::scaled(2, 3, -1));
    CHECK(parse_padic("0", 3) == PAdic::zero(3));
    CHECK(parse_padic("-2*3^1", 3) == PAdic::integer(3, -6));
    CHECK_THROWS_AS(parse_padic("6*2^-1", 2), std::invalid_argument);   // not normalized
    CHECK_THROWS_AS(parse_padic("1*3^0", 2), std::invalid_argument);    // wrong prime
    CHECK_THROWS_AS(parse_padic("garbage", 2), std::invalid_argument);

    DeterministicRng rng(500);
    for (long p : {2L, 3L, 5L})
        for (int t = 0; t < 50; ++t) {
            PAdic x = random_padic(rng, p, -5, 5);
            CHECK(parse_padic(to_string(x), p) == x);
        }
}

TEST_CASE("test function json round trip") {
    DeterministicRng rng(510);
    for (long p : {2L, 3L}) {
        TestFunction f = random_test_function(rng, p, 1, 1);
        nlohmann::json j = nlohmann::json::parse(to_json(f).dump());
        TestFunction back = test_function_from_json(j);
        CHECK(back == f);  // bit-exact through shortest round-trip decimals
    }
    CHECK_THROWS(test_function_from_json(nlohmann::json::parse(R"({"p":2,"m":0,"n":0})")));
    CHECK_THROWS(test_function_from_json(
        nlohmann::json::parse(R"({"p":2,"m":0,"n":0,"values":[[1]]})")));
    CHECK_THROWS_AS(test_function_from_json(
                        nlohmann::json::parse(R"({"p":2,"m":-2,"n":0,"values":[[1,0]]})")),
                    std::invalid_argument);
}

TEST_CASE("wavelet json verifies the stored constant") {
    Wavelet w = kozyrev(3);
    OrderedJson j = to_json(w);
    CHECK(j["c_psi"].get<double>() == Catch::Approx(1.0 / 3.0));
    Wavelet back = wavelet_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.c_psi() == w.c_psi());
    CHECK(fingerprint(back) == fingerprint(w));

    nlohmann::json corrupt = nlohmann::json::parse(j.dump());
    corrupt["c_psi"] = 0.4;  // off by more than 1e-9
    CHECK_THROWS_AS(wavelet_from_json(corrupt), std::invalid_argument);

    nlohmann::json missing = nlohmann::json::parse(j.dump());
    missing.erase("c_psi");
    CHECK_NOTHROW(wavelet_from_json(missing));
}

TEST_CASE("scalogram csv round trip") {
    Wavelet w = kozyrev(2);
    DeterministicRng rng(520);
    TestFunction f = random_zero_mean_function(rng, 2, 1, 1);
    GridSpec grid = required_grid(f, w);
    Scalogram s = cwt(f, w, grid);
    std::string csv = to_csv(s);
    OrderedJson side = sidecar_json(s);

    Scalogram back = scalogram_from_csv(csv, nlohmann::json::parse(side.dump()));
    CHECK(back.grid() == s.grid());
    CHECK(back.wavelet_fingerprint() == s.wavelet_fingerprint());
    CHECK(to_csv(back) == csv);  // value-exact round trip

    // header and ordering
    CHECK(csv.rfind("j,u,k,b,re,im\n", 0) == 0);

    // deleting a row leaves an incomplete grid
    std::string truncated = csv.substr(0, csv.find_last_of('\n', csv.size() - 2) + 1);
    CHECK_THROWS_AS(scalogram_from_csv(truncated, nlohmann::json::parse(side.dump())), GridError);

    // a row outside the sidecar range is refused
    std::string extra = csv + "99,1,0,0,1.0,0.0\n";
    CHECK_THROWS_AS(scalogram_from_csv(extra, nlohmann::json::parse(side.dump())), GridError);
}

TEST_CASE("number formatting") {
    CHECK(format_significant12(0.2) == "0.200000000000");
    CHECK(format_significant12(0.0) == "0.000000000000");
    CHECK(format_significant12(2.0) == "2.00000000000");
    CHECK(format_significant12(1.0 / 3.0) == "0.333333333333");

    CHECK(format_double(1.0) == "1.0");
    CHECK(format_double(0.0) == "0.0");
    CHECK(format_double(-0.0) == "0.0");
    DeterministicRng rng(530);
    for (int t = 0; t < 200; ++t) {
        double x = rng.uniform(-10.0, 10.0) * pow_real(10, rng.range(-6, 6));
        CHECK(std::stod(format_double(x)) == x);  // shortest representation round-trips
    }
}

TEST_CASE("grid json round trip") {
    Wavelet w = character_wavelet(3, 1, 2);
    DeterministicRng rng(540);
    TestFunction f = random_zero_mean_function(rng, 3, 1, 1);
    GridSpec grid = required_grid(f, w);
    GridSpec back = grid_from_json(nlohmann::json::parse(to_json(grid).dump()));
    CHECK(back == grid);
}
