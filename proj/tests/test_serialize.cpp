/// Serialization: float formatting, matrix JSON parsing, rational strings,
/// factorization JSON, CSV round trips, peak reports, and manifests.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "scatterflat/serialize.hpp"

using namespace scatterflat;
using exactlin::BigRat;
using exactlin::IntMatrix;
using specfun::Cplx;

TEST_CASE("double formatting uses 15 significant digits") {
    CHECK(serialize::fmt_double(2.0 * std::log(2.0)) == "1.38629436111989");
    CHECK(serialize::fmt_double(0.5) == "0.5");
    CHECK(serialize::fmt_double(-3.0) == "-3");
    CHECK(serialize::fmt_double(1e-07) == "1e-07");
    CHECK(serialize::fmt_double(0.0) == "0");
}

TEST_CASE("integer matrix parsing") {
    const IntMatrix m = serialize::int_matrix_from_string(R"([["0","-1"],["1","0"]])");
    CHECK(m.n() == 2);
    CHECK(m.at(0, 1) == -1);
    CHECK(m.at(1, 0) == 1);

    const IntMatrix b = serialize::int_matrix_from_string("[[2,1],[1,1]]");
    CHECK(b.at(0, 0) == 2);

    const IntMatrix t = serialize::int_matrix_from_string(
        R"([["1","0","0"],["1","1","0"],["1","1","1"]])");
    CHECK(t.n() == 3);
    CHECK(t.at(2, 0) == 1);

    CHECK_THROWS_AS(serialize::int_matrix_from_string("[[1,2],[3]]"), PreconditionError);
    CHECK_THROWS_AS(serialize::int_matrix_from_string(R"([["x","1"],["1","1"]])"),
                    PreconditionError);
    CHECK_THROWS_AS(serialize::int_matrix_from_string("[1,2,3]"), PreconditionError);
    CHECK_THROWS_AS(serialize::int_matrix_from_string("not json at all"), PreconditionError);
    CHECK_THROWS_AS(
        serialize::int_matrix_from_string("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"),
        PreconditionError);
}

TEST_CASE("rational strings") {
    CHECK(serialize::rat_to_string(BigRat(3)) == "3");
    CHECK(serialize::rat_to_string(BigRat(1, 2)) == "1/2");
    CHECK(serialize::rat_to_string(BigRat(-5, 10)) == "-1/2");
    CHECK(serialize::rat_to_string(BigRat(0)) == "0");
}

TEST_CASE("factorization serialization") {
    const IntMatrix m = serialize::int_matrix_from_string(R"([["0","-1"],["1","0"]])");
    const auto f = exactlin::bruhat_decompose(m);
    const nlohmann::json j = serialize::factorization_to_json(f);
    CHECK(j["a_diag"][0] == "1");
    CHECK(j["a_diag"][1] == "1");
    CHECK(j["m_sign"][0] == -1);
    CHECK(j["m_sign"][1] == 1);
    CHECK(j["w_images"][0] == 2);
    CHECK(j["w_images"][1] == 1);
    CHECK(j["w_length"] == 1);
    CHECK(j["u_left"][0][0] == "1");
    CHECK(j["u_left"][0][1] == "0");
    CHECK(j["u_right"][1][1] == "1");
}

TEST_CASE("sample CSV round trip") {
    poisson::SpectralSamples s;
    s.count = 4;
    s.r_min = -1.5;
    s.r_max = 1.5;
    s.values = {Cplx(0.25, -1.0), Cplx(1.0 / 3.0, 0.0), Cplx(-2.0, 1e-5), Cplx(0.0, 0.0)};
    const std::string csv = serialize::samples_to_csv(s, "zeta");
    CHECK(csv.rfind("zeta,abs,re,im\n", 0) == 0);

    const auto back = serialize::samples_from_csv(csv);
    REQUIRE(back.count == 4);
    CHECK(back.r_min == doctest::Approx(-1.5).epsilon(1e-14));
    CHECK(back.r_max == doctest::Approx(1.5).epsilon(1e-14));
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::abs(back.values[k] - s.values[k]) <=
              1e-14 * (1.0 + std::abs(s.values[k])));

    CHECK_THROWS_AS(serialize::samples_from_csv("zeta,abs,re,im\n"), PreconditionError);
    CHECK_THROWS_AS(serialize::samples_from_csv("bogus\n1,2\n"), PreconditionError);
}

TEST_CASE("peak report serialization") {
    poisson::PeakReport report;
    report.threshold = 5.0;
    report.resolution = 0.0062831853;
    report.peaks = {{1.3862943611198906, 31.4}, {2.1972245773362196, 20.9}};
    const nlohmann::json j = serialize::peak_report_to_json(report);
    CHECK(j["threshold"] == 5.0);
    CHECK(j["peaks"].size() == 2);
    CHECK(j["peaks"][0]["location"].get<double>() ==
          doctest::Approx(1.3862943611198906).epsilon(1e-15));
    CHECK(j["peaks"][1]["magnitude"].get<double>() == doctest::Approx(20.9).epsilon(1e-15));
}

TEST_CASE("file output and manifest") {
    const std::string path = "test_serialize_output.csv";
    serialize::write_file(path, "zeta,abs,re,im\n0,1,1,0\n");
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "zeta,abs,re,im\n0,1,1,0\n");

    serialize::write_manifest(path, "scatterflat poisson scan --rmax 5", 0.125,
                              nlohmann::json{{"target_abs_tol", 1e-12}});
    std::ifstream min(path + ".manifest.json");
    REQUIRE(min.good());
    nlohmann::json manifest;
    min >> manifest;
    CHECK(manifest["tool"] == "scatterflat");
    CHECK(manifest["version"] == serialize::kToolVersion);
    CHECK(manifest["output"] == path);
    CHECK(manifest["command"] == "scatterflat poisson scan --rmax 5");
    CHECK(manifest["wall_seconds"].get<double>() >= 0.0);
    CHECK(manifest["config"]["target_abs_tol"].get<double>() ==
          doctest::Approx(1e-12).epsilon(1e-15));

    std::remove(path.c_str());
    std::remove((path + ".manifest.json").c_str());

    CHECK_THROWS_AS(serialize::write_file("no_such_dir/zz/file.txt", "x"), PreconditionError);
}
