#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "qcorr/io.hpp"
#include "qcorr/states.hpp"
#include "random_states.hpp"

using namespace qcorr;

TEST_SUITE("io") {
  TEST_CASE("density matrix JSON round trip is bit-exact") {
    std::mt19937_64 rng(30);
    const DensityMatrix rho = qcorr::testing::random_mixed(3, rng);
    const auto doc = density_to_json(rho, {{"source", "test"}});
    CHECK(doc["qubit_order"] == "abcd-msb");
    CHECK(doc["n_qubits"] == 3);
    CHECK(doc["metadata"]["source"] == "test");
    const DensityMatrix back = density_from_json(nlohmann::json::parse(doc.dump()));
    CHECK(back.matrix().max_abs_diff(rho.matrix()) == 0.0);
  }

  TEST_CASE("density matrix JSON validation") {
    auto doc = density_to_json(DensityMatrix(dicke(2, 1)));
    CHECK_FALSE(doc.contains("metadata"));
    auto bad_order = doc;
    bad_order["qubit_order"] = "lsb";
    CHECK_THROWS_AS(density_from_json(bad_order), std::invalid_argument);
    auto bad_shape = doc;
    bad_shape["n_qubits"] = 3;
    CHECK_THROWS_AS(density_from_json(bad_shape), std::invalid_argument);
    auto bad_trace = doc;
    bad_trace["re"][0][0] = 0.7;
    CHECK_THROWS_AS(density_from_json(bad_trace), InvalidState);
  }

  TEST_CASE("counts CSV") {
    std::istringstream in("# comment\nsetting,outcome,count\nXYZ,010,412\nZZZ,111,0\n\nXXX,000,12.5\n");
    const auto counts = read_counts(in);
    REQUIRE(counts.size() == 3);
    CHECK(counts[0].setting.bases() == "XYZ");
    CHECK(counts[0].outcome == "010");
    CHECK(counts[0].count == 412.0);
    CHECK(counts[2].count == 12.5);

    std::ostringstream out;
    write_counts(out, counts);
    CHECK(out.str() == "setting,outcome,count\nXYZ,010,412\nZZZ,111,0\nXXX,000,12.5\n");

    std::istringstream bad("setting,outcome,count\nXYZ,01,3\n");
    CHECK_THROWS_AS(read_counts(bad), std::invalid_argument);
    std::istringstream bad_num("XYZ,010,abc\n");
    CHECK_THROWS_AS(read_counts(bad_num), std::invalid_argument);
    std::istringstream empty("setting,outcome,count\n");
    CHECK_THROWS_AS(read_counts(empty), std::invalid_argument);
  }

  TEST_CASE("counts CSV round trip keeps full precision") {
    const auto counts = expected_counts(DensityMatrix(dicke(3, 1)), settings_full(3), 1000.0 / 3.0);
    std::ostringstream out;
    write_counts(out, counts);
    std::istringstream in(out.str());
    const auto back = read_counts(in);
    REQUIRE(back.size() == counts.size());
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i].count == counts[i].count);
  }

  TEST_CASE("correlators CSV") {
    std::istringstream in("pauli,value,sigma\nZZZ,0.87,0.02\nxxz,0.55,0.04\n");
    const auto recs = read_correlators(in);
    REQUIRE(recs.size() == 2);
    CHECK(recs[1].pauli.labels() == "XXZ");
    CHECK(recs[0].value == 0.87);
    CHECK(recs[0].sigma == 0.02);
    std::ostringstream out;
    write_correlators(out, recs);
    CHECK(out.str() == "pauli,value,sigma\nZZZ,0.87,0.02\nXXZ,0.55000000000000004,0.040000000000000001\n");
    std::istringstream back(out.str());
    CHECK(read_correlators(back)[1].value == 0.55);

    std::istringstream bad("ZZZ,1.5,0.1\n");
    CHECK_THROWS_AS(read_correlators(bad), std::invalid_argument);
    std::istringstream neg("ZZZ,0.5,-0.1\n");
    CHECK_THROWS_AS(read_correlators(neg), std::invalid_argument);
  }

  TEST_CASE("KW report JSON") {
    KWReport r;
    r.S = 1.0;
    r.J = 0.5;
    r.E = 0.25;
    r.KW = 0.25;
    r.optimum = {0.5, 1.0};
    auto doc = report_to_json(r);
    CHECK(doc["assignment"] == "b|a,c");
    CHECK(doc["method"] == "exact");
    CHECK(doc["sigma"].is_null());
    CHECK(doc["theta_opt"] == 0.5);
    r.sigma = 0.01;
    r.method = KWMethod::correlator_estimate;
    doc = report_to_json(r);
    CHECK(doc["sigma"] == 0.01);
    CHECK(doc["method"] == "correlator-estimate");
  }

  TEST_CASE("atomic writes") {
    const auto dir = std::filesystem::temp_directory_path() / "qcorr_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    CHECK(read_file(path) == "second");
    CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
    CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.txt", "y"), std::runtime_error);
    CHECK_THROWS_AS(read_file(dir / "nope.txt"), std::runtime_error);
    std::filesystem::remove_all(dir);
  }
}
