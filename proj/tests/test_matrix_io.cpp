#include "doctest.h"

#include "temp_dir.hpp"

#include "combinf/errors.hpp"
#include "combinf/matrix_io.hpp"

#include <random>
#include <sstream>

using namespace combinf;
using combinf::testing::TempDir;
using combinf::testing::write_file;

namespace {

std::string data_error(const std::string& csv) {
    std::istringstream in(csv);
    try {
        read_matrix_csv(in, kDefaultSymmetryTolerance, "m.csv");
    } catch (const DataError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("read_matrix_csv") {
    SUBCASE("plain grid gets default labels") {
        std::istringstream in("1,0.5\n0.5,1\n");
        const auto m = read_matrix_csv(in);
        CHECK(m.labels() == std::vector<std::string>{"N1", "N2"});
        CHECK(m(0, 1) == 0.5);
    }
    SUBCASE("header row") {
        std::istringstream in("amygdala,insula,V1\n1,0.2,0.3\n0.2,1,-0.4\n0.3,-0.4,1\n");
        const auto m = read_matrix_csv(in);
        CHECK(m.labels() == std::vector<std::string>{"amygdala", "insula", "V1"});
        CHECK(m(2, 1) == -0.4);
    }
    SUBCASE("whitespace and CRLF") {
        std::istringstream in(" 1 , 2e-1\r\n0.2, 1\r\n");
        const auto m = read_matrix_csv(in);
        CHECK(m(0, 1) == 0.2);
    }
    SUBCASE("errors name the position") {
        const auto msg = data_error("1,0.5\n0.5,x\n");
        CHECK(msg.find("m.csv") != std::string::npos);
        CHECK(msg.find("row 2") != std::string::npos);
        CHECK(msg.find("column 2") != std::string::npos);
        CHECK_FALSE(data_error("1,2,3\n2,1,3\n").empty());
        CHECK_FALSE(data_error("1,2\n2,1,3\n").empty());
        CHECK_FALSE(data_error("").empty());
        CHECK(data_error("1,0.5\n0.7,1\n").find("(1, 2)") != std::string::npos);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_matrix_csv(std::filesystem::path("/nonexistent/m.csv")), DataError);
    }
}

TEST_CASE("write then read reproduces every entry") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    const std::size_t p = 7;
    Matrix m(p, p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            m(i, j) = m(j, i) = normal(rng) * (i == 0 ? 1e-9 : 1.0);
        }
    }
    m(1, 2) = m(2, 1) = 0.1;
    const auto labels = default_labels(p);
    std::ostringstream out;
    write_matrix_csv(out, labels, m);
    std::istringstream in(out.str());
    const auto back = read_matrix_csv(in, 0.0);
    CHECK(back.entries() == m);
    CHECK(back.labels() == labels);
    CHECK(out.str().rfind("N1,N2,", 0) == 0);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("label files and cohort manifests") {
    TempDir dir;
    write_file(dir / "labels.txt", "A, B\nC\n\n");
    CHECK(read_label_file(dir / "labels.txt") == std::vector<std::string>{"A", "B", "C"});

    const std::string grid = "1,0.1,0.2\n0.1,1,0.3\n0.2,0.3,1\n";
    for (int k = 0; k < 3; ++k) {
        write_file(dir / ("a" + std::to_string(k) + ".csv"), grid);
        write_file(dir / ("b" + std::to_string(k) + ".csv"), grid);
    }
    write_file(dir / "cohort.json", R"({"labels_from": "labels.txt", "pairs": [
        {"a": "a0.csv", "b": "b0.csv"}, {"a": "a1.csv", "b": "b1.csv"}, {"a": "a2.csv", "b": "b2.csv"}]})");
    const auto cohort = load_cohort_manifest(dir / "cohort.json");
    CHECK(cohort.pairs().size() == 3);
    CHECK(cohort.labels() == std::vector<std::string>{"A", "B", "C"});

    write_file(dir / "broken.json", R"({"pairs": [{"a": "a0.csv", "b": "missing.csv"}]})");
    CHECK_THROWS_AS(load_cohort_manifest(dir / "broken.json"), DataError);
    write_file(dir / "notjson.json", "{pairs");
    CHECK_THROWS_AS(load_cohort_manifest(dir / "notjson.json"), DataError);
}
