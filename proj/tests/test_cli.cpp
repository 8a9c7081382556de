#include "doctest.h"

#include "temp_dir.hpp"

#include "cli.hpp"

#include "combinf/matrix_io.hpp"

#include "json.hpp"

#include <random>
#include <sstream>

using namespace combinf;
using combinf::testing::read_file;
using combinf::testing::TempDir;
using combinf::testing::write_file;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

// Random symmetric similarity matrix with unit diagonal.
Matrix random_similarity(std::size_t p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-0.9, 0.9);
    Matrix m(p, p, 1.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            m(i, j) = m(j, i) = unit(rng);
        }
    }
    return m;
}

// Writes `pairs` twin pairs plus a manifest and returns the manifest path.
std::string write_cohort(const TempDir& dir, const std::string& name,
                         const std::vector<std::pair<Matrix, Matrix>>& pairs) {
    const auto labels = default_labels(pairs.front().first.rows());
    nlohmann::json manifest;
    manifest["pairs"] = nlohmann::json::array();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto a = name + "_" + std::to_string(k) + "_a.csv";
        const auto b = name + "_" + std::to_string(k) + "_b.csv";
        write_matrix_csv(dir / a, labels, pairs[k].first);
        write_matrix_csv(dir / b, labels, pairs[k].second);
        manifest["pairs"].push_back({{"a", a}, {"b", b}});
    }
    const auto path = dir / (name + ".json");
    write_file(path, manifest.dump());
    return path.string();
}

}  // namespace

TEST_CASE("cli pvalue") {
    auto r = run({"pvalue", "--q", "3", "--d", "2"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "p-value: 0.6\n"));
    CHECK(contains(r.out, "exact: 3/5\n"));

    r = run({"pvalue", "--q", "115", "--d", "46"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "p-value: 1.317408455e-08\n"));

    r = run({"pvalue", "--q", "4", "--d", "0"});
    CHECK(contains(r.out, "p-value: 1\n"));

    CHECK(run({"pvalue", "--q", "0", "--d", "1"}).code == cli::kUsage);
    CHECK(run({"pvalue", "--q", "3"}).code == cli::kUsage);
    CHECK(run({"pvalue", "--q", "three", "--d", "1"}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("cli compare") {
    TempDir dir;
    std::mt19937_64 rng(17);
    const auto a = random_similarity(6, rng);
    const auto labels = default_labels(6);
    write_matrix_csv(dir / "a.csv", labels, a);
    write_matrix_csv(dir / "a_copy.csv", labels, a);

    SUBCASE("identical inputs") {
        const auto r = run({"compare", (dir / "a.csv").string(), (dir / "a_copy.csv").string()});
        CHECK(r.code == 0);
        CHECK(contains(r.out, "mode: one-minus\n"));
        CHECK(contains(r.out, "q: 5\n"));
        CHECK(contains(r.out, "D: 0\n"));
        CHECK(contains(r.out, "p-value: 1\n"));
    }
    SUBCASE("disjoint supports in distance mode") {
        // Two 4-node paths whose edge weights never interleave.
        write_file(dir / "low.csv", "0,0.1,0,0\n0.1,0,0.2,0\n0,0.2,0,0.3\n0,0,0.3,0\n");
        write_file(dir / "high.csv", "0,0.6,0,0\n0.6,0,0.7,0\n0,0.7,0,0.8\n0,0,0.8,0\n");
        const auto svg = (dir / "g.svg").string();
        const auto csv = (dir / "g.csv").string();
        const auto r = run({"compare", (dir / "low.csv").string(), (dir / "high.csv").string(),
                            "--mode", "distance", "--svg", svg, "--csv", csv,
                            "--localize-center", "0.3", "--localize-radius", "0"});
        CHECK(r.code == 0);
        CHECK(contains(r.out, "D: 3\n"));
        CHECK(contains(r.out, "argmax weight: 0.3\n"));
        CHECK(contains(r.out, "p-value: 0.1\n"));
        CHECK(contains(r.out, "exact: 1/10\n"));
        CHECK(contains(r.out, "  N3\n"));
        CHECK(contains(r.out, "  N4\n"));
        const auto first_svg = read_file(svg);
        const auto first_csv = read_file(csv);
        CHECK(contains(first_svg, "<svg"));
        CHECK(first_csv.rfind("weight,low.csv,high.csv\n", 0) == 0);
        CHECK(contains(first_csv, "0.3,3,0\n"));
        run({"compare", (dir / "low.csv").string(), (dir / "high.csv").string(), "--mode",
             "distance", "--svg", svg, "--csv", csv});
        CHECK(read_file(svg) == first_svg);
        CHECK(read_file(csv) == first_csv);
    }
    SUBCASE("mismatched inputs are data errors") {
        write_matrix_csv(dir / "small.csv", default_labels(5), random_similarity(5, rng));
        auto r = run({"compare", (dir / "a.csv").string(), (dir / "small.csv").string()});
        CHECK(r.code == cli::kData);
        CHECK(contains(r.err, "error: "));

        auto renamed = labels;
        renamed[2] = "X";
        write_matrix_csv(dir / "renamed.csv", renamed, a);
        r = run({"compare", (dir / "a.csv").string(), (dir / "renamed.csv").string()});
        CHECK(r.code == cli::kData);

        write_file(dir / "asym.csv", "1,0.2\n0.3,1\n");
        CHECK(run({"compare", (dir / "asym.csv").string(), (dir / "asym.csv").string()}).code ==
              cli::kData);
        CHECK(run({"compare", (dir / "a.csv").string(), (dir / "missing.csv").string()}).code ==
              cli::kData);
    }
    SUBCASE("bad options are usage errors") {
        CHECK(run({"compare", (dir / "a.csv").string(), (dir / "a.csv").string(), "--mode",
                   "prim"})
                  .code == cli::kUsage);
        CHECK(run({"compare", (dir / "a.csv").string(), (dir / "a.csv").string(),
                   "--localize-center", "0.5"})
                  .code == cli::kUsage);
    }
}

TEST_CASE("cli heritability") {
    TempDir dir;
    std::mt19937_64 rng(23);
    std::vector<std::pair<Matrix, Matrix>> mz;
    std::vector<std::pair<Matrix, Matrix>> dz;
    for (int k = 0; k < 6; ++k) {
        const auto m = random_similarity(5, rng);
        mz.emplace_back(m, m);
        dz.emplace_back(random_similarity(5, rng), random_similarity(5, rng));
    }
    const auto mz_path = write_cohort(dir, "mz", mz);
    const auto dz_path = write_cohort(dir, "dz", dz);

    SUBCASE("identical twins correlate perfectly") {
        const auto out = (dir / "run").string();
        const auto r = run({"heritability", "--mz", mz_path, "--dz", dz_path, "--out", out});
        CHECK(r.code == 0);
        const auto c_mz = read_matrix_csv(dir / "run" / "c_mz.csv");
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                CHECK(c_mz(i, j) == 1.0);
            }
        }
        for (const char* name : {"c_dz.csv", "heritability.csv", "growth.svg", "growth.csv",
                                 "report.json"}) {
            CHECK(std::filesystem::exists(dir / "run" / name));
        }
        const auto report = nlohmann::json::parse(read_file(dir / "run" / "report.json"));
        CHECK(report["mz_pairs"] == 6);
    }
    SUBCASE("the same cohort on both sides gives zero heritability") {
        const auto out = (dir / "same").string();
        const auto r = run({"heritability", "--mz", dz_path, "--dz", dz_path, "--out", out,
                            "--symmetrize"});
        CHECK(r.code == 0);
        CHECK(contains(r.out, "D: 0\n"));
        CHECK(contains(r.out, "p-value: 1\n"));
        const auto hi = read_matrix_csv(dir / "same" / "heritability.csv");
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                CHECK(hi(i, j) == 0.0);
            }
        }
    }
    SUBCASE("too few pairs") {
        const auto tiny = write_cohort(dir, "tiny", {dz[0], dz[1]});
        const auto r = run({"heritability", "--mz", tiny, "--dz", dz_path, "--out",
                            (dir / "tiny_out").string()});
        CHECK(r.code != 0);
        CHECK(contains(r.err, "error: "));
    }
}

TEST_CASE("cli simulate") {
    TempDir dir;
    const nlohmann::json cfg{{"n", 5},
                             {"p", 8},
                             {"modules_a", {0, 4}},
                             {"modules_b", {0, 2}},
                             {"replications", 2},
                             {"permutation_fractions", {0.1}},
                             {"seed", 7}};
    write_file(dir / "cfg.json", cfg.dump());

    const auto r1 = run({"simulate", "--config", (dir / "cfg.json").string(), "--out",
                         (dir / "one").string(), "--threads", "1"});
    CHECK(r1.code == 0);
    CHECK(contains(r1.out, "Combinatorial"));
    CHECK(contains(r1.err, "progress: 4/4"));
    const auto r2 = run({"simulate", "--config", (dir / "cfg.json").string(), "--out",
                         (dir / "two").string(), "--threads", "2"});
    CHECK(r2.code == 0);
    CHECK(read_file(dir / "one" / "report.json") == read_file(dir / "two" / "report.json"));
    CHECK(read_file(dir / "one" / "report.txt") == read_file(dir / "two" / "report.txt"));

    write_file(dir / "bad.json", R"({"replications": 0})");
    const auto bad = run({"simulate", "--config", (dir / "bad.json").string(), "--out",
                          (dir / "bad").string()});
    CHECK(bad.code == cli::kUsage);
    CHECK(contains(bad.err, "/replications"));

    write_file(dir / "garbled.json", "{");
    CHECK(run({"simulate", "--config", (dir / "garbled.json").string(), "--out",
               (dir / "g").string()})
              .code == cli::kData);
}
