#include "cli.hpp"

#include "svg_plot.hpp"

#include "combinf/errors.hpp"
#include "combinf/graph_mst.hpp"
#include "combinf/matrix_io.hpp"
#include "combinf/simulation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace combinf::cli {

namespace fs = std::filesystem;

namespace {

std::string format_p(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw DataError(path.string() + ": cannot open for writing");
    }
    return f;
}

void check_same_nodes(const ConnectivityMatrix& a, const ConnectivityMatrix& b,
                      const std::string& name_a, const std::string& name_b) {
    if (a.size() != b.size()) {
        throw DataError("dimension mismatch: " + name_a + " is " + std::to_string(a.size()) +
                        "x" + std::to_string(a.size()) + ", " + name_b + " is " +
                        std::to_string(b.size()) + "x" + std::to_string(b.size()));
    }
    if (a.labels() == b.labels()) {
        return;
    }
    std::string diff;
    std::size_t shown = 0;
    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.labels()[i] != b.labels()[i]) {
            ++differing;
            if (shown < 5) {
                diff += "\n  node " + std::to_string(i + 1) + ": '" + a.labels()[i] + "' vs '" +
                        b.labels()[i] + "'";
                ++shown;
            }
        }
    }
    throw DataError("label mismatch between " + name_a + " and " + name_b + " (" +
                    std::to_string(differing) + " differ)" + diff);
}

struct CompareOptions {
    TreeMode mode = TreeMode::one_minus_similarity;
    std::optional<double> center;
    std::optional<double> radius;
    std::string svg_path;
    std::string csv_path;
};

/// Builds both trees, prints the test report and returns it as JSON.
nlohmann::json compare_and_report(const ConnectivityMatrix& a, const ConnectivityMatrix& b,
                                  const std::string& name_a, const std::string& name_b,
                                  const CompareOptions& opts, std::ostream& out,
                                  std::ostream& err) {
    check_same_nodes(a, b, name_a, name_b);
    const auto tree_a = mst_from_connectivity(a, opts.mode);
    const auto tree_b = mst_from_connectivity(b, opts.mode);
    if (tree_a.forest.component_count != 1 || tree_b.forest.component_count != 1) {
        err << "warning: spanning forest is disconnected (" << tree_a.forest.component_count
            << " and " << tree_b.forest.component_count << " components)\n";
    }
    const auto cmp = compare_msts(tree_a.weights, tree_b.weights);

    out << "mode: " << to_string(opts.mode) << '\n';
    out << "q: " << cmp.q << '\n';
    out << "D: " << cmp.d << '\n';
    out << "argmax weight: " << format_double(cmp.argmax_weight) << '\n';
    out << "p-value: " << format_p(cmp.p_value.real_value) << '\n';
    out << "exact: " << cmp.p_value.fraction() << '\n';
    if (cmp.ties_absorbed) {
        out << "warning: tied edge weights were absorbed; the p-value is not exact under ties\n";
    }

    nlohmann::json report{{"mode", to_string(opts.mode)},
                          {"q", cmp.q},
                          {"D", cmp.d},
                          {"argmax_weight", cmp.argmax_weight},
                          {"p_value", cmp.p_value.real_value},
                          {"p_value_exact", cmp.p_value.fraction()},
                          {"ties_absorbed", cmp.ties_absorbed}};

    if (opts.center) {
        const auto nodes = localize_nodes(tree_a.forest, tree_b.forest, *opts.center, *opts.radius);
        out << "localized nodes (" << format_double(*opts.center) << " +/- "
            << format_double(*opts.radius) << "): " << nodes.size() << '\n';
        for (const auto& label : nodes) {
            out << "  " << label << '\n';
        }
        report["localized_nodes"] = nodes;
    }
    if (!opts.svg_path.empty()) {
        auto f = open_output(opts.svg_path);
        write_growth_svg(f, tree_a.weights.weights, tree_b.weights.weights, name_a, name_b,
                         cmp.argmax_weight);
    }
    if (!opts.csv_path.empty()) {
        auto f = open_output(opts.csv_path);
        write_growth_csv(f, tree_a.weights.weights, tree_b.weights.weights, name_a, name_b);
    }
    return report;
}

void add_compare_flags(CLI::App& cmd, CompareOptions& opts, std::string& mode_name,
                       double& center, double& radius) {
    cmd.add_option("--mode", mode_name, "Tree construction: distance, one-minus, max-tree")
        ->check(CLI::IsMember({"distance", "one-minus", "max-tree"}));
    auto* c = cmd.add_option("--localize-center", center, "Center weight for node localization");
    auto* r = cmd.add_option("--localize-radius", radius, "Radius around the center weight")
                  ->check(CLI::NonNegativeNumber);
    c->needs(r);
    r->needs(c);
    cmd.add_option("--svg", opts.svg_path, "Write the growth-curve plot");
    cmd.add_option("--csv", opts.csv_path, "Write both step functions as CSV");
}

void finish_compare_flags(CLI::App& cmd, CompareOptions& opts, const std::string& mode_name,
                          double center, double radius) {
    opts.mode = parse_tree_mode(mode_name);
    if (cmd.count("--localize-center") > 0) {
        opts.center = center;
        opts.radius = radius;
    }
}

void log_degenerate(const TwinCorrelationResult& r, const std::string& group, std::ostream& err) {
    const auto& labels = r.correlation.labels();
    for (const auto& e : r.degenerate_edges) {
        err << "warning: " << group << " edge " << labels[e.i] << " -- " << labels[e.j]
            << " is constant across pairs; correlation set to 0\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact combinatorial inference for monotone graph features", "combinf"};
    app.require_subcommand(1);

    // pvalue
    auto* pvalue = app.add_subcommand("pvalue", "Exact P(D_q >= d)");
    std::size_t q = 0;
    std::size_t d = 0;
    pvalue->add_option("--q", q, "Sequence length")->required();
    pvalue->add_option("--d", d, "Observed maximum gap")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "Compare the spanning trees of two matrices");
    std::string file_a;
    std::string file_b;
    std::string compare_mode = "one-minus";
    double compare_center = 0.0;
    double compare_radius = 0.0;
    double symmetry_tol = kDefaultSymmetryTolerance;
    CompareOptions compare_opts;
    compare->add_option("A", file_a, "First matrix CSV")->required();
    compare->add_option("B", file_b, "Second matrix CSV")->required();
    add_compare_flags(*compare, compare_opts, compare_mode, compare_center, compare_radius);
    compare->add_option("--symmetry-tol", symmetry_tol, "Symmetry tolerance for input matrices")
        ->check(CLI::NonNegativeNumber);

    // heritability
    auto* herit = app.add_subcommand("heritability", "Twin correlations, HI and MZ/DZ tree test");
    std::string mz_manifest;
    std::string dz_manifest;
    std::string herit_out;
    bool symmetrize = false;
    bool clamp = false;
    std::string herit_mode = "one-minus";
    double herit_center = 0.0;
    double herit_radius = 0.0;
    double herit_tol = kDefaultSymmetryTolerance;
    CompareOptions herit_opts;
    herit->add_option("--mz", mz_manifest, "MZ cohort manifest (JSON)")->required();
    herit->add_option("--dz", dz_manifest, "DZ cohort manifest (JSON)")->required();
    herit->add_option("--out", herit_out, "Output directory")->required();
    herit->add_flag("--symmetrize", symmetrize, "Double-entry Spearman over both twin orders");
    herit->add_flag("--clamp-hi", clamp, "Clip heritability to [0, 1] in the written map");
    add_compare_flags(*herit, herit_opts, herit_mode, herit_center, herit_radius);
    herit->add_option("--symmetry-tol", herit_tol, "Symmetry tolerance for input matrices")
        ->check(CLI::NonNegativeNumber);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Combinatorial vs permutation simulation");
    std::string config_path;
    std::string sim_out;
    std::size_t threads = 0;
    simulate->add_option("--config", config_path, "Simulation config (JSON)")->required();
    simulate->add_option("--out", sim_out, "Output directory")->required();
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");

    std::vector<const char*> argv{"combinf"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << "run 'combinf --help' for usage\n";
        return kUsage;
    }

    try {
        if (pvalue->parsed()) {
            const auto p = exact_pvalue(q, d);
            out << "q: " << q << '\n';
            out << "d: " << d << '\n';
            out << "p-value: " << format_p(p.real_value) << '\n';
            out << "exact: " << p.fraction() << '\n';
        } else if (compare->parsed()) {
            finish_compare_flags(*compare, compare_opts, compare_mode, compare_center,
                                 compare_radius);
            const auto a = read_matrix_csv(fs::path(file_a), symmetry_tol);
            const auto b = read_matrix_csv(fs::path(file_b), symmetry_tol);
            compare_and_report(a, b, fs::path(file_a).filename().string(),
                               fs::path(file_b).filename().string(), compare_opts, out, err);
        } else if (herit->parsed()) {
            finish_compare_flags(*herit, herit_opts, herit_mode, herit_center, herit_radius);
            const auto mz = load_cohort_manifest(mz_manifest, herit_tol);
            const auto dz = load_cohort_manifest(dz_manifest, herit_tol);
            if (mz.labels() != dz.labels()) {
                throw DataError("MZ and DZ cohorts have different node labels or dimensions");
            }
            const TwinCorrelationOptions topts{symmetrize};
            const auto c_mz = twin_edgewise_correlation(mz, topts);
            const auto c_dz = twin_edgewise_correlation(dz, topts);
            log_degenerate(c_mz, "MZ", err);
            log_degenerate(c_dz, "DZ", err);
            const auto hi = heritability_index(c_mz.correlation, c_dz.correlation, clamp);

            const fs::path dir(herit_out);
            fs::create_directories(dir);
            write_matrix_csv(dir / "c_mz.csv", c_mz.correlation.labels(),
                             c_mz.correlation.entries());
            write_matrix_csv(dir / "c_dz.csv", c_dz.correlation.labels(),
                             c_dz.correlation.entries());
            write_matrix_csv(dir / "heritability.csv", hi.labels, hi.entries);
            if (herit_opts.svg_path.empty()) {
                herit_opts.svg_path = (dir / "growth.svg").string();
            }
            if (herit_opts.csv_path.empty()) {
                herit_opts.csv_path = (dir / "growth.csv").string();
            }

            out << "pairs: MZ " << mz.pairs().size() << ", DZ " << dz.pairs().size() << '\n';
            out << "nodes: " << mz.nodes() << '\n';
            out << "negative HI entries: " << hi.negative_entries << '\n';
            auto report = compare_and_report(c_mz.correlation, c_dz.correlation, "MZ", "DZ",
                                             herit_opts, out, err);
            report["mz_pairs"] = mz.pairs().size();
            report["dz_pairs"] = dz.pairs().size();
            report["symmetrize"] = symmetrize;
            report["negative_hi_entries"] = hi.negative_entries;
            report["degenerate_edges"] = {{"MZ", c_mz.degenerate_edges.size()},
                                          {"DZ", c_dz.degenerate_edges.size()}};
            auto f = open_output(dir / "report.json");
            f << report.dump(2) << '\n';
        } else if (simulate->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                throw DataError(config_path + ": cannot open config");
            }
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw DataError(config_path + ": invalid JSON (" + e.what() + ")");
            }
            auto cfg = SimulationConfig::from_json(doc);
            if (simulate->count("--threads") > 0) {
                cfg.threads = threads;
            }
            const auto report = run_experiment(cfg, [&](std::size_t done, std::size_t total) {
                if (done == total || done % 10 == 0) {
                    err << "progress: " << done << "/" << total << " trials\n";
                }
            });
            const fs::path dir(sim_out);
            fs::create_directories(dir);
            {
                auto f = open_output(dir / "report.json");
                f << report.to_json().dump(2) << '\n';
            }
            {
                auto f = open_output(dir / "report.txt");
                f << report.to_text_table();
            }
            out << report.to_text_table();
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}

}  // namespace combinf::cli
