#pragma once

// Block-modular network simulation, the sampled permutation-test baseline
// and the experiment grid comparing the two.

#include "combinf/connectivity.hpp"
#include "combinf/exact_inference.hpp"
#include "combinf/graph_mst.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace combinf {

/// Reproducible random stream: mt19937_64 seeded through std::seed_seq from
/// (master seed, stream index). Both are fully specified by the standard,
/// and the distributions come from Boost.Random, so draws are identical
/// across compilers and platforms.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    static constexpr const char* algorithm() { return "mt19937_64/seed_seq"; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    double normal(double mean = 0.0, double stddev = 1.0);
    /// Uniform on [lo, hi].
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// Modules of size c = p/k: node i of module j copies the first column of
/// module j in X plus N(0, sigma^2) noise. k = 0 means p singleton modules
/// (no induced dependency). Throws ValidationError unless k = 0 or k | p,
/// and for sigma < 0.
DataMatrix simulate_modular_data(std::size_t n, std::size_t p, std::size_t k, double sigma,
                                 RngStream& rng);

/// Same construction on a given n x p base matrix X; only the noise is drawn.
DataMatrix simulate_modular_data(const Matrix& base, std::size_t k, double sigma, RngStream& noise);

/// n x p matrix of independent standard normals, drawn row-major.
Matrix standard_normal_matrix(std::size_t n, std::size_t p, RngStream& rng);

/// Pearson correlation -> spanning tree for both groups -> maximum gap.
/// TreeMode::distance uses the correlations themselves as edge weights.
DiscrepancyResult mst_statistic(const DataMatrix& a, const DataMatrix& b,
                                TreeMode mode = TreeMode::distance);

/// Exact p-value of mst_statistic. Throws DataError when the node counts differ.
double run_combinatorial_trial(const DataMatrix& a, const DataMatrix& b,
                               TreeMode mode = TreeMode::distance);

struct PermutationOptions {
    /// (count + 1) / (N + 1) instead of the plain proportion count / N.
    bool add_one = false;
    /// Sample relabelings without replacement (needs 2n <= 62).
    bool distinct = false;
    /// Ignore num_permutations and visit all C(2n, n) relabelings.
    bool full_enumeration = false;
    /// Tree construction used by the statistic.
    TreeMode tree_mode = TreeMode::distance;
};

struct PermutationResult {
    double p_value = 1.0;
    std::size_t permutations = 0;  ///< relabelings actually evaluated
    std::size_t exceed_count = 0;  ///< relabelings with D* >= D_obs
    std::size_t observed_d = 0;
    bool capped = false;           ///< request exceeded C(2n, n) and was reduced
};

/// Relabelling test on the pooled 2n observations. Throws DataError unless
/// both groups have the same n and p; ValidationError for
/// num_permutations < 1 (unless full_enumeration) and CapacityError when
/// full enumeration or distinct sampling is out of reach.
PermutationResult permutation_test(const DataMatrix& a, const DataMatrix& b,
                                   std::size_t num_permutations, RngStream& rng,
                                   const PermutationOptions& options = {});

/// floor(fraction * C(2n, n)), at least 1.
std::size_t permutations_for_fraction(double fraction, std::size_t n);

struct SimulationConfig {
    std::size_t n = 10;
    std::size_t p = 40;
    /// Parallel lists: pairing i compares modules_a[i] against modules_b[i].
    std::vector<std::size_t> modules_a{0, 4, 4, 4, 5};
    std::vector<std::size_t> modules_b{0, 4, 5, 8, 10};
    double sigma = 0.1;
    std::size_t replications = 100;
    std::vector<double> permutation_fractions{0.001, 0.005, 0.01};
    std::uint64_t seed = 20180527;
    bool add_one = false;
    bool distinct_permutations = false;
    /// Spanning tree over the correlations: "distance" takes c as the edge
    /// weight, "one-minus" takes 1 - c.
    TreeMode tree_mode = TreeMode::distance;
    /// Both groups of a trial share one draw of X and differ only in their
    /// module layout and noise.
    bool shared_base = true;
    /// Worker threads; 0 picks the hardware concurrency. Never affects results.
    std::size_t threads = 0;

    /// Throws ValidationError, message prefixed with a JSON pointer.
    void validate() const;

    /// Missing keys keep their defaults. Throws ValidationError (with a JSON
    /// pointer) on wrong types or invalid values.
    static SimulationConfig from_json(const nlohmann::json& j);
    /// Every result-affecting field (threads excluded).
    nlohmann::json to_json() const;
};

struct ExperimentCell {
    std::size_t modules_a = 0;
    std::size_t modules_b = 0;
    std::string method;                 ///< "combinatorial" or "permute"
    std::optional<double> fraction;     ///< set for permutation cells
    std::size_t permutations = 0;       ///< relabelings per replication
    double mean = 0.0;
    double stddev = 0.0;                ///< sample std (n - 1); 0 for one replication
    std::vector<double> p_values;       ///< one per replication, in replication order

    std::string pairing_label() const;  ///< "4 vs. 5"
    std::string method_label() const;   ///< "Combinatorial", "Permute 0.1%"
};

struct ExperimentReport {
    SimulationConfig config;
    std::vector<ExperimentCell> cells;  ///< pairing-major, combinatorial first

    const ExperimentCell& cell(std::size_t modules_a, std::size_t modules_b,
                               std::optional<double> fraction) const;

    nlohmann::json to_json() const;
    /// Aligned text grid: one row per pairing, one column per method.
    std::string to_text_table() const;
};

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (pairing, replication) trial. Each trial draws from its own
/// RngStream keyed by (pairing, replication, slot), so the report is
/// bit-identical for any thread count.
ExperimentReport run_experiment(const SimulationConfig& cfg, const ProgressCallback& progress = {});

}  // namespace combinf
