#include "combinf/simulation.hpp"

#include "combinf/errors.hpp"
#include "combinf/graph_mst.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace combinf {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream),
                         static_cast<std::uint32_t>(stream >> 32)};
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    auto seq = make_seed_seq(seed, stream);
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

double RngStream::normal(double mean, double stddev) {
    return boost::random::normal_distribution<double>(mean, stddev)(engine_);
}

std::uint64_t RngStream::uniform(std::uint64_t lo, std::uint64_t hi) {
    return boost::random::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
}

Matrix standard_normal_matrix(std::size_t n, std::size_t p, RngStream& rng) {
    Matrix x(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t col = 0; col < p; ++col) {
            x(r, col) = rng.normal();
        }
    }
    return x;
}

DataMatrix simulate_modular_data(const Matrix& base, std::size_t k, double sigma, RngStream& noise) {
    const std::size_t n = base.rows();
    const std::size_t p = base.cols();
    if (n < 2 || p < 2) {
        throw ValidationError("simulate_modular_data: needs n >= 2 and p >= 2");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("simulate_modular_data: sigma must be finite and >= 0");
    }
    const std::size_t modules = k == 0 ? p : k;
    if (p % modules != 0) {
        throw ValidationError("simulate_modular_data: module count " + std::to_string(k) +
                              " does not divide p = " + std::to_string(p));
    }
    const std::size_t c = p / modules;

    Matrix y(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t col = 0; col < p; ++col) {
            const std::size_t leader = (col / c) * c;
            y(r, col) = base(r, leader) + sigma * noise.normal();
        }
    }
    return DataMatrix(std::move(y));
}

DataMatrix simulate_modular_data(std::size_t n, std::size_t p, std::size_t k, double sigma,
                                 RngStream& rng) {
    if (n < 2 || p < 2) {
        throw ValidationError("simulate_modular_data: needs n >= 2 and p >= 2");
    }
    // Draw order is fixed: all of X row-major, then all noise row-major.
    const auto x = standard_normal_matrix(n, p, rng);
    return simulate_modular_data(x, k, sigma, rng);
}

DiscrepancyResult mst_statistic(const DataMatrix& a, const DataMatrix& b, TreeMode mode) {
    if (a.nodes() != b.nodes()) {
        throw DataError("groups have different node counts (" + std::to_string(a.nodes()) +
                        " vs " + std::to_string(b.nodes()) + ")");
    }
    const auto ta = mst_from_connectivity(pearson_correlation_matrix(a), mode);
    const auto tb = mst_from_connectivity(pearson_correlation_matrix(b), mode);
    return discrepancy(ta.weights.weights, tb.weights.weights);
}

double run_combinatorial_trial(const DataMatrix& a, const DataMatrix& b, TreeMode mode) {
    const auto stat = mst_statistic(a, b, mode);
    return exact_pvalue(stat.q, stat.d).real_value;
}

std::size_t permutations_for_fraction(double fraction, std::size_t n) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ValidationError("permutation fraction must lie in (0, 1]");
    }
    const double total = binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n))
                             .convert_to<double>();
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * total)));
}

namespace {

class RelabelEvaluator {
public:
    RelabelEvaluator(const DataMatrix& a, const DataMatrix& b, TreeMode mode)
        : n_(a.observations()), p_(a.nodes()), mode_(mode), pooled_(2 * n_, p_) {
        for (std::size_t r = 0; r < n_; ++r) {
            std::copy_n(a.values().row(r).begin(), p_, pooled_.row(r).begin());
            std::copy_n(b.values().row(r).begin(), p_, pooled_.row(n_ + r).begin());
        }
    }

    /// `in_first[r]` marks pooled rows assigned to the first group.
    std::size_t statistic(const std::vector<char>& in_first) const {
        Matrix first(n_, p_);
        Matrix second(n_, p_);
        std::size_t fa = 0;
        std::size_t fb = 0;
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            auto dst = in_first[r] ? first.row(fa++) : second.row(fb++);
            std::copy_n(pooled_.row(r).begin(), p_, dst.begin());
        }
        return mst_statistic(DataMatrix(std::move(first)), DataMatrix(std::move(second)), mode_).d;
    }

    std::size_t pooled_rows() const { return 2 * n_; }

private:
    std::size_t n_;
    std::size_t p_;
    TreeMode mode_;
    Matrix pooled_;
};

std::vector<char> mask_to_flags(std::uint64_t mask, std::size_t rows) {
    std::vector<char> flags(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        flags[r] = static_cast<char>((mask >> r) & 1u);
    }
    return flags;
}

// Uniform n-subset of 0..2n-1 via a partial Fisher-Yates shuffle.
std::uint64_t random_subset_mask(std::size_t rows, std::size_t n, RngStream& rng,
                                 std::vector<std::size_t>& scratch) {
    scratch.resize(rows);
    std::iota(scratch.begin(), scratch.end(), std::size_t{0});
    std::uint64_t mask = 0;
    for (std::size_t s = 0; s < n; ++s) {
        const auto pick = static_cast<std::size_t>(rng.uniform(s, rows - 1));
        std::swap(scratch[s], scratch[pick]);
        mask |= std::uint64_t{1} << scratch[s];
    }
    return mask;
}

std::vector<char> random_subset_flags(std::size_t rows, std::size_t n, RngStream& rng,
                                      std::vector<std::size_t>& scratch) {
    scratch.resize(rows);
    std::iota(scratch.begin(), scratch.end(), std::size_t{0});
    std::vector<char> flags(rows, 0);
    for (std::size_t s = 0; s < n; ++s) {
        const auto pick = static_cast<std::size_t>(rng.uniform(s, rows - 1));
        std::swap(scratch[s], scratch[pick]);
        flags[scratch[s]] = 1;
    }
    return flags;
}

constexpr std::size_t kMaxFullEnumeration = 2'000'000;

}  // namespace

PermutationResult permutation_test(const DataMatrix& a, const DataMatrix& b,
                                   std::size_t num_permutations, RngStream& rng,
                                   const PermutationOptions& options) {
    if (a.observations() != b.observations()) {
        throw DataError("permutation_test: groups have different sizes (" +
                        std::to_string(a.observations()) + " vs " +
                        std::to_string(b.observations()) + ")");
    }
    if (a.nodes() != b.nodes()) {
        throw DataError("permutation_test: groups have different node counts");
    }
    if (num_permutations < 1 && !options.full_enumeration) {
        throw ValidationError("permutation_test: num_permutations must be >= 1");
    }
    const std::size_t n = a.observations();
    const std::size_t rows = 2 * n;
    const BigInt space = binomial(static_cast<unsigned>(rows), static_cast<unsigned>(n));

    PermutationResult result;
    result.observed_d = mst_statistic(a, b, options.tree_mode).d;
    const RelabelEvaluator evaluator(a, b, options.tree_mode);

    auto record = [&](std::size_t d_star) {
        ++result.permutations;
        if (d_star >= result.observed_d) {
            ++result.exceed_count;
        }
    };

    if (options.full_enumeration) {
        if (rows > 62 || space > kMaxFullEnumeration) {
            throw CapacityError("permutation_test: C(" + std::to_string(rows) + ", " +
                                std::to_string(n) + ") relabelings are too many to enumerate");
        }
        std::uint64_t mask = (std::uint64_t{1} << n) - 1;
        const std::uint64_t limit = std::uint64_t{1} << rows;
        while (mask < limit) {
            record(evaluator.statistic(mask_to_flags(mask, rows)));
            const std::uint64_t low = mask & (~mask + 1);
            const std::uint64_t ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    } else {
        std::size_t count = num_permutations;
        if (BigInt(count) > space) {
            count = space.convert_to<std::size_t>();
            result.capped = true;
        }
        std::vector<std::size_t> scratch;
        if (options.distinct) {
            if (rows > 62) {
                throw CapacityError("permutation_test: distinct sampling needs 2n <= 62");
            }
            std::unordered_set<std::uint64_t> used;
            while (used.size() < count) {
                const std::uint64_t mask = random_subset_mask(rows, n, rng, scratch);
                if (used.insert(mask).second) {
                    record(evaluator.statistic(mask_to_flags(mask, rows)));
                }
            }
        } else {
            for (std::size_t k = 0; k < count; ++k) {
                record(evaluator.statistic(random_subset_flags(rows, n, rng, scratch)));
            }
        }
    }

    if (options.add_one) {
        result.p_value = static_cast<double>(result.exceed_count + 1) /
                         static_cast<double>(result.permutations + 1);
    } else {
        result.p_value = static_cast<double>(result.exceed_count) /
                         static_cast<double>(result.permutations);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

[[noreturn]] void config_error(const std::string& pointer, const std::string& what) {
    throw ValidationError(pointer + ": " + what);
}

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
    if (!j.contains(key)) {
        return;
    }
    const std::string pointer = std::string("/") + key;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        config_error(pointer, std::string("wrong type (") + e.what() + ")");
    }
}

// Values built in C++ from int literals are signed JSON integers.
bool is_nonnegative_integer(const nlohmann::json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

void read_count(const nlohmann::json& j, const char* key, std::size_t& out) {
    if (!j.contains(key)) {
        return;
    }
    const auto& v = j.at(key);
    if (!is_nonnegative_integer(v)) {
        config_error(std::string("/") + key, "expected a nonnegative integer");
    }
    out = v.get<std::size_t>();
}

void read_count_list(const nlohmann::json& j, const char* key, std::vector<std::size_t>& out) {
    if (!j.contains(key)) {
        return;
    }
    const auto& v = j.at(key);
    const std::string pointer = std::string("/") + key;
    if (!v.is_array()) {
        config_error(pointer, "expected an array of nonnegative integers");
    }
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_nonnegative_integer(v[i])) {
            config_error(pointer + "/" + std::to_string(i), "expected a nonnegative integer");
        }
        out.push_back(v[i].get<std::size_t>());
    }
}

std::string format_percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", fraction * 100.0);
    return buf;
}

std::string format_fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

void SimulationConfig::validate() const {
    if (n < 2) {
        config_error("/n", "must be >= 2");
    }
    if (p < 2) {
        config_error("/p", "must be >= 2");
    }
    if (modules_a.empty()) {
        config_error("/modules_a", "must list at least one pairing");
    }
    if (modules_a.size() != modules_b.size()) {
        config_error("/modules_b", "must have the same length as /modules_a");
    }
    for (const auto* list : {&modules_a, &modules_b}) {
        const char* name = list == &modules_a ? "/modules_a/" : "/modules_b/";
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::size_t k = (*list)[i];
            if (k != 0 && p % k != 0) {
                config_error(name + std::to_string(i),
                             std::to_string(k) + " does not divide p = " + std::to_string(p));
            }
        }
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        config_error("/sigma", "must be finite and >= 0");
    }
    if (replications < 1) {
        config_error("/replications", "must be >= 1");
    }
    for (std::size_t i = 0; i < permutation_fractions.size(); ++i) {
        const double f = permutation_fractions[i];
        if (!(f > 0.0 && f <= 1.0)) {
            config_error("/permutation_fractions/" + std::to_string(i), "must lie in (0, 1]");
        }
    }
    if (distinct_permutations && 2 * n > 62) {
        config_error("/distinct_permutations", "needs 2n <= 62");
    }
}

SimulationConfig SimulationConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        config_error("", "configuration must be a JSON object");
    }
    static const std::unordered_set<std::string> known{
        "n",    "p",    "modules_a", "modules_b", "sigma", "replications", "permutation_fractions",
        "seed", "add_one", "distinct_permutations", "tree_mode", "shared_base", "threads"};
    for (const auto& item : j.items()) {
        if (!known.contains(item.key())) {
            config_error("/" + item.key(), "unknown key");
        }
    }
    SimulationConfig cfg;
    read_count(j, "n", cfg.n);
    read_count(j, "p", cfg.p);
    read_count_list(j, "modules_a", cfg.modules_a);
    read_count_list(j, "modules_b", cfg.modules_b);
    if (j.contains("sigma") && !j.at("sigma").is_number()) {
        config_error("/sigma", "expected a number");
    }
    read_field(j, "sigma", cfg.sigma);
    read_count(j, "replications", cfg.replications);
    if (j.contains("permutation_fractions")) {
        const auto& v = j.at("permutation_fractions");
        if (!v.is_array()) {
            config_error("/permutation_fractions", "expected an array of numbers");
        }
        cfg.permutation_fractions.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                config_error("/permutation_fractions/" + std::to_string(i), "expected a number");
            }
            cfg.permutation_fractions.push_back(v[i].get<double>());
        }
    }
    if (j.contains("seed") && !is_nonnegative_integer(j.at("seed"))) {
        config_error("/seed", "expected a nonnegative 64-bit integer");
    }
    read_field(j, "seed", cfg.seed);
    for (const char* key : {"add_one", "distinct_permutations", "shared_base"}) {
        if (j.contains(key) && !j.at(key).is_boolean()) {
            config_error(std::string("/") + key, "expected true or false");
        }
    }
    read_field(j, "add_one", cfg.add_one);
    read_field(j, "distinct_permutations", cfg.distinct_permutations);
    read_field(j, "shared_base", cfg.shared_base);
    if (j.contains("tree_mode")) {
        const auto& v = j.at("tree_mode");
        if (!v.is_string()) {
            config_error("/tree_mode", "expected a string");
        }
        try {
            cfg.tree_mode = parse_tree_mode(v.get<std::string>());
        } catch (const ValidationError& e) {
            config_error("/tree_mode", e.what());
        }
    }
    read_count(j, "threads", cfg.threads);
    cfg.validate();
    return cfg;
}

nlohmann::json SimulationConfig::to_json() const {
    return {{"n", n},
            {"p", p},
            {"modules_a", modules_a},
            {"modules_b", modules_b},
            {"sigma", sigma},
            {"replications", replications},
            {"permutation_fractions", permutation_fractions},
            {"seed", seed},
            {"add_one", add_one},
            {"distinct_permutations", distinct_permutations},
            {"tree_mode", combinf::to_string(tree_mode)},
            {"shared_base", shared_base}};
}

// ---------------------------------------------------------------------------
// Report

std::string ExperimentCell::pairing_label() const {
    return std::to_string(modules_a) + " vs. " + std::to_string(modules_b);
}

std::string ExperimentCell::method_label() const {
    if (!fraction) {
        return "Combinatorial";
    }
    return "Permute " + format_percent(*fraction) + "%";
}

const ExperimentCell& ExperimentReport::cell(std::size_t modules_a, std::size_t modules_b,
                                             std::optional<double> fraction) const {
    for (const auto& c : cells) {
        if (c.modules_a == modules_a && c.modules_b == modules_b && c.fraction == fraction) {
            return c;
        }
    }
    throw ValidationError("no report cell for " + std::to_string(modules_a) + " vs. " +
                          std::to_string(modules_b));
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json out;
    out["config"] = config.to_json();
    out["rng"] = RngStream::algorithm();
    auto& arr = out["cells"] = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json jc{{"pairing", c.pairing_label()},
                          {"modules_a", c.modules_a},
                          {"modules_b", c.modules_b},
                          {"method", c.method},
                          {"label", c.method_label()},
                          {"permutations", c.permutations},
                          {"mean", c.mean},
                          {"std", c.stddev},
                          {"p_values", c.p_values}};
        jc["fraction"] = c.fraction ? nlohmann::json(*c.fraction) : nlohmann::json(nullptr);
        arr.push_back(std::move(jc));
    }
    return out;
}

std::string ExperimentReport::to_text_table() const {
    std::vector<std::string> headers{""};
    headers.push_back("Combinatorial");
    for (double f : config.permutation_fractions) {
        headers.push_back("Permute " + format_percent(f) + "%");
    }
    std::vector<std::vector<std::string>> rows;
    const std::size_t methods = headers.size() - 1;
    for (std::size_t start = 0; start < cells.size(); start += methods) {
        std::vector<std::string> row{cells[start].pairing_label()};
        for (std::size_t m = 0; m < methods; ++m) {
            const auto& c = cells[start + m];
            row.push_back(format_fixed(c.mean, 3) + " ± " + format_fixed(c.stddev, 3));
        }
        rows.push_back(std::move(row));
    }
    // "±" is two bytes but one column wide.
    auto width_of = [](const std::string& s) {
        return s.size() - (s.find("±") != std::string::npos ? 1 : 0);
    };
    std::vector<std::size_t> widths(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) {
        widths[c] = width_of(headers[c]);
        for (const auto& row : rows) {
            widths[c] = std::max(widths[c], width_of(row[c]));
        }
    }
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c == 0 ? "" : " | ") << row[c]
               << std::string(widths[c] - width_of(row[c]), ' ');
        }
        os << '\n';
    };
    emit(headers);
    std::size_t total = 0;
    for (auto w : widths) {
        total += w;
    }
    os << std::string(total + 3 * (widths.size() - 1), '-') << '\n';
    for (const auto& row : rows) {
        emit(row);
    }
    return os.str();
}

namespace {

struct TrialOutcome {
    double combinatorial = 1.0;
    std::vector<double> permuted;
};

// Stream index layout: pairing (bits 40+), replication (bits 8..39), slot (bits 0..7).
// Slot 0 and 1 generate the two groups, slot 2 + f drives permutation fraction f.
std::uint64_t stream_index(std::size_t pairing, std::size_t replication, std::size_t slot) {
    return (static_cast<std::uint64_t>(pairing) << 40) |
           (static_cast<std::uint64_t>(replication) << 8) | static_cast<std::uint64_t>(slot);
}

void summarize(ExperimentCell& cell) {
    const double count = static_cast<double>(cell.p_values.size());
    double sum = 0.0;
    for (double v : cell.p_values) {
        sum += v;
    }
    cell.mean = sum / count;
    double ss = 0.0;
    for (double v : cell.p_values) {
        ss += (v - cell.mean) * (v - cell.mean);
    }
    cell.stddev = cell.p_values.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
}

}  // namespace

ExperimentReport run_experiment(const SimulationConfig& cfg, const ProgressCallback& progress) {
    cfg.validate();
    if (cfg.replications > (std::size_t{1} << 32) || cfg.permutation_fractions.size() > 250) {
        throw ValidationError("/replications: too many streams requested");
    }
    const std::size_t pairings = cfg.modules_a.size();
    const std::size_t tasks = pairings * cfg.replications;
    std::vector<std::size_t> perm_counts;
    for (double f : cfg.permutation_fractions) {
        perm_counts.push_back(permutations_for_fraction(f, cfg.n));
    }
    const PermutationOptions perm_options{cfg.add_one, cfg.distinct_permutations, false, cfg.tree_mode};

    std::vector<TrialOutcome> outcomes(tasks);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex guard;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks) {
                return;
            }
            {
                std::lock_guard lock(guard);
                if (failure) {
                    return;
                }
            }
            try {
                const std::size_t pairing = t / cfg.replications;
                const std::size_t rep = t % cfg.replications;
                RngStream rng_a(cfg.seed, stream_index(pairing, rep, 0));
                RngStream rng_b(cfg.seed, stream_index(pairing, rep, 1));
                const auto base_a = standard_normal_matrix(cfg.n, cfg.p, rng_a);
                const auto base_b =
                    cfg.shared_base ? base_a : standard_normal_matrix(cfg.n, cfg.p, rng_b);
                const auto a = simulate_modular_data(base_a, cfg.modules_a[pairing], cfg.sigma, rng_a);
                const auto b = simulate_modular_data(base_b, cfg.modules_b[pairing], cfg.sigma, rng_b);
                TrialOutcome out;
                out.combinatorial = run_combinatorial_trial(a, b, cfg.tree_mode);
                for (std::size_t f = 0; f < perm_counts.size(); ++f) {
                    RngStream rng_perm(cfg.seed, stream_index(pairing, rep, 2 + f));
                    out.permuted.push_back(
                        permutation_test(a, b, perm_counts[f], rng_perm, perm_options).p_value);
                }
                outcomes[t] = std::move(out);
                const std::size_t finished = done.fetch_add(1) + 1;
                if (progress) {
                    std::lock_guard lock(guard);
                    progress(finished, tasks);
                }
            } catch (...) {
                std::lock_guard lock(guard);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };

    std::size_t threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(tasks, 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    ExperimentReport report;
    report.config = cfg;
    for (std::size_t pairing = 0; pairing < pairings; ++pairing) {
        ExperimentCell comb{cfg.modules_a[pairing], cfg.modules_b[pairing], "combinatorial",
                            std::nullopt, 0, 0.0, 0.0, {}};
        for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
            comb.p_values.push_back(outcomes[pairing * cfg.replications + rep].combinatorial);
        }
        summarize(comb);
        report.cells.push_back(std::move(comb));
        for (std::size_t f = 0; f < perm_counts.size(); ++f) {
            ExperimentCell perm{cfg.modules_a[pairing], cfg.modules_b[pairing], "permute",
                                cfg.permutation_fractions[f], perm_counts[f], 0.0, 0.0, {}};
            for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
                perm.p_values.push_back(outcomes[pairing * cfg.replications + rep].permuted[f]);
            }
            summarize(perm);
            report.cells.push_back(std::move(perm));
        }
    }
    return report;
}

}  // namespace combinf
