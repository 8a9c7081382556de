#include "combinf/connectivity.hpp"

#include "combinf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace combinf {

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() < 2) {
        throw ValidationError("data matrix needs at least 2 observations");
    }
    if (values_.cols() < 2) {
        throw ValidationError("data matrix needs at least 2 nodes");
    }
    for (std::size_t r = 0; r < values_.rows(); ++r) {
        for (std::size_t c = 0; c < values_.cols(); ++c) {
            if (!std::isfinite(values_(r, c))) {
                throw ValidationError("data matrix entry (" + std::to_string(r) + ", " +
                                      std::to_string(c) + ") is not finite");
            }
        }
    }
}

std::vector<std::string> default_labels(std::size_t p) {
    std::vector<std::string> labels;
    labels.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
        labels.push_back("N" + std::to_string(i + 1));
    }
    return labels;
}

ConnectivityMatrix::ConnectivityMatrix(std::vector<std::string> labels, Matrix entries,
                                       double symmetry_tolerance)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
    const std::size_t p = entries_.rows();
    if (entries_.cols() != p) {
        throw DataError("connectivity matrix is not square (" + std::to_string(p) + " x " +
                        std::to_string(entries_.cols()) + ")");
    }
    if (labels_.empty()) {
        labels_ = default_labels(p);
    }
    if (labels_.size() != p) {
        throw DataError("connectivity matrix has " + std::to_string(p) + " nodes but " +
                        std::to_string(labels_.size()) + " labels");
    }
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (!std::isfinite(entries_(i, j))) {
                throw DataError("connectivity entry (" + std::to_string(i + 1) + ", " +
                                std::to_string(j + 1) + ") is not finite");
            }
            if (j > i && std::abs(entries_(i, j) - entries_(j, i)) > symmetry_tolerance) {
                throw DataError("connectivity matrix is not symmetric at (" + std::to_string(i + 1) +
                                ", " + std::to_string(j + 1) + "), 1-based");
            }
        }
    }
}

ConnectivityMatrix pearson_correlation_matrix(const DataMatrix& x,
                                              std::vector<std::string> labels) {
    const std::size_t n = x.observations();
    const std::size_t p = x.nodes();
    if (labels.empty()) {
        labels = default_labels(p);
    }
    // Centered columns stored contiguously, one column per row of `centered`.
    Matrix centered(p, n);
    std::vector<double> norms(p);
    for (std::size_t c = 0; c < p; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            mean += x.values()(r, c);
        }
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double v = x.values()(r, c) - mean;
            centered(c, r) = v;
            ss += v * v;
        }
        if (ss == 0.0) {
            throw DataError("column " + std::to_string(c) + " (" + labels.at(c) +
                            ") has zero variance");
        }
        norms[c] = std::sqrt(ss);
    }
    Matrix corr(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        corr(i, i) = 1.0;
        const auto ci = centered.row(i);
        for (std::size_t j = i + 1; j < p; ++j) {
            const auto cj = centered.row(j);
            const double dot = std::inner_product(ci.begin(), ci.end(), cj.begin(), 0.0);
            const double r = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
            corr(i, j) = r;
            corr(j, i) = r;
        }
    }
    return ConnectivityMatrix(std::move(labels), std::move(corr), 0.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
    std::vector<double> ranks(n);
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && values[order[end]] == values[order[start]]) {
            ++end;
        }
        // positions start..end-1 share the mean of ranks start+1..end
        const double rank = 0.5 * static_cast<double>(start + 1 + end);
        for (std::size_t k = start; k < end; ++k) {
            ranks[order[k]] = rank;
        }
        start = end;
    }
    return ranks;
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double da = a[k] - ma;
        const double db = b[k] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

bool is_constant(std::span<const double> v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

double spearman_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("spearman_correlation: vectors differ in length (" +
                              std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    if (a.size() < 3) {
        throw ValidationError("spearman_correlation: needs at least 3 points");
    }
    if (is_constant(a) || is_constant(b)) {
        throw DataError("spearman_correlation: constant vector");
    }
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    return pearson(ra, rb);
}

TwinCohort::TwinCohort(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.size() < 3) {
        throw ValidationError("twin cohort needs at least 3 pairs (got " +
                              std::to_string(pairs_.size()) + ")");
    }
    const auto& ref = pairs_.front().a;
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        for (const auto* m : {&pairs_[k].a, &pairs_[k].b}) {
            if (m->size() != ref.size()) {
                throw DataError("twin pair " + std::to_string(k) + " has dimension " +
                                std::to_string(m->size()) + ", expected " +
                                std::to_string(ref.size()));
            }
            if (m->labels() != ref.labels()) {
                throw DataError("twin pair " + std::to_string(k) +
                                " has node labels that differ from the first pair");
            }
        }
    }
}

TwinCorrelationResult twin_edgewise_correlation(const TwinCohort& cohort,
                                                TwinCorrelationOptions options) {
    const std::size_t p = cohort.nodes();
    const std::size_t m = cohort.pairs().size();
    Matrix out(p, p, 0.0);
    std::vector<DegenerateEdge> degenerate;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < p; ++i) {
        out(i, i) = 1.0;
        for (std::size_t j = i + 1; j < p; ++j) {
            xs.clear();
            ys.clear();
            for (const auto& pair : cohort.pairs()) {
                xs.push_back(pair.a(i, j));
                ys.push_back(pair.b(i, j));
            }
            if (options.symmetrize) {
                for (std::size_t k = 0; k < m; ++k) {
                    xs.push_back(ys[k]);
                    ys.push_back(xs[k]);
                }
            }
            double r = 0.0;
            if (is_constant(xs) || is_constant(ys)) {
                degenerate.push_back({i, j});
            } else {
                r = spearman_correlation(xs, ys);
            }
            out(i, j) = r;
            out(j, i) = r;
        }
    }
    return {ConnectivityMatrix(cohort.labels(), std::move(out), 0.0), std::move(degenerate)};
}

HeritabilityMap heritability_index(const ConnectivityMatrix& mz, const ConnectivityMatrix& dz,
                                   bool clamp_unit) {
    if (mz.size() != dz.size()) {
        throw DataError("heritability_index: dimension mismatch (" + std::to_string(mz.size()) +
                        " vs " + std::to_string(dz.size()) + ")");
    }
    if (mz.labels() != dz.labels()) {
        throw DataError("heritability_index: node labels differ between MZ and DZ matrices");
    }
    const std::size_t p = mz.size();
    HeritabilityMap map{mz.labels(), Matrix(p, p, 0.0), 0, clamp_unit};
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            double h = 2.0 * (mz(i, j) - dz(i, j));
            if (j > i && h < 0.0) {
                ++map.negative_entries;
            }
            if (clamp_unit) {
                h = std::clamp(h, 0.0, 1.0);
            }
            map.entries(i, j) = h;
        }
    }
    return map;
}

}  // namespace combinf
