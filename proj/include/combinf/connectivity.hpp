#pragma once

// Correlation-based connectivity matrices, edge-wise twin correlations and
// Falconer's heritability index.

#include "combinf/matrix.hpp"

#include <span>
#include <string>
#include <vector>

namespace combinf {

/// n observations (rows) by p nodes (columns), all entries finite.
class DataMatrix {
public:
    /// Throws ValidationError if n < 2, p < 2, or any entry is non-finite.
    explicit DataMatrix(Matrix values);

    std::size_t observations() const noexcept { return values_.rows(); }
    std::size_t nodes() const noexcept { return values_.cols(); }
    const Matrix& values() const noexcept { return values_; }

private:
    Matrix values_;
};

/// "N1", "N2", ... used when a matrix file carries no header.
std::vector<std::string> default_labels(std::size_t p);

inline constexpr double kDefaultSymmetryTolerance = 1e-9;

/// Labelled symmetric p x p matrix.
class ConnectivityMatrix {
public:
    /// Throws DataError if the matrix is not square, has non-finite entries,
    /// is asymmetric beyond `symmetry_tolerance` (offending indices are
    /// named), or the label count differs from p.
    ConnectivityMatrix(std::vector<std::string> labels, Matrix entries,
                       double symmetry_tolerance = kDefaultSymmetryTolerance);

    std::size_t size() const noexcept { return entries_.rows(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const Matrix& entries() const noexcept { return entries_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

private:
    std::vector<std::string> labels_;
    Matrix entries_;
};

/// Sample Pearson correlation between the columns of `x`. The result is
/// exactly symmetric with a unit diagonal; entries are clamped to [-1, 1].
/// Throws DataError naming the first zero-variance column.
ConnectivityMatrix pearson_correlation_matrix(const DataMatrix& x,
                                              std::vector<std::string> labels = {});

/// Midranks (1-based, ties share the average rank).
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of the midranks. Throws ValidationError on length
/// mismatch or fewer than 3 points, DataError on a constant vector.
double spearman_correlation(std::span<const double> a, std::span<const double> b);

/// MZ or DZ group: one (twin A, twin B) connectivity pair per family.
class TwinCohort {
public:
    struct Pair {
        ConnectivityMatrix a;
        ConnectivityMatrix b;
    };

    /// Throws ValidationError for fewer than 3 pairs and DataError when any
    /// matrix disagrees with the first in labels or dimension.
    explicit TwinCohort(std::vector<Pair> pairs);

    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    const std::vector<std::string>& labels() const noexcept { return pairs_.front().a.labels(); }
    std::size_t nodes() const noexcept { return pairs_.front().a.size(); }

private:
    std::vector<Pair> pairs_;
};

struct DegenerateEdge {
    std::size_t i = 0;
    std::size_t j = 0;
};

struct TwinCorrelationResult {
    ConnectivityMatrix correlation;
    /// Edges whose values were constant across the cohort; their entries are 0.
    std::vector<DegenerateEdge> degenerate_edges;
};

struct TwinCorrelationOptions {
    /// Double-entry estimator: correlates (a_1..a_m, b_1..b_m) against
    /// (b_1..b_m, a_1..a_m), which makes the result independent of which
    /// twin is listed first within each pair.
    bool symmetrize = false;
};

/// Spearman correlation, for every edge (i,j), between twin-A and twin-B
/// values across the cohort. Diagonal is 1.
TwinCorrelationResult twin_edgewise_correlation(const TwinCohort& cohort,
                                                TwinCorrelationOptions options = {});

struct HeritabilityMap {
    std::vector<std::string> labels;
    Matrix entries;
    std::size_t negative_entries = 0;  ///< off-diagonal entries below 0 (upper triangle)
    bool clamped = false;
};

/// 2 * (mz - dz) per entry. With `clamp_unit` the values are clipped to
/// [0, 1] for display; raw values otherwise. Throws DataError on a label or
/// dimension mismatch.
HeritabilityMap heritability_index(const ConnectivityMatrix& mz, const ConnectivityMatrix& dz,
                                   bool clamp_unit = false);

}  // namespace combinf
