#pragma once

// Exact null distribution of the maximum gap between two step functions
// built from sorted feature values.
//
// Two sorted sequences of length q interleave in C(2q, q) ways; each
// interleaving is a monotone lattice path from (0,0) to (q,q). The maximum
// gap D between the two counting functions equals the largest |u - v| the
// path visits, so P(D >= d) = 1 - A(q,q) / C(2q,q) where A counts the paths
// staying strictly inside the band |u - v| < d.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace combinf {

using BigInt = boost::multiprecision::cpp_int;

/// Sorted feature values f(G_1) < f(G_2) < ... < f(G_q).
///
/// The default factory rejects ties. `nondecreasing` is the tie-tolerant
/// path used for edge weights taken from real data; sequences built that
/// way remember that they contain ties so downstream p-values can carry a
/// warning.
class MonotoneSequence {
public:
    /// Throws ValidationError on empty, non-finite or non-strictly-increasing input.
    static MonotoneSequence strict(std::vector<double> values);
    /// Accepts ties (values[j] <= values[j+1]); still rejects empty,
    /// non-finite or decreasing input.
    static MonotoneSequence nondecreasing(std::vector<double> values);
    /// Sorts first, then behaves like `nondecreasing`.
    static MonotoneSequence from_unsorted(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }
    bool has_ties() const noexcept { return has_ties_; }

private:
    MonotoneSequence(std::vector<double> values, bool has_ties)
        : values_(std::move(values)), has_ties_(has_ties) {}

    std::vector<double> values_;
    bool has_ties_ = false;
};

/// phi(t) = number of breakpoints <= t. Zero left of the first breakpoint,
/// q from the last one on.
class StepFunction {
public:
    explicit StepFunction(const MonotoneSequence& seq);

    std::size_t operator()(double t) const noexcept;
    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::size_t size() const noexcept { return breakpoints_.size(); }

private:
    std::vector<double> breakpoints_;
};

StepFunction build_step_function(const MonotoneSequence& seq);

struct DiscrepancyResult {
    std::size_t d = 0;
    double argmax_location = 0.0;  ///< smallest merged value where the max gap is attained
    std::size_t q = 0;
    /// Set when equal values were absorbed jointly (across the two
    /// sequences, or within one built via the tie-tolerant path). The exact
    /// null assumes continuous data, so p-values computed from such a d are
    /// not exact.
    bool ties_absorbed = false;
};

/// Maximum over t of |phi_A(t) - phi_B(t)|. Throws LengthMismatchError when
/// the sequences differ in length.
DiscrepancyResult discrepancy(const MonotoneSequence& a, const MonotoneSequence& b);

/// Dynamic-programming table A(u,v), 0 <= u,v <= q, for paths confined to
/// |u - v| < d.
class BandCountTable {
public:
    BandCountTable(std::size_t q, std::size_t d, std::vector<BigInt> cells)
        : q_(q), d_(d), cells_(std::move(cells)) {}

    std::size_t q() const noexcept { return q_; }
    std::size_t d() const noexcept { return d_; }
    const BigInt& at(std::size_t u, std::size_t v) const { return cells_.at(u * (q_ + 1) + v); }
    const BigInt& corner() const { return at(q_, q_); }

private:
    std::size_t q_;
    std::size_t d_;
    std::vector<BigInt> cells_;
};

/// Full (q+1)x(q+1) table. Throws ValidationError if q < 1 or d < 1.
BandCountTable count_band_paths(std::size_t q, std::size_t d);

/// A(q,q) alone, keeping only two rows of the table.
BigInt band_path_count(std::size_t q, std::size_t d);

/// Exact C(n,k). Throws ValidationError if k > n.
BigInt binomial(unsigned n, unsigned k);

struct ExactPValue {
    BigInt numerator;    ///< reduced
    BigInt denominator;  ///< reduced, > 0
    double real_value = 0.0;

    /// "numerator/denominator"
    std::string fraction() const;
};

/// P(D_q >= d) under the exchangeable null. d = 0 gives exactly 1, d > q
/// exactly 0. Throws ValidationError if q < 1.
ExactPValue exact_pvalue(std::size_t q, std::size_t d);

/// Largest q accepted by brute_force_pvalue.
inline constexpr std::size_t kBruteForceMaxQ = 12;

/// Enumerates all C(2q,q) interleavings and returns the fraction whose
/// maximum |u - v| reaches d. Independent of the band recursion; used as
/// its oracle. Throws CapacityError if q > kBruteForceMaxQ.
double brute_force_pvalue(std::size_t q, std::size_t d);

/// Nearest double to num/den (round half to even). Requires 0 <= num, den > 0.
double rational_to_double(const BigInt& num, const BigInt& den);

}  // namespace combinf
