#include "combinf/exact_inference.hpp"

#include "combinf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace combinf {

namespace {

void check_finite_nonempty(const std::vector<double>& values) {
    if (values.empty()) {
        throw ValidationError("monotone sequence must contain at least one value");
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j])) {
            throw ValidationError("monotone sequence value at index " + std::to_string(j) +
                                  " is not finite");
        }
    }
}

}  // namespace

MonotoneSequence MonotoneSequence::strict(std::vector<double> values) {
    check_finite_nonempty(values);
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        if (!(values[j] < values[j + 1])) {
            throw ValidationError("monotone sequence is not strictly increasing at index " +
                                  std::to_string(j + 1));
        }
    }
    return MonotoneSequence(std::move(values), false);
}

MonotoneSequence MonotoneSequence::nondecreasing(std::vector<double> values) {
    check_finite_nonempty(values);
    bool ties = false;
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        if (values[j] > values[j + 1]) {
            throw ValidationError("monotone sequence decreases at index " + std::to_string(j + 1));
        }
        ties = ties || values[j] == values[j + 1];
    }
    return MonotoneSequence(std::move(values), ties);
}

MonotoneSequence MonotoneSequence::from_unsorted(std::vector<double> values) {
    check_finite_nonempty(values);
    std::sort(values.begin(), values.end());
    return nondecreasing(std::move(values));
}

StepFunction::StepFunction(const MonotoneSequence& seq)
    : breakpoints_(seq.values().begin(), seq.values().end()) {}

std::size_t StepFunction::operator()(double t) const noexcept {
    return static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) - breakpoints_.begin());
}

StepFunction build_step_function(const MonotoneSequence& seq) { return StepFunction(seq); }

DiscrepancyResult discrepancy(const MonotoneSequence& a, const MonotoneSequence& b) {
    if (a.size() != b.size()) {
        throw LengthMismatchError("discrepancy needs sequences of equal length (got " +
                                  std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                                  ")");
    }
    const std::size_t q = a.size();
    DiscrepancyResult result;
    result.q = q;
    result.ties_absorbed = a.has_ties() || b.has_ties();
    result.argmax_location = std::min(a[0], b[0]);

    // Walk the merged values in order; every element equal to the current
    // value is absorbed before the gap is read, since phi counts values <= t.
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < q || j < q) {
        double t;
        if (i == q) {
            t = b[j];
        } else if (j == q) {
            t = a[i];
        } else {
            t = std::min(a[i], b[j]);
        }
        bool from_a = false;
        bool from_b = false;
        while (i < q && a[i] == t) {
            ++i;
            from_a = true;
        }
        while (j < q && b[j] == t) {
            ++j;
            from_b = true;
        }
        if (from_a && from_b) {
            result.ties_absorbed = true;
        }
        const std::size_t gap = i > j ? i - j : j - i;
        if (gap > result.d) {
            result.d = gap;
            result.argmax_location = t;
        }
    }
    return result;
}

BandCountTable count_band_paths(std::size_t q, std::size_t d) {
    if (q < 1) {
        throw ValidationError("count_band_paths: q must be >= 1");
    }
    if (d < 1) {
        throw ValidationError("count_band_paths: d must be >= 1");
    }
    const std::size_t side = q + 1;
    std::vector<BigInt> cells(side * side);  // zero-initialised; out-of-band cells stay 0
    auto in_band = [d](std::size_t u, std::size_t v) { return (u > v ? u - v : v - u) < d; };
    for (std::size_t u = 0; u <= q; ++u) {
        for (std::size_t v = 0; v <= q; ++v) {
            if ((u == 0 && v == 0) || !in_band(u, v)) {
                continue;
            }
            BigInt& cell = cells[u * side + v];
            if (u == 0 || v == 0) {
                cell = 1;
            } else {
                cell = cells[(u - 1) * side + v] + cells[u * side + (v - 1)];
            }
        }
    }
    return BandCountTable(q, d, std::move(cells));
}

BigInt band_path_count(std::size_t q, std::size_t d) {
    if (q < 1) {
        throw ValidationError("band_path_count: q must be >= 1");
    }
    if (d < 1) {
        throw ValidationError("band_path_count: d must be >= 1");
    }
    // Row u only reads rows u and u-1. Row 0 is 0 at v = 0, then 1 while in band.
    std::vector<BigInt> prev(q + 1);
    std::vector<BigInt> curr(q + 1);
    for (std::size_t v = 1; v <= q && v < d; ++v) {
        prev[v] = 1;
    }
    for (std::size_t u = 1; u <= q; ++u) {
        for (std::size_t v = 0; v <= q; ++v) {
            const std::size_t gap = u > v ? u - v : v - u;
            if (gap >= d) {
                curr[v] = 0;
            } else if (v == 0) {
                curr[v] = 1;
            } else {
                curr[v] = prev[v] + curr[v - 1];
            }
        }
        std::swap(prev, curr);
    }
    return prev[q];
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) {
        throw ValidationError("binomial: k (" + std::to_string(k) + ") exceeds n (" +
                              std::to_string(n) + ")");
    }
    k = std::min(k, n - k);
    BigInt result = 1;
    // After step i the running value is C(n-k+i, i), so each division is exact.
    for (unsigned i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

std::string ExactPValue::fraction() const {
    return numerator.str() + "/" + denominator.str();
}

double rational_to_double(const BigInt& num, const BigInt& den) {
    if (den <= 0 || num < 0) {
        throw ValidationError("rational_to_double: requires num >= 0 and den > 0");
    }
    if (num == 0) {
        return 0.0;
    }
    // Scale so the integer quotient has exactly 53 significant bits, then
    // round on the remainder.
    const long num_bits = static_cast<long>(msb(num));
    const long den_bits = static_cast<long>(msb(den));
    long shift = 52 - (num_bits - den_bits);
    auto quotient_for = [&](long s, BigInt& rem) {
        BigInt scaled_num = num;
        BigInt scaled_den = den;
        if (s >= 0) {
            scaled_num <<= static_cast<unsigned>(s);
        } else {
            scaled_den <<= static_cast<unsigned>(-s);
        }
        BigInt quot;
        divide_qr(scaled_num, scaled_den, quot, rem);
        return std::pair{quot, scaled_den};
    };
    BigInt rem;
    auto [quot, scaled_den] = quotient_for(shift, rem);
    if (msb(quot) < 52) {
        ++shift;
        std::tie(quot, scaled_den) = quotient_for(shift, rem);
    }
    const BigInt twice_rem = rem * 2;
    if (twice_rem > scaled_den || (twice_rem == scaled_den && bit_test(quot, 0))) {
        ++quot;
    }
    const auto mantissa = quot.convert_to<std::uint64_t>();
    return std::ldexp(static_cast<double>(mantissa), static_cast<int>(-shift));
}

ExactPValue exact_pvalue(std::size_t q, std::size_t d) {
    if (q < 1) {
        throw ValidationError("exact_pvalue: q must be >= 1");
    }
    ExactPValue p;
    if (d == 0) {
        p.numerator = 1;
        p.denominator = 1;
        p.real_value = 1.0;
        return p;
    }
    if (d > q) {
        p.numerator = 0;
        p.denominator = 1;
        p.real_value = 0.0;
        return p;
    }
    const BigInt total = binomial(static_cast<unsigned>(2 * q), static_cast<unsigned>(q));
    const BigInt inside = band_path_count(q, d);
    BigInt num = total - inside;
    BigInt den = total;
    const BigInt g = gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    p.real_value = rational_to_double(num, den);
    p.numerator = std::move(num);
    p.denominator = std::move(den);
    return p;
}

double brute_force_pvalue(std::size_t q, std::size_t d) {
    if (q < 1) {
        throw ValidationError("brute_force_pvalue: q must be >= 1");
    }
    if (q > kBruteForceMaxQ) {
        throw CapacityError("brute_force_pvalue: q = " + std::to_string(q) +
                            " exceeds the enumeration bound " + std::to_string(kBruteForceMaxQ));
    }
    const unsigned steps = static_cast<unsigned>(2 * q);
    // Each 2q-bit mask with q set bits is one interleaving: bit set = step in
    // the first sequence. Gosper's hack visits them in increasing order.
    std::uint64_t mask = (std::uint64_t{1} << q) - 1;
    const std::uint64_t limit = std::uint64_t{1} << steps;
    std::uint64_t total = 0;
    std::uint64_t reached = 0;
    while (mask < limit) {
        long pos = 0;
        std::size_t widest = 0;
        for (unsigned s = 0; s < steps; ++s) {
            pos += (mask >> s) & 1u ? 1 : -1;
            widest = std::max<std::size_t>(widest, static_cast<std::size_t>(std::labs(pos)));
        }
        ++total;
        if (widest >= d) {
            ++reached;
        }
        const std::uint64_t low = mask & (~mask + 1);
        const std::uint64_t ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
    return static_cast<double>(reached) / static_cast<double>(total);
}

}  // namespace combinf
