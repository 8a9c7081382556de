#include "doctest.h"

#include "combinf/errors.hpp"
#include "combinf/exact_inference.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace combinf;

TEST_CASE("MonotoneSequence validation") {
    CHECK_THROWS_AS(MonotoneSequence::strict({}), ValidationError);
    CHECK_THROWS_AS(MonotoneSequence::strict({1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(MonotoneSequence::strict({2.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(MonotoneSequence::strict({1.0, NAN}), ValidationError);
    CHECK_THROWS_AS(MonotoneSequence::nondecreasing({2.0, 1.0}), ValidationError);

    const auto tied = MonotoneSequence::nondecreasing({1.0, 1.0, 2.0});
    CHECK(tied.has_ties());
    CHECK_FALSE(MonotoneSequence::strict({1.0, 2.0}).has_ties());

    const auto sorted = MonotoneSequence::from_unsorted({3.0, 1.0, 2.0});
    CHECK(sorted[0] == 1.0);
    CHECK(sorted[2] == 3.0);
}

TEST_CASE("step function counts breakpoints at or below t") {
    const auto single = build_step_function(MonotoneSequence::strict({5.0}));
    CHECK(single(4.9) == 0);
    CHECK(single(5.0) == 1);
    CHECK(single(6.0) == 1);

    const auto phi = build_step_function(MonotoneSequence::strict({1.0, 2.0, 3.0}));
    CHECK(phi(2.5) == 2);
    CHECK(phi(0.0) == 0);
    CHECK(phi(100.0) == 3);

    // phi(x_j) = j for every breakpoint
    const std::vector<double> xs{-3.5, -1.0, 0.25, 7.0, 12.5};
    const auto psi = build_step_function(MonotoneSequence::strict(xs));
    for (std::size_t j = 0; j < xs.size(); ++j) {
        CHECK(psi(xs[j]) == j + 1);
    }
}

TEST_CASE("discrepancy examples") {
    auto seq = [](std::vector<double> v) { return MonotoneSequence::strict(std::move(v)); };

    SUBCASE("separated supports") {
        const auto r = discrepancy(seq({1, 2, 3}), seq({4, 5, 6}));
        CHECK(r.d == 3);
        CHECK(r.argmax_location == 3.0);
        CHECK(r.q == 3);
        CHECK_FALSE(r.ties_absorbed);
    }
    SUBCASE("interleaved") {
        CHECK(discrepancy(seq({1, 3, 5}), seq({2, 4, 6})).d == 1);
    }
    SUBCASE("identical sequences absorb ties jointly") {
        const auto r = discrepancy(seq({1, 2, 3}), seq({1, 2, 3}));
        CHECK(r.d == 0);
        CHECK(r.ties_absorbed);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(discrepancy(seq({1, 2}), seq({1, 2, 3})), LengthMismatchError);
    }
    SUBCASE("argmax evaluates to d") {
        const auto a = seq({0.1, 0.2, 0.7, 0.8});
        const auto b = seq({0.15, 0.5, 0.55, 0.6});
        const auto r = discrepancy(a, b);
        const auto phi = build_step_function(a);
        const auto psi = build_step_function(b);
        const long gap = static_cast<long>(phi(r.argmax_location)) -
                         static_cast<long>(psi(r.argmax_location));
        CHECK(static_cast<std::size_t>(std::labs(gap)) == r.d);
        CHECK(r.d == 2);
        CHECK(r.argmax_location == 0.6);
    }
}

TEST_CASE("band path table") {
    SUBCASE("q=3, d=2 reaches 8") {
        const auto t = count_band_paths(3, 2);
        CHECK(t.corner() == 8);
        CHECK(t.at(0, 0) == 0);
        CHECK(t.at(1, 0) == 1);
        CHECK(t.at(0, 1) == 1);
        CHECK(t.at(2, 0) == 0);  // out of band
        CHECK(t.at(3, 2) == 4);
        CHECK(t.at(2, 3) == 4);
    }
    SUBCASE("band wider than the grid imposes nothing") {
        CHECK(count_band_paths(2, 3).corner() == 6);
        CHECK(count_band_paths(2, 3).corner() == binomial(4, 2));
    }
    SUBCASE("d=1 admits no path") { CHECK(count_band_paths(2, 1).corner() == 0); }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(count_band_paths(0, 1), ValidationError);
        CHECK_THROWS_AS(count_band_paths(3, 0), ValidationError);
    }
    SUBCASE("in-band recursion and bounds hold everywhere") {
        for (std::size_t q = 1; q <= 9; ++q) {
            for (std::size_t d = 1; d <= q + 1; ++d) {
                const auto t = count_band_paths(q, d);
                CHECK(t.corner() <= binomial(2 * q, q));
                CHECK(band_path_count(q, d) == t.corner());
                for (std::size_t u = 1; u <= q; ++u) {
                    for (std::size_t v = 1; v <= q; ++v) {
                        const std::size_t gap = u > v ? u - v : v - u;
                        if (gap < d) {
                            CHECK(t.at(u, v) == t.at(u - 1, v) + t.at(u, v - 1));
                        } else {
                            CHECK(t.at(u, v) == 0);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("binomial") {
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(9, 0) == 1);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(20, 10) == 184756);
    CHECK(binomial(40, 20) == BigInt("137846528820"));
    CHECK(binomial(230, 115) ==
          BigInt("90678241309059123546891915017615620549691253503446529088945065877600"));
    CHECK_THROWS_AS(binomial(3, 4), ValidationError);
}

TEST_CASE("exact p-value examples") {
    SUBCASE("q=3, d=2") {
        const auto p = exact_pvalue(3, 2);
        CHECK(p.numerator == 3);
        CHECK(p.denominator == 5);
        CHECK(p.real_value == 0.6);
        CHECK(p.fraction() == "3/5");
    }
    SUBCASE("q=3, d=3 equals the brute-force 2/20") {
        const auto p = exact_pvalue(3, 3);
        CHECK(p.fraction() == "1/10");
        CHECK(p.real_value == 0.1);
    }
    SUBCASE("q=115, d=46") {
        // Frozen from an independent rational computation of the band recursion.
        const auto p = exact_pvalue(115, 46);
        CHECK(p.numerator == BigInt("561902035606423984445434283300966327781427"));
        CHECK(p.denominator == BigInt("42652074502057195351676320464988199184551081952664"));
        CHECK(p.real_value == doctest::Approx(1.3174084547266799e-08).epsilon(1e-15));
    }
    SUBCASE("conventions at d=0 and d>q") {
        CHECK(exact_pvalue(5, 0).real_value == 1.0);
        CHECK(exact_pvalue(5, 0).fraction() == "1/1");
        CHECK(exact_pvalue(5, 6).real_value == 0.0);
        CHECK(exact_pvalue(5, 60).fraction() == "0/1");
    }
    SUBCASE("q must be positive") { CHECK_THROWS_AS(exact_pvalue(0, 1), ValidationError); }
}

TEST_CASE("brute-force oracle") {
    CHECK(brute_force_pvalue(3, 2) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(brute_force_pvalue(3, 3) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(brute_force_pvalue(1, 1) == 1.0);
    CHECK(brute_force_pvalue(4, 5) == 0.0);
    CHECK(brute_force_pvalue(4, 0) == 1.0);
    CHECK_THROWS_AS(brute_force_pvalue(kBruteForceMaxQ + 1, 2), CapacityError);
}

TEST_CASE("exact p-value agrees with enumeration") {
    for (std::size_t q = 1; q <= 9; ++q) {
        for (std::size_t d = 0; d <= q + 1; ++d) {
            CAPTURE(q);
            CAPTURE(d);
            CHECK(std::abs(exact_pvalue(q, d).real_value - brute_force_pvalue(q, d)) <= 1e-12);
        }
    }
}

TEST_CASE("exact p-value laws") {
    for (std::size_t q = 1; q <= 60; ++q) {
        CHECK(exact_pvalue(q, 1).real_value == 1.0);
        CHECK(exact_pvalue(q, q + 1).real_value == 0.0);
        double previous = 1.0;
        for (std::size_t d = 1; d <= q; ++d) {
            const auto p = exact_pvalue(q, d);
            CHECK(p.real_value <= previous);
            CHECK(p.numerator > 0);
            CHECK(p.numerator <= p.denominator);
            previous = p.real_value;
        }
    }
}

TEST_CASE("rational to double rounds to nearest") {
    CHECK(rational_to_double(1, 3) == 1.0 / 3.0);
    CHECK(rational_to_double(2, 3) == 2.0 / 3.0);
    CHECK(rational_to_double(1, 10) == 0.1);
    CHECK(rational_to_double(7, 1) == 7.0);
    CHECK(rational_to_double(0, 5) == 0.0);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t a = rng() >> 12;  // 52-bit numerators are exact doubles
        const std::uint64_t b = (rng() >> 12) | 1;
        CHECK(rational_to_double(a, b) == static_cast<double>(a) / static_cast<double>(b));
    }
}

TEST_CASE("discrepancy properties on random sequences") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> len(1, 30);
    std::normal_distribution<double> normal;
    auto draw = [&](std::size_t q) {
        std::vector<double> v(q);
        for (auto& x : v) {
            x = normal(rng);
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t q = static_cast<std::size_t>(len(rng));
        auto va = draw(q);
        auto vb = draw(q);
        if (va.size() != q || vb.size() != q) {
            continue;
        }
        const auto a = MonotoneSequence::strict(va);
        const auto b = MonotoneSequence::strict(vb);
        const auto ab = discrepancy(a, b);
        CHECK(ab.d == discrepancy(b, a).d);
        CHECK(ab.d <= q);

        // brute force over a dense grid of thresholds including every value
        const auto phi = build_step_function(a);
        const auto psi = build_step_function(b);
        std::size_t best = 0;
        for (double t : va) {
            best = std::max<std::size_t>(best, static_cast<std::size_t>(std::labs(
                                                   static_cast<long>(phi(t)) - static_cast<long>(psi(t)))));
        }
        for (double t : vb) {
            best = std::max<std::size_t>(best, static_cast<std::size_t>(std::labs(
                                                   static_cast<long>(phi(t)) - static_cast<long>(psi(t)))));
        }
        CHECK(ab.d == best);
    }
}
