#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "gsft/quotient.hpp"
#include "oracles.hpp"

using namespace gsft;

namespace {

std::vector<BigInt> traces(const IntMatrix& m, std::size_t count) {
    std::vector<BigInt> out;
    for (std::size_t n = 1; n <= count; ++n) out.push_back(trace_of_power(m, n));
    return out;
}

// Quotient points fixed by sigma^n, found among the points of period n * exponent.
std::optional<BigInt> quotient_count_by_long_cycles(const PermutationAction& a, std::size_t n) {
    const std::size_t len = n * a.group().exponent();
    if (trace_of_power(a.matrix(), len) > 20000) return std::nullopt;
    std::set<std::vector<Edge>> orbits;
    for (const auto& c : enumerate_cycles(a.presentation(), len, 20000)) {
        std::vector<Edge> shifted(c.edges.begin() + static_cast<std::ptrdiff_t>(n), c.edges.end());
        shifted.insert(shifted.end(), c.edges.begin(), c.edges.begin() + static_cast<std::ptrdiff_t>(n));
        bool returns = false;
        std::vector<Edge> best = c.edges;
        for (std::size_t g = 0; g < a.group().order(); ++g) {
            std::vector<Edge> moved;
            for (const auto& e : c.edges) moved.push_back(a.act(g, e));
            if (moved == shifted) returns = true;
            best = std::min(best, moved);
        }
        // points are compared as state sequences; a 0-1 matrix has one copy per edge
        if (returns) orbits.insert(best);
    }
    return BigInt(orbits.size());
}

std::vector<PermutationAction> random_actions(unsigned seed, int count, bool irreducible) {
    std::mt19937 rng(seed);
    std::vector<PermutationAction> out;
    for (int k = 0; k < count; ++k) out.push_back(gen::random_action(rng, 5, 4, irreducible));
    return out;
}

}  // namespace

TEST(Burnside, CyclicFourCounts) {
    auto r = burnside_counts(fixture::cyclic4(), 8);
    EXPECT_EQ(r.group_order, 4u);
    EXPECT_EQ(r.counts, (std::vector<BigInt>{2, 4, 8, 22, 62, 184, 548, 1642}));
    EXPECT_EQ(r.sums[0], 8);
    EXPECT_TRUE(recurrence_annihilates(r.recurrence, r.sums));
}

TEST(Burnside, AgreesWithBruteForce) {
    auto actions = fixture::all_fixtures();
    for (auto& a : random_actions(41, 60, false)) actions.push_back(std::move(a));
    for (const auto& a : actions) {
        auto r = burnside_counts(a, 6);
        EXPECT_EQ(r.counts, brute_orbit_counts(a, 6)) << a.matrix();
    }
}

TEST(Burnside, SumsDivisibleAndAnnihilated) {
    auto actions = fixture::all_fixtures();
    for (auto& a : random_actions(43, 40, false)) actions.push_back(std::move(a));
    for (const auto& a : actions) {
        auto r = burnside_counts(a, 12);
        for (const auto& s : r.sums) EXPECT_EQ(s % BigInt(r.group_order), 0);
        EXPECT_TRUE(recurrence_annihilates(r.recurrence, r.sums));
        // through degree + 6 terms
        auto longer = burnside_counts(a, static_cast<std::size_t>(r.recurrence.degree()) + 6);
        EXPECT_TRUE(recurrence_annihilates(longer.recurrence, longer.sums));
        EXPECT_EQ(longer.recurrence, r.recurrence);
    }
}

TEST(Burnside, RecurrenceDetectsTampering) {
    auto r = burnside_counts(fixture::cyclic4(), 12);
    auto sums = r.sums;
    sums.back() += 4;
    EXPECT_FALSE(recurrence_annihilates(r.recurrence, sums));
    EXPECT_THROW(burnside_counts(fixture::cyclic4(), 0), InputError);
}

TEST(QuotientCounts, EqualReducedTraces) {
    auto actions = fixture::all_fixtures();
    for (auto& a : random_actions(47, 50, false)) actions.push_back(std::move(a));
    for (const auto& a : actions) {
        auto counts = quotient_period_counts(a, 6, 1000000);
        EXPECT_EQ(counts, traces(left_reduce(a).matrix, 6)) << a.matrix();
        EXPECT_EQ(counts, traces(right_reduce(a).matrix, 6)) << a.matrix();
    }
}

TEST(QuotientCounts, AgreeWithLongCycleEnumeration) {
    auto actions = fixture::all_fixtures();
    for (auto& a : random_actions(53, 30, false)) actions.push_back(std::move(a));
    int compared = 0;
    for (const auto& a : actions) {
        auto counts = quotient_period_counts(a, 4);
        for (std::size_t n = 1; n <= 4; ++n)
            if (auto expected = quotient_count_by_long_cycles(a, n)) {
                EXPECT_EQ(counts[n - 1], *expected) << a.matrix() << " n = " << n;
                ++compared;
            }
    }
    EXPECT_GT(compared, 50);
}

TEST(QuotientCounts, CapIsEnforced) {
    EXPECT_THROW(quotient_period_counts(fixture::cyclic4(), 6, 50), CapExceeded);
}

TEST(Classify, CyclicFourIsNonexpansive) {
    auto a = fixture::cyclic4();
    auto c = classify_quotient(a);
    EXPECT_EQ(c.verdict, Verdict::nonexpansive);
    ASSERT_TRUE(c.element.has_value());
    EXPECT_EQ(a.group().element(*c.element), parse_cycles("(3 5)(4 6)", 6));
    EXPECT_EQ(c.cycle.states(), (std::vector<std::uint32_t>{0}));
    EXPECT_STREQ(to_string(c.verdict), "nonexpansive");
    EXPECT_THROW(constant_to_one_check(a), PreconditionError);
}

TEST(Classify, SwappedFullTwoShiftIsConstantToOne) {
    auto a = fixture::full_two_shift_swap();
    auto c = classify_quotient(a);
    EXPECT_EQ(c.verdict, Verdict::constant_to_one);
    EXPECT_FALSE(c.element.has_value());
    EXPECT_EQ(right_reduce(a).matrix, IntMatrix({{2}}));
    EXPECT_EQ(left_reduce(a).matrix, IntMatrix({{2}}));
    EXPECT_TRUE(constant_to_one_check(a));
}

TEST(Classify, NeedsIrreducible) {
    EXPECT_THROW(classify_quotient(fixture::reducible_swap()), PreconditionError);
}

TEST(Classify, MatchesStabilizerScan) {
    auto actions = fixture::irreducible_fixtures();
    for (auto& a : random_actions(59, 60, true)) actions.push_back(std::move(a));
    int constant = 0, nonexpansive = 0;
    for (const auto& a : actions) {
        auto c = classify_quotient(a);
        EXPECT_EQ(c.verdict == Verdict::constant_to_one, stabilizer_scan(a, 8)) << a.matrix();
        (c.verdict == Verdict::constant_to_one ? constant : nonexpansive)++;
        if (c.verdict == Verdict::constant_to_one) {
            EXPECT_TRUE(constant_to_one_check(a, 6));
        }
    }
    EXPECT_GT(constant, 0);
    EXPECT_GT(nonexpansive, 0);
}

TEST(Witness, BlocksAgreeAndOrbitsDiffer) {
    auto actions = fixture::irreducible_fixtures();
    for (auto& a : random_actions(61, 60, true)) actions.push_back(std::move(a));
    int witnessed = 0;
    for (const auto& a : actions) {
        auto c = classify_quotient(a);
        if (c.verdict != Verdict::nonexpansive) continue;
        for (std::size_t m = 1; m <= 3; ++m) {
            auto w = nonexpansive_witness(a, c, m);
            const auto& x = w.x_window;
            EXPECT_TRUE(oracle::windows_witness_nonexpansive(a, w.element, 2 * m + 1, x, w.y_window));
            // u repeated 2m+1 times sits at the recorded offset
            for (std::size_t r = 0; r < (2 * m + 1) * w.u.size(); ++r) EXPECT_EQ(x[w.u_offset + r], w.u[r % w.u.size()]);
            ++witnessed;
        }
    }
    EXPECT_GT(witnessed, 10);
}

TEST(Witness, RefusedForConstantToOne) {
    auto a = fixture::full_two_shift_swap();
    EXPECT_THROW(nonexpansive_witness(a, classify_quotient(a), 1), PreconditionError);
}
