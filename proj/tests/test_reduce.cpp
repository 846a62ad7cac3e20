#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "gsft/reduce.hpp"
#include "gsft/smith.hpp"

using namespace gsft;

namespace {

// Orbits recomputed by flooding with the generators only.
std::vector<std::vector<std::size_t>> flood_orbits(const PermutationAction& a) {
    const std::size_t n = a.dim();
    std::vector<std::size_t> label(n, n);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] != n) continue;
        std::vector<std::size_t> orbit{i}, stack{i};
        label[i] = out.size();
        while (!stack.empty()) {
            auto s = stack.back();
            stack.pop_back();
            for (const auto& g : a.group().generators())
                if (label[g[s]] == n) {
                    label[g[s]] = out.size();
                    orbit.push_back(g[s]);
                    stack.push_back(g[s]);
                }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(orbit);
    }
    return out;
}

// Row sums into target orbits (right) or column sums from source orbits (left).
IntMatrix reduced_by_definition(const PermutationAction& a, Side side) {
    auto orbits = flood_orbits(a);
    IntMatrix r(orbits.size());
    for (std::size_t x = 0; x < orbits.size(); ++x)
        for (std::size_t y = 0; y < orbits.size(); ++y) {
            BigInt total = 0;
            if (side == Side::right)
                for (auto k : orbits[y]) total += a.matrix()(orbits[x].front(), k);
            else
                for (auto k : orbits[x]) total += a.matrix()(k, orbits[y].front());
            r.set(x, y, total);
        }
    return r;
}

}  // namespace

TEST(Reduce, ConjugationOnS3) {
    auto r = right_reduce(fixture::s3_conjugation());
    EXPECT_EQ(r.matrix, IntMatrix({{1, 3, 2}, {1, 3, 2}, {1, 3, 2}}));
    EXPECT_EQ(r.orbits, (std::vector<std::vector<std::size_t>>{{0}, {1, 2, 3}, {4, 5}}));
}

TEST(Reduce, ThreeStateSwap) {
    EXPECT_EQ(right_reduce(fixture::three_state_swap()).matrix, IntMatrix({{1, 2}, {1, 1}}));
    EXPECT_EQ(left_reduce(fixture::three_state_swap()).matrix, IntMatrix({{1, 1}, {2, 1}}));
}

TEST(Reduce, CyclicFourAndItsFactor) {
    auto a = fixture::cyclic4();
    auto right = right_reduce(a), left = left_reduce(a);
    EXPECT_EQ(right.matrix, IntMatrix({{1, 2}, {2, 1}}));
    EXPECT_EQ(left.matrix, IntMatrix({{1, 1}, {4, 1}}));
    EXPECT_EQ(bowen_franks(right.matrix).torsion, (std::vector<BigInt>{2, 2}));
    EXPECT_EQ(bowen_franks(left.matrix).torsion, (std::vector<BigInt>{4}));
    EXPECT_EQ(bowen_franks(right.matrix).to_string(), "Z/2 + Z/2");
    EXPECT_EQ(right_reduce(fixture::cyclic4_factor(a)).matrix, IntMatrix({{1, 4}, {1, 1}}));
}

TEST(Reduce, ReducibleSwap) {
    auto a = fixture::reducible_swap();
    EXPECT_EQ(right_reduce(a).matrix, IntMatrix({{1, 1}, {0, 1}}));
    EXPECT_EQ(left_reduce(a).matrix, IntMatrix({{1, 2}, {0, 1}}));
}

TEST(Reduce, SelectorsFactorTheMatrix) {
    for (const auto& a : fixture::all_fixtures()) {
        auto r = right_reduce(a);
        EXPECT_EQ(mat_mul(mat_mul(r.selector_u, a.matrix()), r.selector_v), r.matrix);
        EXPECT_EQ(mat_mul(r.selector_u, r.selector_v), RectMatrix::identity(r.orbits.size()));
        for (const auto& g : a.group().elements()) EXPECT_EQ(mat_mul(permutation_matrix(g), r.selector_v), r.selector_v);
    }
}

TEST(Reduce, MatchesDefinitionOnRandomActions) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 150; ++trial) {
        auto a = gen::random_action(rng, 5, 4);
        EXPECT_EQ(right_reduce(a).matrix, reduced_by_definition(a, Side::right));
        EXPECT_EQ(left_reduce(a).matrix, reduced_by_definition(a, Side::left));
        EXPECT_TRUE(transpose_duality_check(a));
        EXPECT_EQ(left_reduce(a).matrix, right_reduce(transpose_action(a)).matrix.transpose());
    }
}

TEST(Reduce, TrivialGroupIsIdentity) {
    auto a = fixture::make_action(IntMatrix({{1, 1}, {1, 0}}), {});
    EXPECT_EQ(right_reduce(a).matrix, a.matrix());
    EXPECT_EQ(left_reduce(a).matrix, a.matrix());
}

TEST(Reduce, RejectsNonInvariantPartition) {
    IntMatrix m({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    EXPECT_THROW(detail::reduce_by_orbits(m, {{0, 1}, {2}}, Side::right), PreconditionError);
}

TEST(FactorCode, ReductionMapIsRightResolvingAndOnto) {
    std::mt19937 rng(29);
    auto actions = fixture::all_fixtures();
    for (int trial = 0; trial < 40; ++trial) actions.push_back(gen::random_action(rng, 5, 4));
    for (const auto& a : actions) {
        auto eta = build_eta(a);
        EXPECT_TRUE(eta.respects_adjacency());
        EXPECT_TRUE(eta.is_right_resolving());
        EXPECT_TRUE(eta.is_onto_edges());
        EXPECT_EQ(eta.target().matrix(), right_reduce(a).matrix);
    }
}

TEST(FactorCode, StateIdentificationIsNotRightResolving) {
    auto a = fixture::cyclic4();
    auto b = fixture::cyclic4_factor(a);
    auto code = OneBlockCode::from_state_map(a.presentation(), b.presentation(), fixture::cyclic4_factor_map());
    EXPECT_TRUE(code.respects_adjacency());
    EXPECT_TRUE(code.is_onto_edges());
    auto w = code.right_resolving_witness();
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->first.from, w->second.from);
    EXPECT_EQ(code(w->first), code(w->second));
}

TEST(FactorCode, CompositionAndPaths) {
    auto a = fixture::three_state_swap();
    auto id = OneBlockCode::identity(a.presentation());
    auto eta = build_eta(a);
    EXPECT_TRUE(id.then(eta) == eta);
    Path p{{{0, 1, 0}, {1, 0, 0}}};
    EXPECT_EQ(id.apply(p).edges, p.edges);
    EXPECT_EQ(eta.apply(p).states(), (std::vector<std::uint32_t>{0, 1, 0}));
}
