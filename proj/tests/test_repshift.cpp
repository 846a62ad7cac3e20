#include <gtest/gtest.h>

#include <map>
#include <set>

#include "gsft/group_table.hpp"
#include "gsft/repshift.hpp"
#include "oracles.hpp"

using namespace gsft;

namespace {

using oracle::Tuple;

std::vector<BigInt> traces(const IntMatrix& m, std::size_t count) {
    std::vector<BigInt> out;
    for (std::size_t n = 1; n <= count; ++n) out.push_back(trace_of_power(m, n));
    return out;
}

const std::map<std::string, std::vector<std::string>> monodromies{{"trefoil", {"b", "Ab"}}, {"figure8", {"aba", "ba"}}};

}  // namespace

TEST(GroupTable, Builtins) {
    EXPECT_EQ(FiniteGroupTable::builtin("Z5").order(), 5u);
    EXPECT_EQ(FiniteGroupTable::builtin("S3").order(), 6u);
    EXPECT_EQ(FiniteGroupTable::builtin("S4").order(), 24u);
    EXPECT_EQ(FiniteGroupTable::builtin("D4").order(), 8u);
    EXPECT_EQ(FiniteGroupTable::builtin("D4").center().size(), 2u);
    EXPECT_EQ(FiniteGroupTable::builtin("D3").center().size(), 1u);
    auto q8 = FiniteGroupTable::builtin("Q8");
    EXPECT_EQ(q8.order(), 8u);
    EXPECT_EQ(q8.center(), (std::vector<std::size_t>{0, 1}));
    // i j = k, i^2 = -1
    EXPECT_EQ(q8.multiply(q8.index_of("i"), q8.index_of("j")), q8.index_of("k"));
    EXPECT_EQ(q8.multiply(q8.index_of("i"), q8.index_of("i")), q8.index_of("-1"));
    EXPECT_EQ(q8.multiply(q8.index_of("j"), q8.index_of("i")), q8.index_of("-k"));
    EXPECT_THROW(FiniteGroupTable::builtin("A5"), InputError);
    EXPECT_THROW(FiniteGroupTable::builtin("S8", 5040), CapExceeded);
}

TEST(GroupTable, RejectsBadTables) {
    EXPECT_THROW(FiniteGroupTable({"e", "x"}, {{0, 1}, {1, 1}}), InputError);
    EXPECT_THROW(FiniteGroupTable({"e", "x"}, {{0, 1}}), InputError);
    EXPECT_THROW(FiniteGroupTable({"e", "e"}, {{0, 1}, {1, 0}}), InputError);
    EXPECT_THROW(FiniteGroupTable({"x", "e"}, {{1, 0}, {0, 1}}), InputError);
    // a loop that is not associative: every non-identity square is e, products cycle
    EXPECT_THROW(FiniteGroupTable({"e", "a", "b", "c", "d"},
                                  {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
                 InputError);
    EXPECT_NO_THROW(FiniteGroupTable({"e", "x"}, {{0, 1}, {1, 0}}));
}

TEST(GroupWord, ParseAndPrint) {
    auto w = GroupWord::parse("aBa");
    ASSERT_EQ(w.letters.size(), 3u);
    EXPECT_EQ(w.letters[1].generator, 1u);
    EXPECT_EQ(w.letters[1].sign, -1);
    EXPECT_EQ(w.to_string(), "aBa");
    EXPECT_EQ(w.max_generator(), 2u);
    EXPECT_TRUE(GroupWord::parse("1").letters.empty());
    EXPECT_EQ(GroupWord::parse("").to_string(), "1");
    EXPECT_THROW(GroupWord::parse("a2"), InputError);
}

TEST(Homs, CountsWithRelators) {
    auto s3 = FiniteGroupTable::builtin("S3");
    EXPECT_EQ(enumerate_homs(2, {}, s3).size(), 36u);
    EXPECT_EQ(enumerate_homs(1, {GroupWord::parse("aaa")}, s3).size(), 3u);
    EXPECT_EQ(enumerate_homs(2, {GroupWord::parse("abAB")}, s3).size(), 18u);
    EXPECT_EQ(enumerate_homs(0, {}, s3).size(), 1u);
    EXPECT_THROW(enumerate_homs(3, {}, s3, 100), CapExceeded);
    EXPECT_THROW(enumerate_homs(1, {GroupWord::parse("b")}, s3), InputError);
}

TEST(Presets, AlexanderSelfChecks) {
    EXPECT_EQ(fibered_preset("trefoil").alexander, (IntPolynomial{1, -1, 1}));
    EXPECT_EQ(fibered_preset("figure8").alexander, (IntPolynomial{1, -3, 1}));
    EXPECT_EQ(char_poly_reciprocal(abelianized_monodromy(fibered_preset("figure8").data)), (IntPolynomial{1, -3, 1}));
    EXPECT_THROW(fibered_preset("unknot"), InputError);
}

TEST(RepShift, TrefoilOverZ2) {
    auto r = build_repshift(fibered_preset("trefoil").data, FiniteGroupTable::builtin("Z2"));
    EXPECT_EQ(r.presentation.dim(), 4u);
    EXPECT_EQ(r.edges.size(), 4u);
    EXPECT_EQ(traces(r.presentation.matrix(), 6), (std::vector<BigInt>{1, 1, 4, 1, 1, 4}));
    auto counts = flat_bundle_counts(r, 6);
    EXPECT_EQ(counts.counts, (std::vector<BigInt>{1, 1, 4, 1, 1, 4}));
    EXPECT_EQ(r.presentation.matrix().label(1), "[0;1]");
}

TEST(RepShift, PeriodicPointsMatchMonodromyIteration) {
    for (const auto& [name, images] : monodromies)
        for (const char* group : {"Z2", "Z3", "S3", "Q8"}) {
            auto g = FiniteGroupTable::builtin(group);
            auto r = build_repshift(fibered_preset(name).data, g);
            auto [points, orbits] = oracle::iterate_monodromy(g, images, 6);
            EXPECT_EQ(traces(r.presentation.matrix(), 6), points) << name << " " << group;
            EXPECT_EQ(traces(r.edge_action.matrix(), 6), points) << name << " " << group;
            EXPECT_EQ(flat_bundle_counts(r, 6).counts, orbits) << name << " " << group;
        }
}

TEST(RepShift, BundleCountsFollowTheirRecurrence) {
    for (const auto& [name, images] : monodromies)
        for (const char* group : {"Z2", "S3", "D4"}) {
            auto r = build_repshift(fibered_preset(name).data, FiniteGroupTable::builtin(group));
            auto c = flat_bundle_counts(r, 12);
            EXPECT_TRUE(recurrence_annihilates(c.recurrence, c.sums)) << name << " " << group;
        }
}

TEST(RepShift, TqftMatchesOrbitAdjacency) {
    auto g = FiniteGroupTable::builtin("S3");
    auto r = build_repshift(fibered_preset("trefoil").data, g);
    EXPECT_EQ(oracle::all_pairs(g).size(), 36u);
    auto expected = oracle::orbit_adjacency(g, monodromies.at("trefoil"));
    auto t = tqft_matrix(r);
    EXPECT_EQ(t.matrix, expected);
    EXPECT_EQ(t.orbits.size(), 11u);
}

TEST(RepShift, NonFiberedDataIsTrimmed) {
    // B = U = V = Z, a -> a^3 over Z3 sends every state to the trivial one
    HnnData h{1, {}, {GroupWord::parse("a")}, {}, {GroupWord::parse("a")}, {}, {GroupWord::parse("aaa")}};
    auto r = build_repshift(h, FiniteGroupTable::builtin("Z3"));
    EXPECT_EQ(r.presentation.dim(), 1u);
    EXPECT_EQ(r.edges.size(), 1u);
    // a -> a^2 permutes Z5
    h.amalgamating_images = {GroupWord::parse("aa")};
    auto z5 = build_repshift(h, FiniteGroupTable::builtin("Z5"));
    EXPECT_EQ(traces(z5.presentation.matrix(), 4), (std::vector<BigInt>{1, 1, 1, 5}));
}

TEST(RepShift, InputErrors) {
    HnnData h{1, {}, {GroupWord::parse("a")}, {GroupWord::parse("aa")}, {GroupWord::parse("a")}, {}, {GroupWord::parse("a")}};
    // the initial state of a -> 1 in Z3 violates U's relator aa
    EXPECT_THROW(build_repshift(h, FiniteGroupTable::builtin("Z3")), PreconditionError);
    h.amalgamating_images.clear();
    EXPECT_THROW(h.validate(), InputError);
    HnnData bad{1, {}, {GroupWord::parse("b")}, {}, {}, {}, {GroupWord::parse("a")}};
    EXPECT_THROW(bad.validate(), InputError);
    EXPECT_THROW(build_repshift(fibered_preset("trefoil").data, FiniteGroupTable::builtin("S4"), 100), CapExceeded);
}
