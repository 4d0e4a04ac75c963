#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "grandsart/invariants.hpp"
#include "oracles.hpp"

using namespace grandsart;

namespace {

circular_word cw(const std::string& s) { return circular_word::parse(s, alphabet::binary()); }
word w(const std::string& s) { return word::parse(s, alphabet::binary()); }

std::vector<std::string> strs(std::span<const word> ws) {
    std::vector<std::string> out;
    for (const auto& u : ws) out.push_back(u.str());
    return out;
}

// Differences straight from the unrolled-string oracle, in the fixed order.
difference_tuple oracle_diffs(const std::string& s) {
    const auto c = [&](const char* u) { return static_cast<std::int64_t>(oracle::count(s, u)); };
    return {c("0011") - c("1100"), c("1101") - c("1011"), c("1010") - c("0101"), c("0100") - c("0010")};
}

}  // namespace

TEST(Classification, Palindromes) {
    const auto c = classify_length4();
    EXPECT_EQ(strs(c.palindromes), (std::vector<std::string>{"0000", "0110", "1001", "1111"}));
}

TEST(Classification, RunPairs) {
    const auto c = classify_length4();
    std::set<std::set<std::string>> got;
    for (const auto& [u, v] : c.run_pairs) got.insert({u.str(), v.str()});
    EXPECT_EQ(got, (std::set<std::set<std::string>>{{"1000", "0001"}, {"1110", "0111"}}));
}

TEST(Classification, GrandsartPairsInFixedOrder) {
    const auto c = classify_length4();
    ASSERT_EQ(c.grandsart_pairs.size(), 4u);
    const std::vector<std::pair<std::string, std::string>> expected{
        {"0011", "1100"}, {"1101", "1011"}, {"1010", "0101"}, {"0100", "0010"}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(c.grandsart_pairs[i].first.str(), expected[i].first);
        EXPECT_EQ(c.grandsart_pairs[i].second.str(), expected[i].second);
    }
}

TEST(Classification, PartitionAndPairProperties) {
    const auto c = classify_length4();
    std::set<word> seen(c.palindromes.begin(), c.palindromes.end());
    for (const auto* group : {&c.run_pairs, &c.grandsart_pairs}) {
        for (const auto& [u, v] : *group) {
            EXPECT_TRUE(is_palindromic_pair(u, v));
            seen.insert(u);
            seen.insert(v);
        }
    }
    EXPECT_EQ(seen.size(), 16u);
    for (const auto& [u, v] : c.grandsart_pairs) {
        EXPECT_NE(u[1], u[2]) << u.str();
        EXPECT_NE(v[1], v[2]) << v.str();
    }
}

TEST(Square, StepFollowsTheFourCycle) {
    EXPECT_EQ(square_step(w("001"), 1), w("110"));
    EXPECT_EQ(square_step(w("110"), 1), w("101"));
    EXPECT_EQ(square_step(w("101"), 1), w("010"));
    EXPECT_EQ(square_step(w("010"), 1), w("001"));
    EXPECT_EQ(square_step(w("001"), -1), w("010"));
    EXPECT_EQ(square_step(w("101"), 4), w("101"));
}

TEST(Square, ContractedTargetsAndOrientation) {
    // Targets as drawn on the shortened graph.
    const std::vector<std::tuple<std::string, std::string, int>> edges{
        {"1100", "001", -1}, {"1101", "101", +1}, {"0011", "110", +1}, {"0010", "010", -1},
        {"1010", "010", +1}, {"1011", "110", -1}, {"0101", "101", -1}, {"0100", "001", +1},
    };
    for (const auto& [e, target, sign] : edges) {
        EXPECT_EQ(square_target(w(e)).str(), target) << e;
        EXPECT_EQ(orientation(w(e)), sign) << e;
    }
    EXPECT_THROW(square_target(w("0110")), error);
}

TEST(Differences, Examples) {
    EXPECT_EQ(grandsart_differences(cw("010011")), (difference_tuple{1, 1, 1, 1}));
    EXPECT_EQ(grandsart_differences(cw("101100")), (difference_tuple{-1, -1, -1, -1}));
    EXPECT_EQ(grandsart_differences(cw("0000")), (difference_tuple{0, 0, 0, 0}));
    EXPECT_EQ(grandsart_differences(cw("001")), (difference_tuple{0, 0, 0, 0}));
    EXPECT_EQ(oracle_diffs("001"), (difference_tuple{0, 0, 0, 0}));
}

TEST(Differences, RequireBinary) {
    EXPECT_THROW(grandsart_differences(circular_word::parse("0120")), error);
    EXPECT_THROW(winding_number_graph(circular_word::parse("0120")), error);
    EXPECT_THROW(winding_number_decomposition(circular_word::parse("0120")), error);
}

TEST(Projection, Examples) {
    const auto a = project_to_square(cw("010011"));
    EXPECT_EQ(strs(a.retained_edges), (std::vector<std::string>{"0100", "0011", "1101", "1010"}));
    EXPECT_EQ(a.turn_sum(), 4);
    ASSERT_TRUE(a.start_vertex.has_value());
    EXPECT_EQ(*a.start_vertex, w("010"));

    const auto b = project_to_square(cw("0101"));
    EXPECT_EQ(strs(b.retained_edges), (std::vector<std::string>{"0101", "1010", "0101", "1010"}));
    EXPECT_EQ(b.turn_sum(), 0);

    const auto c = project_to_square(cw("0000"));
    EXPECT_TRUE(c.retained_edges.empty());
    EXPECT_FALSE(c.start_vertex.has_value());
    EXPECT_EQ(c.turn_sum(), 0);
}

TEST(Projection, ClosedPathCheckRejectsBrokenSequences) {
    EXPECT_TRUE(is_closed_square_path(std::vector<word>{w("0011"), w("1100")}));
    EXPECT_FALSE(is_closed_square_path(std::vector<word>{w("0011"), w("1101")}));
    EXPECT_FALSE(is_closed_square_path(std::vector<word>{w("0011"), w("0110")}));
    EXPECT_TRUE(is_closed_square_path(std::vector<word>{}));
}

TEST(Winding, Examples) {
    EXPECT_EQ(winding_number_graph(cw("010011")), 1);
    EXPECT_EQ(winding_number_graph(cw("101100")), -1);
    EXPECT_EQ(winding_number_graph(cw("1111")), 0);
    EXPECT_EQ(winding_number_decomposition(cw("010011")), 1);
    EXPECT_EQ(winding_number_decomposition(cw("101100")), -1);
    EXPECT_EQ(winding_number_decomposition(cw("0101")), 0);
    EXPECT_EQ(winding_number_graph(cw("0101")), 0);
}

TEST(Winding, LargerTurnCounts) {
    // Two and three even isolated blocks starting with 0.
    EXPECT_EQ(grandsart_report_for(cw("010011010011")).k_graph, 2);
    EXPECT_EQ(grandsart_report_for(cw("010011010011010011")).k_decomposition, 3);
    EXPECT_EQ(grandsart_report_for(cw("101100101100")).k_graph, -2);
}

TEST(Report, Examples) {
    const auto a = grandsart_report_for(cw("010011"));
    EXPECT_EQ(a.diffs, (difference_tuple{1, 1, 1, 1}));
    EXPECT_EQ(a.k_graph, 1);
    EXPECT_EQ(a.k_decomposition, 1);
    EXPECT_TRUE(a.consistent);

    const auto b = grandsart_report_for(cw("0"));
    EXPECT_EQ(b.diffs, (difference_tuple{0, 0, 0, 0}));
    EXPECT_EQ(b.k_graph, 0);
    EXPECT_TRUE(b.consistent);
}

TEST(Report, ExhaustiveUpToTwelve) {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (const auto& c : enumerate_words(alphabet::binary(), n)) {
            const auto r = grandsart_report_for(c);
            ASSERT_TRUE(r.consistent) << c.str();
            ASSERT_EQ(r.diffs, oracle_diffs(c.str())) << c.str();
            ASSERT_EQ(project_to_square(c).turn_sum() % 4, 0);
        }
    }
}

TEST(Report, RandomLength64) {
    std::mt19937_64 rng(64);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto s = oracle::random_binary(rng, 64, 64);
        const auto r = grandsart_report_for(cw(s));
        ASSERT_TRUE(r.consistent) << s;
        ASSERT_EQ(r.diffs, oracle_diffs(s)) << s;
    }
}

TEST(Symmetry, RotationMirrorComplementExhaustive) {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (const auto& c : enumerate_words(alphabet::binary(), n)) {
            const auto r = grandsart_report_for(c);
            const auto k = r.k_graph;
            for (std::int64_t s = 1; s < static_cast<std::int64_t>(n); s += 3) {
                const auto rr = grandsart_report_for(rotate(c, s));
                ASSERT_EQ(rr.diffs, r.diffs);
                ASSERT_EQ(rr.k_decomposition, r.k_decomposition);
            }
            ASSERT_EQ(winding_number_graph(mirror(c)), -k) << c.str();
            ASSERT_EQ(winding_number_graph(complement(c)), -k) << c.str();
            ASSERT_EQ(winding_number_graph(cw(oracle::complemented(c.str()))), -k);
        }
    }
}

TEST(Simplify, CancellingOppositeTurnsKeepsDifferences) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto c = cw(oracle::random_binary(rng, 1, 64));
        const auto p = project_to_square(c);
        const auto before = pair_differences(p.retained_edges);
        EXPECT_EQ(before, grandsart_differences(c));

        // Drop one adjacent opposite pair by hand.
        for (std::size_t i = 0; i + 1 < p.retained_edges.size(); ++i) {
            if (p.epsilons[i] != -p.epsilons[i + 1]) continue;
            ASSERT_TRUE(is_palindromic_pair(p.retained_edges[i], p.retained_edges[i + 1]));
            auto edges = p.retained_edges;
            edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i), edges.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            ASSERT_EQ(pair_differences(edges), before);
            ASSERT_TRUE(is_closed_square_path(edges));
            break;
        }

        // Full reduction leaves |k| turns through each pair, all one way.
        const auto reduced = simplify(p);
        const auto k = winding_number_graph(c);
        ASSERT_EQ(reduced.retained_edges.size(), static_cast<std::size_t>(4 * std::abs(k)));
        ASSERT_TRUE(std::all_of(reduced.epsilons.begin(), reduced.epsilons.end(),
                                [&](int e) { return e == (k > 0 ? 1 : -1); }));
        ASSERT_EQ(pair_differences(reduced.retained_edges), before);
        ASSERT_TRUE(is_closed_square_path(reduced.retained_edges));
    }
}

TEST(SquareDot, FourNodesEightEdges) {
    const auto text = export_square_dot();
    for (const char* v : {"110", "001", "101", "010"}) {
        EXPECT_NE(text.find(std::string("  \"") + v + "\";"), std::string::npos) << v;
    }
    std::size_t arrows = 0;
    for (auto pos = text.find(" -> "); pos != std::string::npos; pos = text.find(" -> ", pos + 1)) ++arrows;
    EXPECT_EQ(arrows, 8u);
    EXPECT_NE(text.find("\"110\" -> \"001\" [label=\"1100\", style=dashed]"), std::string::npos);
    EXPECT_NE(text.find("\"001\" -> \"110\" [label=\"0011\"]"), std::string::npos);
}
