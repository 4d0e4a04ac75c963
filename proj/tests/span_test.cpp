#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "grandsart/io.hpp"
#include "grandsart/span.hpp"
#include "oracles.hpp"

using namespace grandsart;

namespace {

circular_word cw(const std::string& s) { return circular_word::parse(s, alphabet::binary()); }
word w(const std::string& s) { return word::parse(s, alphabet::binary()); }

integer_matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    integer_matrix m;
    for (const auto& r : rows) {
        std::vector<integer> values(r.begin(), r.end());
        m.append_row(values);
    }
    return m;
}

std::vector<std::vector<std::int64_t>> to_rows(const integer_matrix& m) {
    std::vector<std::vector<std::int64_t>> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (const auto& x : m.row(i)) out[i].push_back(static_cast<std::int64_t>(x));
    }
    return out;
}

}  // namespace

TEST(ExactRank, SmallMatrices) {
    EXPECT_EQ(exact_rank(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
    EXPECT_EQ(exact_rank(from_rows({{0, 0}, {0, 0}})), 0u);
    EXPECT_EQ(exact_rank(integer_matrix{}), 0u);
    EXPECT_EQ(exact_rank(from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}})), 2u);
    EXPECT_EQ(exact_rank(from_rows({{0, 2, 4}, {0, 3, 6}, {1, 0, 0}})), 2u);
}

TEST(ExactRank, AgreesWithPrimeFieldAndIncrementalBasis) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = 1 + rng() % 12;
        const std::size_t cols = 1 + rng() % 12;
        const std::size_t true_rank = 1 + rng() % std::min(rows, cols);
        // Product of random integer factors, so the rank is usually true_rank.
        std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(true_rank));
        std::vector<std::vector<std::int64_t>> b(true_rank, std::vector<std::int64_t>(cols));
        for (auto& r : a)
            for (auto& x : r) x = static_cast<std::int64_t>(rng() % 11) - 5;
        for (auto& r : b)
            for (auto& x : r) x = static_cast<std::int64_t>(rng() % 11) - 5;
        std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols, 0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                for (std::size_t k = 0; k < true_rank; ++k) m[i][j] += a[i][k] * b[k][j];

        const auto im = from_rows(m);
        const auto rank = exact_rank(im);
        EXPECT_EQ(rank, oracle::rank_mod_p(m));
        EXPECT_LE(rank, true_rank);
        echelon_basis basis(cols);
        for (std::size_t i = 0; i < rows; ++i) basis.insert(im.row(i));
        EXPECT_EQ(basis.rank(), rank);
    }
}

TEST(OccurrenceMatrix, Examples) {
    const std::vector<circular_word> singles{cw("0"), cw("1")};
    const auto m = occurrence_matrix(singles, functional_family::of_length(alphabet::binary(), 1));
    EXPECT_EQ(to_rows(m), (std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}}));

    const std::vector<circular_word> one{cw("00101")};
    EXPECT_EQ(to_rows(occurrence_matrix(one, functional_family(alphabet::binary(), {w("010")}))),
              (std::vector<std::vector<std::int64_t>>{{2}}));
}

TEST(OccurrenceMatrix, RowSumsAndLengthColumn) {
    const auto words = sample_words(alphabet::binary(), 7);
    const auto family = functional_family::of_length(alphabet::binary(), 3);
    const auto m = occurrence_matrix(words, family);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        integer sum = 0;
        for (const auto& x : m.row(i)) sum += x;
        EXPECT_EQ(sum, integer(words[i].size()));
    }
    const functional_family with_length(alphabet::binary(), {w("1")}, true);
    const auto l = occurrence_matrix(words, with_length);
    EXPECT_EQ(l(5, 0), integer(words[5].size()));
    EXPECT_EQ(with_length.column_name(0), "eps");
}

TEST(OccurrenceMatrix, Errors) {
    const std::vector<circular_word> ternary{circular_word::parse("012")};
    EXPECT_THROW(occurrence_matrix(ternary, functional_family::of_length(alphabet::binary(), 2)), error);
    EXPECT_THROW(functional_family(alphabet::binary(), {w("01"), w("01")}), error);
    EXPECT_THROW(functional_family(alphabet::binary(), {word{}}), error);
}

TEST(OccurrenceMatrix, AgreesWithPrimeFieldRank) {
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto words = sample_words(alphabet::binary(), l + 4);
        const auto m = occurrence_matrix(words, functional_family::of_length(alphabet::binary(), l));
        EXPECT_EQ(exact_rank(m), oracle::rank_mod_p(to_rows(m)));
    }
}

TEST(OccurrenceMatrix, CsvDump) {
    const std::vector<circular_word> words{cw("01"), cw("0011")};
    const auto family = functional_family::of_length(alphabet::binary(), 2);
    std::ostringstream out;
    write_csv(out, words, family, occurrence_matrix(words, family));
    EXPECT_EQ(out.str(), "word,00,01,10,11\n01,0,1,1,0\n0011,1,1,1,1\n");
}

TEST(SpanDimension, Examples) {
    const auto a = span_dimension(2, 4, 10);
    EXPECT_EQ(a.rank, 9u);
    EXPECT_EQ(a.predicted, 9u);
    EXPECT_EQ(a.relations, 7u);
    EXPECT_EQ(a.columns, 16u);
    EXPECT_EQ(a.rows, 2046u);
    EXPECT_TRUE(a.saturated);
    // Frozen from an independent sympy rank computation.
    EXPECT_EQ(a.rank_by_length, (std::vector<std::size_t>{2, 3, 5, 8, 8, 9, 9, 9, 9, 9}));

    const auto b = span_dimension(2, 3, 8);
    EXPECT_EQ(b.rank, 5u);
    EXPECT_EQ(b.predicted, 5u);

    const auto c = span_dimension(3, 2, 6);
    EXPECT_EQ(c.rank, 7u);
    EXPECT_EQ(c.predicted, 7u);
    EXPECT_EQ(c.rank_by_length, (std::vector<std::size_t>{3, 6, 7, 7, 7, 7}));
}

TEST(SpanDimension, PreconditionsAndLimits) {
    EXPECT_THROW(span_dimension(2, 4, 3), error);
    EXPECT_THROW(span_dimension(2, 4, 25), error);
    EXPECT_FALSE(span_dimension(2, 4, 4).saturated);
}

TEST(SpanDimension, SaturatesWithinDefaultAndMatchesCyclomaticNumber) {
    for (const auto& [d, l] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}}) {
        const auto r = span_dimension(d, l, default_max_len(l));
        EXPECT_EQ(r.rank, r.predicted) << d << "," << l;
        EXPECT_TRUE(std::is_sorted(r.rank_by_length.begin(), r.rank_by_length.end()));
        if (l >= 2) {
            EXPECT_EQ(static_cast<std::int64_t>(r.predicted), cyclomatic_number(build_graph(d, l - 1)));
        }
    }
}

TEST(SpanningSet, Default) {
    const auto r = verify_spanning_set(10);
    EXPECT_EQ(r.rank, 9u);
    EXPECT_TRUE(r.spans_all);
    EXPECT_TRUE(r.forms_tree);
    EXPECT_TRUE(r.ok());
}

TEST(SpanningSet, DroppingOneWordFails) {
    const auto family = functional_family::loop_and_one_prefixed();
    std::vector<word> set;
    for (const auto& u : family.factors()) {
        if (u != w("1010")) set.push_back(u);
    }
    const auto r = verify_spanning_set(10, set);
    EXPECT_EQ(r.rank, 8u);
    EXPECT_FALSE(r.spans_all);
    EXPECT_FALSE(r.ok());
}

TEST(CksBasis, Examples) {
    const auto a = verify_cks_basis(2, 4, 10);
    EXPECT_TRUE(a.ok());
    EXPECT_EQ(a.basis, (std::vector<std::string>{"eps", "1", "11", "101", "111", "1001", "1011", "1101", "1111"}));
    EXPECT_EQ(a.rank, 9u);

    const auto b = verify_cks_basis(2, 3, 8);
    EXPECT_TRUE(b.ok());
    EXPECT_EQ(b.basis.size(), 5u);

    const auto c = verify_cks_basis(2, 1, 4);
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(c.basis, (std::vector<std::string>{"eps", "1"}));
    EXPECT_EQ(c.rank, 2u);

    EXPECT_TRUE(verify_cks_basis(3, 2, 6).ok());
}

TEST(CksBasis, WithoutLengthFunctionalIsOneShort) {
    const auto with_eps = functional_family::nonzero_ends(alphabet::binary(), 4);
    const functional_family no_eps(alphabet::binary(),
                                   std::vector<word>(with_eps.factors().begin(), with_eps.factors().end()));
    const auto words = sample_words(alphabet::binary(), 10);
    EXPECT_EQ(exact_rank(occurrence_matrix(words, no_eps)), 8u);
}

TEST(ExpressInSpan, KirchhoffIdentities) {
    const auto basis = functional_family::loop_and_one_prefixed();
    // Columns: 0000, 1000, 1001, 1010, 1011, 1100, 1101, 1110, 1111.
    const auto c0001 = express_in_span(w("0001"), basis, 10);
    std::vector<rational> expected(9, rational(0));
    expected[1] = 1;
    EXPECT_EQ(c0001, expected);

    const auto c0101 = express_in_span(w("0101"), basis, 10);
    expected.assign(9, rational(0));
    expected[3] = 1;   // 1010
    expected[4] = 1;   // 1011
    expected[6] = -1;  // 1101
    EXPECT_EQ(c0101, expected);

    const functional_family single(alphabet::binary(), {w("0110")});
    EXPECT_EQ(express_in_span(w("0110"), single), (std::vector<rational>{rational(1)}));
}

TEST(ExpressInSpan, NotInSpan) {
    const functional_family single(alphabet::binary(), {w("0110")});
    try {
        express_in_span(w("0011"), single, 8);
        FAIL() << "expected not_in_span";
    } catch (const error& e) {
        EXPECT_EQ(e.kind(), error_kind::not_in_span);
    }
}

TEST(ExpressInSpan, HeldOutWordsReproduceTargets) {
    const auto basis = functional_family::nonzero_ends(alphabet::binary(), 4);
    std::mt19937_64 rng(1000);
    std::vector<std::string> held_out;
    for (int i = 0; i < 200; ++i) held_out.push_back(oracle::random_binary(rng, 11, 32));
    for (std::size_t len = 1; len <= 4; ++len) {
        for (const auto& t : enumerate_words(alphabet::binary(), len)) {
            const auto coefficients = express_in_span(t.linear(), basis, 10);
            for (const auto& s : held_out) {
                ASSERT_EQ(evaluate(basis, coefficients, cw(s)), rational(oracle::count(s, t.str())))
                    << t.str() << " on " << s;
            }
        }
    }
}

TEST(ExpressInSpan, RationalFormatting) {
    EXPECT_EQ(format_rational(rational(1)), "1/1");
    EXPECT_EQ(format_rational(rational(-3, 6)), "-1/2");
    EXPECT_EQ(format_rational(rational(0)), "0/1");
}

TEST(Marginalization, Examples) {
    EXPECT_TRUE(marginalization_check(cw("00101"), 4));
    EXPECT_EQ(count_occurrences(cw("00101"), w("010")), 2u);
    EXPECT_EQ(count_occurrences(cw("00101"), w("0100")) + count_occurrences(cw("00101"), w("0101")), 2u);
    EXPECT_TRUE(marginalization_check(cw("1111"), 2));
    EXPECT_THROW(marginalization_check(cw("01"), 1), error);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        const auto c = cw(oracle::random_binary(rng, 1, 64));
        ASSERT_TRUE(marginalization_check(c, 4));
        ASSERT_EQ(count_occurrences(c, w("0")) + count_occurrences(c, w("1")), c.size());
    }
    EXPECT_TRUE(marginalization_check(circular_word::parse("0122101"), 3));
}

TEST(Relations, KirchhoffRelationsSpanTheKernel) {
    const auto relations = kirchhoff_relations(2, 3);
    ASSERT_EQ(relations.size(), 8u);
    const auto words = sample_words(alphabet::binary(), 10);
    const auto m = occurrence_matrix(words, functional_family::of_length(alphabet::binary(), 4));

    std::vector<integer> total(16, 0);
    integer_matrix relation_matrix;
    for (const auto& r : relations) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            integer dot = 0;
            for (std::size_t j = 0; j < 16; ++j) dot += m(i, j) * r[j];
            ASSERT_EQ(dot, 0);
        }
        for (std::size_t j = 0; j < 16; ++j) total[j] += r[j];
        relation_matrix.append_row(r);
    }
    EXPECT_EQ(total, std::vector<integer>(16, 0));
    EXPECT_EQ(exact_rank(relation_matrix), 7u);
    EXPECT_EQ(exact_rank(relation_matrix), span_dimension(2, 4, 10).relations);
}
