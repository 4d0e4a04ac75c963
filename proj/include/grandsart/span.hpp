#pragma once

// Exact linear algebra over the occurrence functionals W -> |W|_U.
//
// A functional family is a list of columns; each sample word contributes one
// row of exact counts. Ranks are computed over Q by fraction-free (Bareiss)
// elimination on arbitrary-precision integers, so "the functionals span a
// space of dimension r" is an exact statement about the sampled words.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grandsart/core.hpp"
#include "grandsart/debruijn.hpp"
#include "grandsart/words.hpp"

namespace grandsart {

using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// --- matrices --------------------------------------------------------------

template <typename T>
class dense_matrix {
public:
    dense_matrix() = default;
    dense_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

    void append_row(std::span<const T> values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        if (values.size() != cols_) throw error(error_kind::bad_parameter, "row width mismatch");
        entries_.insert(entries_.end(), values.begin(), values.end());
        ++rows_;
    }

    friend bool operator==(const dense_matrix&, const dense_matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> entries_;
};

using integer_matrix = dense_matrix<integer>;

// Rank over Q. Bareiss elimination: after each pivot every remaining entry is
// a minor of the original matrix, so the division by the previous pivot is
// exact and entries stay integral.
inline std::size_t exact_rank(integer_matrix m) {
    std::size_t rank = 0;
    integer previous = 1;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank) {
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
        }
        const integer p = m(rank, col);
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            const integer factor = m(i, col);
            for (std::size_t j = col + 1; j < m.cols(); ++j) {
                m(i, j) = (p * m(i, j) - factor * m(rank, j)) / previous;
            }
            m(i, col) = 0;
        }
        previous = p;
        ++rank;
    }
    return rank;
}

// Integer row echelon basis that accepts rows one at a time. Rows are kept
// primitive (content divided out) so entries stay small.
class echelon_basis {
public:
    explicit echelon_basis(std::size_t cols) : cols_(cols) {}

    std::size_t rank() const noexcept { return rows_.size(); }

    // True when the row was independent of those already inserted.
    bool insert(std::span<const integer> values) {
        std::vector<integer> row(values.begin(), values.end());
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const auto col = pivots_[k];
            if (row[col] == 0) continue;
            const integer p = rows_[k][col];
            const integer f = row[col];
            for (std::size_t j = 0; j < cols_; ++j) row[j] = p * row[j] - f * rows_[k][j];
            make_primitive(row);
        }
        const auto lead = std::find_if(row.begin(), row.end(), [](const integer& x) { return x != 0; });
        if (lead == row.end()) return false;
        const auto col = static_cast<std::size_t>(lead - row.begin());
        // Clear the new pivot column from the existing rows, keeping reduced form.
        for (auto& other : rows_) {
            if (other[col] == 0) continue;
            const integer p = row[col];
            const integer f = other[col];
            for (std::size_t j = 0; j < cols_; ++j) other[j] = p * other[j] - f * row[j];
            make_primitive(other);
        }
        rows_.push_back(std::move(row));
        pivots_.push_back(col);
        return true;
    }

private:
    static void make_primitive(std::vector<integer>& row) {
        integer g = 0;
        for (const auto& x : row) g = boost::multiprecision::gcd(g, x);
        if (g > 1) {
            for (auto& x : row) x /= g;
        }
    }

    std::size_t cols_;
    std::vector<std::vector<integer>> rows_;
    std::vector<std::size_t> pivots_;
};

// --- functional families ---------------------------------------------------

// Columns of an occurrence matrix. When present the length functional
// |W|_eps = |W| is column 0; the factor columns follow in list order.
class functional_family {
public:
    functional_family(alphabet sigma, std::vector<word> factors, bool length_functional = false)
        : sigma_(sigma), factors_(std::move(factors)), length_functional_(length_functional) {
        std::set<word> seen;
        for (const auto& u : factors_) {
            if (u.empty()) throw error(error_kind::empty_factor, "factor columns must be non-empty words");
            if (u.alpha() != sigma_) throw error(error_kind::alphabet_mismatch, "factor " + u.str());
            if (!seen.insert(u).second) throw error(error_kind::bad_parameter, "duplicate factor " + u.str());
        }
    }

    // The d^l words of length l, lexicographic.
    static functional_family of_length(alphabet sigma, std::size_t l) {
        const auto count = checked_power(sigma.size(), l);
        std::vector<word> factors;
        for (std::uint64_t i = 0; i < count; ++i) factors.push_back(word_at(i, l, sigma));
        return functional_family(sigma, std::move(factors));
    }

    // Every word of length 1..l, by length then lexicographic.
    static functional_family up_to_length(alphabet sigma, std::size_t l, bool length_functional = false) {
        std::vector<word> factors;
        for (std::size_t len = 1; len <= l; ++len) {
            const auto count = checked_power(sigma.size(), len);
            for (std::uint64_t i = 0; i < count; ++i) factors.push_back(word_at(i, len, sigma));
        }
        return functional_family(sigma, std::move(factors), length_functional);
    }

    // The length functional plus every word of length 1..l whose first and
    // last letters are nonzero.
    static functional_family nonzero_ends(alphabet sigma, std::size_t l) {
        auto all = up_to_length(sigma, l);
        std::vector<word> factors;
        for (const auto& u : all.factors()) {
            if (u.front() != 0 && u.back() != 0) factors.push_back(u);
        }
        return functional_family(sigma, std::move(factors), true);
    }

    // 0000 together with the eight binary words 1V of length 4.
    static functional_family loop_and_one_prefixed() {
        std::vector<word> factors{word::parse("0000")};
        for (std::uint64_t i = 8; i < 16; ++i) factors.push_back(word_at(i, 4, alphabet::binary()));
        return functional_family(alphabet::binary(), std::move(factors));
    }

    alphabet alpha() const noexcept { return sigma_; }
    std::span<const word> factors() const noexcept { return factors_; }
    bool has_length_functional() const noexcept { return length_functional_; }
    std::size_t size() const noexcept { return factors_.size() + (length_functional_ ? 1 : 0); }

    std::size_t longest_factor() const noexcept {
        std::size_t longest = 0;
        for (const auto& u : factors_) longest = std::max(longest, u.size());
        return longest;
    }

    std::string column_name(std::size_t j) const {
        if (length_functional_) {
            if (j == 0) return "eps";
            --j;
        }
        return factors_[j].str();
    }

    std::vector<integer> evaluate(const circular_word& w) const {
        if (w.alpha() != sigma_) throw error(error_kind::alphabet_mismatch, "word " + w.str());
        std::vector<integer> values;
        values.reserve(size());
        if (length_functional_) values.emplace_back(w.size());
        for (const auto& u : factors_) values.emplace_back(count_occurrences(w, u));
        return values;
    }

private:
    alphabet sigma_;
    std::vector<word> factors_;
    bool length_functional_;
};

inline integer_matrix occurrence_matrix(std::span<const circular_word> words, const functional_family& family) {
    integer_matrix m(0, family.size());
    for (const auto& w : words) {
        const auto values = family.evaluate(w);
        m.append_row(values);
    }
    return m;
}

// All words of lengths 1..max_len, shortest first.
inline std::vector<circular_word> sample_words(alphabet sigma, std::size_t max_len,
                                               std::uint64_t bound = default_size_bound) {
    if (max_len == 0) throw error(error_kind::bad_parameter, "max_len must be at least 1");
    checked_power(sigma.size(), max_len, bound);
    std::vector<circular_word> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        for (const auto& w : enumerate_words(sigma, len)) out.push_back(w);
    }
    if (out.size() > bound) throw error(error_kind::size_limit, std::to_string(out.size()) + " sample words");
    return out;
}

// --- dimension of the span -------------------------------------------------

inline std::size_t predicted_dimension(std::size_t d, std::size_t l) {
    return static_cast<std::size_t>((d - 1) * checked_power(d, l - 1)) + 1;
}

inline std::size_t default_max_len(std::size_t l) { return 2 * l + 2; }

struct span_report {
    std::size_t d = 0;
    std::size_t l = 0;
    std::size_t max_len = 0;
    std::size_t rows = 0;
    std::size_t columns = 0;
    std::size_t rank = 0;
    std::size_t predicted = 0;
    std::size_t relations = 0;
    std::vector<std::size_t> rank_by_length;  // rank using words of length <= m, m = 1..max_len
    bool saturated = false;                   // rank unchanged over the last two lengths added
};

inline span_report span_dimension(std::size_t d, std::size_t l, std::size_t max_len,
                                  std::uint64_t bound = default_size_bound) {
    if (l == 0) throw error(error_kind::bad_parameter, "factor length must be at least 1");
    if (max_len < l) {
        throw error(error_kind::bad_parameter, "max_len " + std::to_string(max_len) + " is below l " +
                                                   std::to_string(l));
    }
    const alphabet sigma{d};
    const auto family = functional_family::of_length(sigma, l);

    span_report report;
    report.d = d;
    report.l = l;
    report.max_len = max_len;
    report.columns = family.size();
    report.predicted = predicted_dimension(d, l);

    echelon_basis basis(family.size());
    for (const auto& w : sample_words(sigma, max_len, bound)) {
        if (report.rank_by_length.size() < w.size()) report.rank_by_length.push_back(0);
        basis.insert(family.evaluate(w));
        report.rank_by_length.back() = basis.rank();
        ++report.rows;
    }
    report.rank = basis.rank();
    report.relations = report.columns - report.rank;
    const auto& by_len = report.rank_by_length;
    report.saturated = by_len.size() >= 3 && by_len[by_len.size() - 1] == by_len[by_len.size() - 3];
    return report;
}

// --- spanning sets and bases -----------------------------------------------

struct spanning_set_report {
    std::vector<word> set;
    std::size_t rank = 0;
    std::size_t predicted = 0;
    bool spans_all = false;     // every length-4 functional lies in the span of the set
    bool forms_tree = false;    // non-loop words of the set form a spanning tree of B(2,3)

    bool ok() const { return rank == set.size() && rank == predicted && spans_all && forms_tree; }
};

inline spanning_set_report verify_spanning_set(std::size_t max_len, std::vector<word> set) {
    const auto sigma = alphabet::binary();
    const auto all = functional_family::of_length(sigma, 4);
    const functional_family chosen(sigma, set);
    const auto words = sample_words(sigma, max_len);

    spanning_set_report report;
    report.predicted = predicted_dimension(2, 4);
    const auto chosen_matrix = occurrence_matrix(words, chosen);
    report.rank = exact_rank(chosen_matrix);

    // Appending every length-4 column must not raise the rank.
    functional_family combined(sigma, [&] {
        auto factors = set;
        for (const auto& u : all.factors()) {
            if (std::find(set.begin(), set.end(), u) == set.end()) factors.push_back(u);
        }
        return factors;
    }());
    report.spans_all = exact_rank(occurrence_matrix(words, combined)) == report.rank;

    const de_bruijn_graph b23(sigma, 3);
    std::vector<word> tree_edges;
    for (const auto& u : set) {
        const bool loop = std::all_of(u.letters().begin(), u.letters().end(),
                                      [&](letter a) { return a == u.front(); });
        if (!loop) tree_edges.push_back(u);
    }
    report.forms_tree = is_spanning_tree(b23, tree_edges);
    report.set = std::move(set);
    return report;
}

inline spanning_set_report verify_spanning_set(std::size_t max_len = default_max_len(4)) {
    const auto family = functional_family::loop_and_one_prefixed();
    return verify_spanning_set(max_len, std::vector<word>(family.factors().begin(), family.factors().end()));
}

struct basis_report {
    std::size_t d = 0;
    std::size_t l = 0;
    std::vector<std::string> basis;  // column names, "eps" for the length functional
    std::size_t rank = 0;
    std::size_t predicted = 0;
    bool spans_all = false;

    bool ok() const { return rank == predicted && spans_all; }
};

inline basis_report verify_cks_basis(std::size_t d, std::size_t l, std::size_t max_len,
                                     std::uint64_t bound = default_size_bound) {
    if (l == 0 || max_len < l) throw error(error_kind::bad_parameter, "need 1 <= l <= max_len");
    const alphabet sigma{d};
    const auto candidate = functional_family::nonzero_ends(sigma, l);
    const auto everything = functional_family::up_to_length(sigma, l, true);
    const auto words = sample_words(sigma, max_len, bound);

    basis_report report;
    report.d = d;
    report.l = l;
    report.predicted = predicted_dimension(d, l);
    for (std::size_t j = 0; j < candidate.size(); ++j) report.basis.push_back(candidate.column_name(j));
    report.rank = exact_rank(occurrence_matrix(words, candidate));

    // Candidate columns first, then every functional of length <= l.
    auto factors = std::vector<word>(candidate.factors().begin(), candidate.factors().end());
    for (const auto& u : everything.factors()) {
        if (std::find(factors.begin(), factors.end(), u) == factors.end()) factors.push_back(u);
    }
    const functional_family combined(sigma, std::move(factors), true);
    report.spans_all = exact_rank(occurrence_matrix(words, combined)) == report.rank;
    return report;
}

// --- solving for coefficients ----------------------------------------------

// Exact coefficients c with |W|_target = sum_j c_j f_j(W) on every word of
// length 1..max_len. Free columns of a dependent basis get coefficient 0.
inline std::vector<rational> express_in_span(const word& target, const functional_family& basis,
                                             std::optional<std::size_t> max_len = std::nullopt,
                                             std::uint64_t bound = default_size_bound) {
    if (target.empty()) throw error(error_kind::empty_factor, "target functional must be a non-empty word");
    if (target.alpha() != basis.alpha()) throw error(error_kind::alphabet_mismatch, "target " + target.str());
    const auto len = max_len.value_or(default_max_len(std::max(target.size(), basis.longest_factor())));
    const auto words = sample_words(basis.alpha(), len, bound);

    const auto k = basis.size();
    dense_matrix<rational> m(words.size(), k + 1);
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto values = basis.evaluate(words[i]);
        for (std::size_t j = 0; j < k; ++j) m(i, j) = rational(values[j]);
        m(i, k) = rational(count_occurrences(words[i], target));
    }

    // Reduced row echelon form of [basis | target].
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col <= k && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (col == k) {
            throw error(error_kind::not_in_span, "|W|_" + target.str() + " is not in the span of the basis");
        }
        if (pivot != rank) {
            for (std::size_t j = 0; j <= k; ++j) std::swap(m(pivot, j), m(rank, j));
        }
        const rational p = m(rank, col);
        for (std::size_t j = col; j <= k; ++j) m(rank, j) /= p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m(i, col) == 0) continue;
            const rational f = m(i, col);
            for (std::size_t j = col; j <= k; ++j) m(i, j) -= f * m(rank, j);
        }
        pivot_cols.push_back(col);
        ++rank;
    }

    std::vector<rational> coefficients(k, rational(0));
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) coefficients[pivot_cols[r]] = m(r, k);
    return coefficients;
}

inline rational evaluate(const functional_family& family, std::span<const rational> coefficients,
                         const circular_word& w) {
    const auto values = family.evaluate(w);
    rational sum = 0;
    for (std::size_t j = 0; j < values.size(); ++j) sum += coefficients[j] * rational(values[j]);
    return sum;
}

// "p/q" in lowest terms, with q = 1 for integers.
inline std::string format_rational(const rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

// --- relations -------------------------------------------------------------

// |W|_U equals the sum of |W|_V over the length-l words V with prefix U, for
// every U of length 1..l-1.
inline bool marginalization_check(const circular_word& w, std::size_t l) {
    if (l < 2) throw error(error_kind::bad_parameter, "marginalization needs l >= 2");
    const auto full = occurrence_vector_of(w, l);
    const auto d = w.alpha().size();
    for (std::size_t len = 1; len < l; ++len) {
        const auto partial = occurrence_vector_of(w, len);
        const auto extensions = checked_power(d, l - len);
        for (std::uint64_t u = 0; u < partial.counts().size(); ++u) {
            std::uint64_t sum = 0;
            for (std::uint64_t tail = 0; tail < extensions; ++tail) sum += full[u * extensions + tail];
            if (sum != partial[u]) return false;
        }
    }
    return true;
}

// One vector per vertex U of B(d, n) over the length-(n+1) columns:
// +1 on each out-edge Ua, -1 on each in-edge aU (a loop cancels to 0).
inline std::vector<std::vector<integer>> kirchhoff_relations(std::size_t d, std::size_t n) {
    const de_bruijn_graph g(alphabet{d}, n);
    std::vector<std::vector<integer>> relations;
    for (std::uint64_t v = 0; v < g.vertex_count(); ++v) {
        std::vector<integer> r(g.edge_count(), 0);
        for (std::size_t a = 0; a < d; ++a) {
            r[g.out_edge(v, static_cast<letter>(a))] += 1;
            r[g.in_edge(static_cast<letter>(a), v)] -= 1;
        }
        relations.push_back(std::move(r));
    }
    return relations;
}

}  // namespace grandsart
