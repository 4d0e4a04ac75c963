#pragma once

// The four occurrence differences
//
//   |W|_0011 - |W|_1100,  |W|_1101 - |W|_1011,
//   |W|_1010 - |W|_0101,  |W|_0100 - |W|_0010
//
// of a circular binary word W all equal one integer k, the number of turns
// the path of W makes around the four-vertex "square" graph obtained from
// B(2,3) by erasing every edge outside these eight words.
//
// k is computed two ways: by projecting the closed path of W onto the square
// (primary), and by counting even-length maximal blocks of isolated letters.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grandsart/core.hpp"
#include "grandsart/debruijn.hpp"
#include "grandsart/words.hpp"

namespace grandsart {

using word_pair = std::pair<word, word>;

namespace detail {

inline void require_binary(const circular_word& w) {
    if (w.alpha() != alphabet::binary()) {
        throw error(error_kind::alphabet_mismatch,
                    "word " + w.str() + " must be binary (alphabet size " + std::to_string(w.alpha().size()) + ")");
    }
}

inline bool has_run_of_three(const word& u) {
    for (std::size_t i = 2; i < u.size(); ++i) {
        if (u[i] == u[i - 1] && u[i] == u[i - 2]) return true;
    }
    return false;
}

}  // namespace detail

// --- the square graph ------------------------------------------------------

// Vertices of B(2,3) whose last two letters differ, listed along the 4-cycle
// R: 001 -> 110 -> 101 -> 010 -> 001.
inline const std::array<word, 4>& square_cycle() {
    static const std::array<word, 4> cycle{word::parse("001"), word::parse("110"), word::parse("101"),
                                           word::parse("010")};
    return cycle;
}

inline std::optional<std::size_t> square_position(const word& v) {
    const auto& cycle = square_cycle();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (cycle[i] == v) return i;
    }
    return std::nullopt;
}

// R^steps applied to a square vertex.
inline const word& square_step(const word& v, std::int64_t steps) {
    const auto pos = square_position(v);
    if (!pos) throw error(error_kind::bad_parameter, v.str() + " is not a square vertex");
    const auto next = ((static_cast<std::int64_t>(*pos) + steps) % 4 + 4) % 4;
    return square_cycle()[static_cast<std::size_t>(next)];
}

// A binary length-4 word whose length-3 prefix ends with two different letters.
inline bool is_square_edge(const word& e) {
    return e.alpha() == alphabet::binary() && e.size() == 4 && e[1] != e[2];
}

// Where the edge lands once the forced detour through 100, 000* (or 011,
// 111*) is contracted: a suffix xyy with x != y continues to yyx.
inline word square_target(const word& e) {
    if (!is_square_edge(e)) throw error(error_kind::bad_parameter, e.str() + " is not a square edge");
    auto suffix = e.suffix(3);
    if (suffix[1] != suffix[2]) return suffix;
    return word({suffix[1], suffix[1], suffix[0]}, e.alpha());
}

// +1 for a quarter turn along R, -1 against it.
inline int orientation(const word& e) {
    const auto source = e.prefix(3);
    const auto target = square_target(e);
    if (target == square_step(source, 1)) return +1;
    if (target == square_step(source, -1)) return -1;
    throw error(error_kind::broken_projection, "edge " + e.str() + " is not a quarter turn");
}

// --- classification of the sixteen length-4 words --------------------------

struct length4_classification {
    std::vector<word> palindromes;
    std::vector<word_pair> run_pairs;        // mirror pairs containing a run of length 3
    std::vector<word_pair> grandsart_pairs;  // (positive, negative), ordered along R from 001
};

inline length4_classification classify_length4() {
    length4_classification out;
    std::vector<word_pair> mirror_pairs;
    for (const auto& w : enumerate_words(alphabet::binary(), 4)) {
        const auto u = w.linear();
        if (is_palindrome(u)) {
            out.palindromes.push_back(u);
            continue;
        }
        const auto v = mirror(u);
        if (u > v) mirror_pairs.emplace_back(u, v);
    }

    for (auto& [u, v] : mirror_pairs) {
        if (detail::has_run_of_three(u)) {
            out.run_pairs.emplace_back(u, v);
        } else {
            if (orientation(u) < 0) std::swap(u, v);
            out.grandsart_pairs.emplace_back(u, v);
        }
    }
    std::sort(out.run_pairs.begin(), out.run_pairs.end());
    std::sort(out.grandsart_pairs.begin(), out.grandsart_pairs.end(), [](const word_pair& a, const word_pair& b) {
        return *square_position(a.first.prefix(3)) < *square_position(b.first.prefix(3));
    });
    return out;
}

namespace detail {

// Per length-4 edge index: which Grandsart pair it belongs to (or -1) and its sign.
struct square_edge_table {
    std::array<int, 16> pair{};
    std::array<int, 16> sign{};
    std::array<std::uint64_t, 4> positive{};
    std::array<std::uint64_t, 4> negative{};

    square_edge_table() {
        pair.fill(-1);
        sign.fill(0);
        const auto classification = classify_length4();
        const auto sigma = alphabet::binary();
        for (std::size_t i = 0; i < classification.grandsart_pairs.size(); ++i) {
            const auto& [plus, minus] = classification.grandsart_pairs[i];
            positive[i] = word_index(plus.letters(), sigma);
            negative[i] = word_index(minus.letters(), sigma);
            pair[positive[i]] = pair[negative[i]] = static_cast<int>(i);
            sign[positive[i]] = +1;
            sign[negative[i]] = -1;
        }
    }
};

inline const square_edge_table& edge_table() {
    static const square_edge_table table;
    return table;
}

}  // namespace detail

// --- the four differences --------------------------------------------------

using difference_tuple = std::array<std::int64_t, 4>;

inline difference_tuple grandsart_differences(const circular_word& w) {
    detail::require_binary(w);
    const auto counts = occurrence_vector_of(w, 4);
    const auto& table = detail::edge_table();
    difference_tuple diffs{};
    for (std::size_t i = 0; i < 4; ++i) {
        diffs[i] = static_cast<std::int64_t>(counts[table.positive[i]]) -
                   static_cast<std::int64_t>(counts[table.negative[i]]);
    }
    return diffs;
}

// Positive-minus-negative count for each Grandsart pair over an edge list.
inline difference_tuple pair_differences(std::span<const word> edges) {
    const auto& table = detail::edge_table();
    difference_tuple diffs{};
    for (const auto& e : edges) {
        if (!is_square_edge(e)) continue;
        const auto index = word_index(e.letters(), e.alpha());
        diffs[static_cast<std::size_t>(table.pair[index])] += table.sign[index];
    }
    return diffs;
}

// --- projection onto the square --------------------------------------------

struct square_projection {
    std::optional<word> start_vertex;  // empty when no square edge occurs
    std::vector<word> retained_edges;
    std::vector<int> epsilons;

    std::int64_t turn_sum() const {
        std::int64_t sum = 0;
        for (int e : epsilons) sum += e;
        return sum;
    }
};

// Each retained edge must start where the previous one lands on the square,
// wrapping around from the last edge to the first.
inline bool is_closed_square_path(std::span<const word> edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& next = edges[(i + 1) % edges.size()];
        if (!is_square_edge(edges[i]) || !is_square_edge(next)) return false;
        if (square_target(edges[i]) != next.prefix(3)) return false;
    }
    return true;
}

inline square_projection project_to_square(const circular_word& w) {
    detail::require_binary(w);
    const de_bruijn_graph b23(alphabet::binary(), 3);
    const auto path = path_of_word(b23, w);
    const auto& table = detail::edge_table();

    square_projection out;
    for (const auto& e : path.edges) {
        const auto index = word_index(e.letters(), e.alpha());
        if (table.pair[index] < 0) continue;
        out.retained_edges.push_back(e);
        out.epsilons.push_back(table.sign[index]);
    }
    if (!out.retained_edges.empty()) out.start_vertex = out.retained_edges.front().prefix(3);
    if (!is_closed_square_path(out.retained_edges)) {
        throw error(error_kind::broken_projection, "square path of " + w.str() + " is not continuous");
    }
    return out;
}

// Cancels adjacent opposite quarter turns, cyclically, until every remaining
// edge turns the same way. Each cancelled pair is a palindromic pair, so the
// pair differences are unchanged.
inline square_projection simplify(const square_projection& p) {
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < p.retained_edges.size(); ++i) {
        if (!stack.empty() && p.epsilons[stack.back()] == -p.epsilons[i]) {
            stack.pop_back();
        } else {
            stack.push_back(i);
        }
    }
    std::size_t lo = 0;
    std::size_t hi = stack.size();
    while (hi - lo >= 2 && p.epsilons[stack[lo]] == -p.epsilons[stack[hi - 1]]) {
        ++lo;
        --hi;
    }

    square_projection out;
    for (std::size_t i = lo; i < hi; ++i) {
        out.retained_edges.push_back(p.retained_edges[stack[i]]);
        out.epsilons.push_back(p.epsilons[stack[i]]);
    }
    if (!out.retained_edges.empty()) out.start_vertex = out.retained_edges.front().prefix(3);
    return out;
}

inline std::int64_t winding_number_graph(const circular_word& w) {
    const auto sum = project_to_square(w).turn_sum();
    if (sum % 4 != 0) {
        throw error(error_kind::broken_projection,
                    "turn sum " + std::to_string(sum) + " of " + w.str() + " is not a multiple of 4");
    }
    return sum / 4;
}

// Even-length maximal blocks of isolated letters starting with 0, minus those
// starting with 1. A word with no run of length >= 2 gives 0.
inline std::int64_t winding_number_decomposition(const circular_word& w) {
    detail::require_binary(w);
    const auto decomposition = decompose_blocks(w);
    if (decomposition.whole_word_alternating) return 0;
    std::int64_t k = 0;
    for (const auto& b : decomposition.blocks) {
        if (b.kind != block_kind::isolated || b.length % 2 != 0) continue;
        k += b.first_letter == 0 ? 1 : -1;
    }
    return k;
}

// The shortened graph: the four square vertices and the eight Grandsart edges,
// each drawn from its source to its contracted target. Negative quarter turns
// are dashed.
inline std::string export_square_dot() {
    std::vector<word> edges;
    for (const auto& [plus, minus] : classify_length4().grandsart_pairs) {
        edges.push_back(plus);
        edges.push_back(minus);
    }
    std::sort(edges.begin(), edges.end());
    std::vector<word> vertices(square_cycle().begin(), square_cycle().end());
    std::sort(vertices.begin(), vertices.end());

    std::string out = "digraph \"square\" {\n  node [shape=doublecircle];\n";
    for (const auto& v : vertices) out += "  \"" + v.str() + "\";\n";
    for (const auto& e : edges) {
        out += "  \"" + e.prefix(3).str() + "\" -> \"" + square_target(e).str() + "\" [label=\"" + e.str() + "\"";
        if (orientation(e) < 0) out += ", style=dashed";
        out += "];\n";
    }
    out += "}\n";
    return out;
}

// --- report ----------------------------------------------------------------

struct grandsart_report {
    circular_word subject;
    difference_tuple diffs;
    std::int64_t k_graph;
    std::int64_t k_decomposition;
    bool consistent;
};

inline grandsart_report grandsart_report_for(const circular_word& w) {
    const auto diffs = grandsart_differences(w);
    const auto k_graph = winding_number_graph(w);
    const auto k_decomposition = winding_number_decomposition(w);
    const bool consistent =
        std::all_of(diffs.begin(), diffs.end(), [&](std::int64_t d) { return d == k_graph; }) &&
        k_decomposition == k_graph;
    return grandsart_report{w, diffs, k_graph, k_decomposition, consistent};
}

}  // namespace grandsart
