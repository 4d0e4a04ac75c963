#pragma once

// De Bruijn graphs B(d, n): vertices are the d^n words of length n, edges the
// d^(n+1) words of length n+1, each edge running from its length-n prefix to
// its length-n suffix.
//
// Vertices and edges are identified with their lexicographic index, so the
// graph itself is implicit: source(e) = e / d and target(e) = e mod d^n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "grandsart/core.hpp"
#include "grandsart/words.hpp"

namespace grandsart {

class de_bruijn_graph {
public:
    de_bruijn_graph(alphabet sigma, std::size_t order, std::uint64_t bound = default_size_bound)
        : sigma_(sigma), order_(order) {
        if (order == 0) throw error(error_kind::bad_parameter, "De Bruijn order must be at least 1");
        edge_count_ = checked_power(sigma.size(), order + 1, bound);
        vertex_count_ = edge_count_ / sigma.size();
    }

    alphabet alpha() const noexcept { return sigma_; }
    std::size_t order() const noexcept { return order_; }
    std::uint64_t vertex_count() const noexcept { return vertex_count_; }
    std::uint64_t edge_count() const noexcept { return edge_count_; }

    std::uint64_t source(std::uint64_t edge) const noexcept { return edge / sigma_.size(); }
    std::uint64_t target(std::uint64_t edge) const noexcept { return edge % vertex_count_; }
    std::uint64_t out_edge(std::uint64_t vertex, letter a) const noexcept { return vertex * sigma_.size() + a; }
    std::uint64_t in_edge(letter a, std::uint64_t vertex) const noexcept { return a * vertex_count_ + vertex; }

    word vertex(std::uint64_t index) const { return word_at(index, order_, sigma_); }
    word edge(std::uint64_t index) const { return word_at(index, order_ + 1, sigma_); }

    std::uint64_t vertex_index(const word& u) const { return checked_index(u, order_, "vertex"); }
    std::uint64_t edge_index(const word& u) const { return checked_index(u, order_ + 1, "edge"); }

private:
    std::uint64_t checked_index(const word& u, std::size_t length, const char* what) const {
        if (u.alpha() != sigma_ || u.size() != length) {
            throw error(error_kind::alphabet_mismatch,
                        std::string(what) + " label " + u.str() + " does not belong to B(" +
                            std::to_string(sigma_.size()) + "," + std::to_string(order_) + ")");
        }
        return word_index(u.letters(), sigma_);
    }

    alphabet sigma_;
    std::size_t order_;
    std::uint64_t vertex_count_ = 0;
    std::uint64_t edge_count_ = 0;
};

inline de_bruijn_graph build_graph(std::size_t d, std::size_t n, std::uint64_t bound = default_size_bound) {
    return de_bruijn_graph(alphabet{d}, n, bound);
}

// --- closed paths ----------------------------------------------------------

// vertices[i] and edges[i] are the factors of length n and n+1 at position i.
struct closed_path {
    std::vector<word> vertices;
    std::vector<word> edges;
};

inline closed_path path_of_word(const de_bruijn_graph& g, const circular_word& w) {
    if (w.alpha() != g.alpha()) {
        throw error(error_kind::alphabet_mismatch, "word " + w.str() + " does not match the graph alphabet");
    }
    closed_path path;
    path.vertices.reserve(w.size());
    path.edges.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        path.vertices.push_back(w.factor(static_cast<std::int64_t>(i), g.order()));
        path.edges.push_back(w.factor(static_cast<std::int64_t>(i), g.order() + 1));
    }
    return path;
}

// --- Kirchhoff law ---------------------------------------------------------

struct vertex_residual {
    word vertex;
    std::int64_t out_residual;  // |W|_U - sum_a |W|_{Ua}
    std::int64_t in_residual;   // |W|_U - sum_a |W|_{aU}
    std::uint64_t throughput;   // |W|_U
};

struct kirchhoff_report {
    std::size_t order = 0;
    std::vector<vertex_residual> residuals;

    bool balanced() const {
        return std::all_of(residuals.begin(), residuals.end(),
                           [](const vertex_residual& r) { return r.out_residual == 0 && r.in_residual == 0; });
    }

    std::optional<vertex_residual> first_violation() const {
        for (const auto& r : residuals) {
            if (r.out_residual != 0 || r.in_residual != 0) return r;
        }
        return std::nullopt;
    }
};

inline kirchhoff_report verify_kirchhoff(const circular_word& w, std::size_t n,
                                         std::uint64_t bound = default_size_bound) {
    const de_bruijn_graph g(w.alpha(), n, bound);
    const auto vertex_counts = occurrence_vector_of(w, n, bound);
    const auto edge_counts = occurrence_vector_of(w, n + 1, bound);

    kirchhoff_report report;
    report.order = n;
    report.residuals.reserve(g.vertex_count());
    for (std::uint64_t v = 0; v < g.vertex_count(); ++v) {
        std::int64_t out_sum = 0;
        std::int64_t in_sum = 0;
        for (std::size_t a = 0; a < w.alpha().size(); ++a) {
            out_sum += static_cast<std::int64_t>(edge_counts[g.out_edge(v, static_cast<letter>(a))]);
            in_sum += static_cast<std::int64_t>(edge_counts[g.in_edge(static_cast<letter>(a), v)]);
        }
        const auto through = vertex_counts[v];
        report.residuals.push_back(vertex_residual{g.vertex(v), static_cast<std::int64_t>(through) - out_sum,
                                                   static_cast<std::int64_t>(through) - in_sum, through});
    }
    return report;
}

// --- undirected structure --------------------------------------------------

namespace detail {

class disjoint_sets {
public:
    explicit disjoint_sets(std::size_t size) : parent_(size), components_(size) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // False when a and b were already connected.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        --components_;
        return true;
    }

    std::size_t components() const noexcept { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::size_t components_;
};

}  // namespace detail

inline std::size_t connected_components(const de_bruijn_graph& g) {
    detail::disjoint_sets sets(g.vertex_count());
    for (std::uint64_t e = 0; e < g.edge_count(); ++e) sets.unite(g.source(e), g.target(e));
    return sets.components();
}

// |E| - |V| + components: the dimension of the cycle space.
inline std::int64_t cyclomatic_number(const de_bruijn_graph& g) {
    return static_cast<std::int64_t>(g.edge_count()) - static_cast<std::int64_t>(g.vertex_count()) +
           static_cast<std::int64_t>(connected_components(g));
}

// Orientation is ignored; a loop is a cycle, so no tree contains one.
inline bool is_spanning_tree(const de_bruijn_graph& g, std::span<const word> edge_labels) {
    std::set<std::uint64_t> edges;
    for (const auto& label : edge_labels) edges.insert(g.edge_index(label));
    if (edges.size() + 1 != g.vertex_count()) return false;
    detail::disjoint_sets sets(g.vertex_count());
    for (auto e : edges) {
        if (!sets.unite(g.source(e), g.target(e))) return false;
    }
    return sets.components() == 1;
}

// --- DOT export ------------------------------------------------------------

struct dot_options {
    std::string name = "";
    std::vector<word> highlight_edges;  // drawn red and bold
    std::vector<word> marked_vertices;  // drawn as double circles
};

namespace detail {

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace detail

// Nodes and edges are written in lexicographic label order, so equal inputs
// always produce identical text.
inline std::string export_dot(const de_bruijn_graph& g, const dot_options& options = {}) {
    std::set<std::uint64_t> highlighted;
    for (const auto& e : options.highlight_edges) highlighted.insert(g.edge_index(e));
    std::set<std::uint64_t> marked;
    for (const auto& v : options.marked_vertices) marked.insert(g.vertex_index(v));

    const auto name = options.name.empty()
                          ? "B(" + std::to_string(g.alpha().size()) + "," + std::to_string(g.order()) + ")"
                          : options.name;

    std::ostringstream out;
    out << "digraph " << detail::quoted(name) << " {\n";
    out << "  node [shape=circle];\n";
    for (std::uint64_t v = 0; v < g.vertex_count(); ++v) {
        out << "  " << detail::quoted(g.vertex(v).str());
        if (marked.contains(v)) out << " [shape=doublecircle]";
        out << ";\n";
    }
    for (std::uint64_t e = 0; e < g.edge_count(); ++e) {
        out << "  " << detail::quoted(g.vertex(g.source(e)).str()) << " -> "
            << detail::quoted(g.vertex(g.target(e)).str()) << " [label=" << detail::quoted(g.edge(e).str());
        if (highlighted.contains(e)) out << ", color=red, penwidth=2";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

inline std::string export_dot(const de_bruijn_graph& g, const closed_path& highlight) {
    dot_options options;
    options.highlight_edges = highlight.edges;
    return export_dot(g, options);
}

}  // namespace grandsart
