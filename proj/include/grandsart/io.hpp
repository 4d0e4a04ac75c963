#pragma once

// Flat JSON / CSV records for reports and occurrence matrices.

#include <cstddef>
#include <ostream>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "grandsart/invariants.hpp"
#include "grandsart/span.hpp"
#include "grandsart/words.hpp"

namespace grandsart {

inline nlohmann::ordered_json to_json(const grandsart_report& r) {
    return nlohmann::ordered_json{
        {"word", r.subject.str()}, {"d1", r.diffs[0]},        {"d2", r.diffs[1]},
        {"d3", r.diffs[2]},        {"d4", r.diffs[3]},        {"k_graph", r.k_graph},
        {"k_decomp", r.k_decomposition}, {"consistent", r.consistent},
    };
}

inline constexpr const char* report_csv_header = "word,d1,d2,d3,d4,k_graph,k_decomp,consistent";

inline std::string to_csv_row(const grandsart_report& r) {
    std::string out = r.subject.str();
    for (auto d : r.diffs) out += "," + std::to_string(d);
    out += "," + std::to_string(r.k_graph) + "," + std::to_string(r.k_decomposition);
    out += r.consistent ? ",true" : ",false";
    return out;
}

inline nlohmann::ordered_json to_json(const span_report& r) {
    return nlohmann::ordered_json{
        {"d", r.d},
        {"l", r.l},
        {"max_len", r.max_len},
        {"rows", r.rows},
        {"columns", r.columns},
        {"rank", r.rank},
        {"predicted", r.predicted},
        {"relations", r.relations},
        {"rank_by_length", r.rank_by_length},
        {"saturated", r.saturated},
    };
}

inline nlohmann::ordered_json to_json(const basis_report& r) {
    return nlohmann::ordered_json{
        {"d", r.d},       {"l", r.l},
        {"basis", r.basis}, {"rank", r.rank},
        {"predicted", r.predicted}, {"spans_all", r.spans_all},
        {"ok", r.ok()},
    };
}

inline nlohmann::ordered_json to_json(const spanning_set_report& r) {
    nlohmann::ordered_json set = nlohmann::ordered_json::array();
    for (const auto& u : r.set) set.push_back(u.str());
    return nlohmann::ordered_json{
        {"set", set},           {"rank", r.rank},
        {"predicted", r.predicted}, {"spans_all", r.spans_all},
        {"forms_tree", r.forms_tree}, {"ok", r.ok()},
    };
}

// Header "word,<column names>", then one row per word: its digit string and counts.
inline void write_csv(std::ostream& out, std::span<const circular_word> words, const functional_family& family,
                      const integer_matrix& m) {
    out << "word";
    for (std::size_t j = 0; j < family.size(); ++j) out << ',' << family.column_name(j);
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << words[i].str();
        for (const auto& x : m.row(i)) out << ',' << x;
        out << '\n';
    }
}

}  // namespace grandsart
