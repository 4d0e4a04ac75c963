#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes to the given streams, so it can be driven from tests.
//
// Exit codes: 0 success, 1 a checked property failed (the offending word is
// printed), 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grandsart/grandsart.hpp"

namespace grandsart::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_usage = 2;

inline constexpr std::uint64_t default_seed = 2010;
inline constexpr std::size_t max_verify_length = 24;

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline std::vector<word> parse_list(const std::string& text, alphabet sigma) {
    std::vector<word> out;
    for (const auto& item : split_list(text)) out.push_back(word::parse(item, sigma));
    return out;
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

// --- count -----------------------------------------------------------------

struct count_args {
    std::string subject;
    std::string factor;
    std::optional<std::size_t> d;
};

inline int cmd_count(const count_args& a, std::ostream& out) {
    const auto sigma = a.d ? alphabet{*a.d} : infer_alphabet({a.subject, a.factor});
    const auto w = circular_word::parse(a.subject, sigma);
    const auto u = word::parse(a.factor, sigma);
    out << count_occurrences(w, u) << '\n';
    return exit_ok;
}

// --- report ----------------------------------------------------------------

struct report_args {
    std::string subject;
    std::string format = "text";
};

inline int cmd_report(const report_args& a, std::ostream& out) {
    const auto w = circular_word::parse(a.subject);
    if (w.alpha() != alphabet::binary()) {
        throw error(error_kind::alphabet_mismatch, "report needs a binary word, got " + a.subject);
    }
    const auto r = grandsart_report_for(w);
    if (a.format == "json") {
        out << to_json(r).dump() << '\n';
    } else if (a.format == "csv") {
        out << report_csv_header << '\n' << to_csv_row(r) << '\n';
    } else {
        out << "word        " << r.subject.str() << '\n'
            << "diffs       " << r.diffs[0] << ' ' << r.diffs[1] << ' ' << r.diffs[2] << ' ' << r.diffs[3] << '\n'
            << "k_graph     " << r.k_graph << '\n'
            << "k_decomp    " << r.k_decomposition << '\n'
            << "consistent  " << yes_no(r.consistent) << '\n';
    }
    return r.consistent ? exit_ok : exit_violation;
}

// --- verify ----------------------------------------------------------------

struct verify_args {
    std::size_t max_len = 0;
    std::size_t random = 0;
    std::uint64_t seed = default_seed;
    std::size_t rand_len = 64;
    std::string format = "text";
};

// Empty when the word passes every check, otherwise the reason it failed.
inline std::optional<std::string> check_word(const circular_word& w) {
    try {
        const auto r = grandsart_report_for(w);
        if (!r.consistent) return "inconsistent report " + to_csv_row(r);
        const auto kirchhoff = verify_kirchhoff(w, 3);
        if (auto bad = kirchhoff.first_violation()) return "Kirchhoff residual at vertex " + bad->vertex.str();
    } catch (const error& e) {
        if (e.kind() != error_kind::broken_projection) throw;
        return e.what();
    }
    return std::nullopt;
}

using word_check = std::function<std::optional<std::string>(const circular_word&)>;

inline int cmd_verify(const verify_args& a, std::ostream& out, const word_check& check = check_word) {
    if (a.max_len == 0 || a.max_len > max_verify_length) {
        throw error(error_kind::bad_parameter,
                    "--max-len must be in [1, " + std::to_string(max_verify_length) + "]");
    }
    if (a.random > 0 && a.rand_len == 0) throw error(error_kind::bad_parameter, "--rand-len must be positive");

    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::optional<std::pair<std::string, std::string>> first;
    const auto visit = [&](const circular_word& w) {
        ++checked;
        if (auto reason = check(w)) {
            ++violations;
            if (!first) first.emplace(w.str(), *reason);
        }
    };

    for (std::size_t len = 1; len <= a.max_len; ++len) {
        for (const auto& w : enumerate_words(alphabet::binary(), len)) visit(w);
    }
    // One bit per letter straight from the engine, so the stream is the same on
    // every platform.
    std::mt19937_64 engine(a.seed);
    for (std::size_t i = 0; i < a.random; ++i) {
        std::vector<letter> letters(a.rand_len);
        for (auto& x : letters) x = static_cast<letter>(engine() & 1u);
        visit(circular_word(std::move(letters), alphabet::binary()));
    }

    if (a.format == "json") {
        nlohmann::ordered_json j{{"checked", checked}, {"violations", violations}};
        j["counterexample"] = first ? nlohmann::ordered_json(first->first) : nlohmann::ordered_json(nullptr);
        if (first) j["reason"] = first->second;
        out << j.dump() << '\n';
    } else {
        out << checked << " words checked, " << violations << " violations\n";
        if (first) out << "counterexample: " << first->first << " (" << first->second << ")\n";
    }
    return violations == 0 ? exit_ok : exit_violation;
}

// --- rank ------------------------------------------------------------------

struct rank_args {
    std::size_t d = 2;
    std::size_t l = 4;
    std::optional<std::size_t> max_len;
    bool cks = false;
    bool spanning_set = false;
    std::string format = "text";
    std::string csv_path;
};

inline int cmd_rank(const rank_args& a, std::ostream& out, std::ostream& err) {
    const auto max_len = a.max_len.value_or(default_max_len(a.l));
    if (a.spanning_set && (a.d != 2 || a.l != 4)) {
        throw error(error_kind::bad_parameter, "--spanning-set is defined for --d 2 --l 4 only");
    }
    const auto report = span_dimension(a.d, a.l, max_len);
    bool pass = true;
    std::optional<spanning_set_report> spanning;
    std::optional<basis_report> cks;
    if (a.spanning_set) {
        spanning = verify_spanning_set(max_len);
        pass = pass && spanning->ok();
    }
    if (a.cks) {
        cks = verify_cks_basis(a.d, a.l, max_len);
        pass = pass && cks->ok();
    }
    if (!a.csv_path.empty()) {
        std::ofstream file(a.csv_path);
        if (!file) throw error(error_kind::bad_parameter, "cannot write " + a.csv_path);
        const auto words = sample_words(alphabet{a.d}, max_len);
        const auto family = functional_family::of_length(alphabet{a.d}, a.l);
        write_csv(file, words, family, occurrence_matrix(words, family));
    }
    if (!report.saturated) {
        err << "warning: rank not saturated at max_len " << max_len << "; try a larger --max-len\n";
    }

    if (a.format == "json") {
        auto j = to_json(report);
        if (spanning) j["spanning_set"] = to_json(*spanning);
        if (cks) j["cks"] = to_json(*cks);
        out << j.dump() << '\n';
    } else {
        out << "d=" << report.d << " l=" << report.l << " max_len=" << report.max_len << " rows=" << report.rows
            << " columns=" << report.columns << '\n'
            << "rank " << report.rank << '\n'
            << "predicted " << report.predicted << '\n'
            << "relations " << report.relations << '\n'
            << "rank by length";
        for (auto r : report.rank_by_length) out << ' ' << r;
        out << '\n' << "saturated " << yes_no(report.saturated) << '\n';
        if (spanning) {
            out << "spanning set {";
            for (std::size_t i = 0; i < spanning->set.size(); ++i) out << (i ? "," : "") << spanning->set[i].str();
            out << "}: rank " << spanning->rank << ", spans all " << yes_no(spanning->spans_all) << ", tree "
                << yes_no(spanning->forms_tree) << ", " << (spanning->ok() ? "ok" : "FAILED") << '\n';
        }
        if (cks) {
            out << "cks basis {";
            for (std::size_t i = 0; i < cks->basis.size(); ++i) out << (i ? "," : "") << cks->basis[i];
            out << "}: rank " << cks->rank << ", predicted " << cks->predicted << ", spans all "
                << yes_no(cks->spans_all) << ", " << (cks->ok() ? "ok" : "FAILED") << '\n';
        }
    }
    return pass ? exit_ok : exit_violation;
}

// --- express ---------------------------------------------------------------

struct express_args {
    std::string target;
    std::string basis;
    std::optional<std::size_t> d;
    bool length_functional = false;
    std::optional<std::size_t> max_len;
};

inline int cmd_express(const express_args& a, std::ostream& out) {
    const auto sigma = a.d ? alphabet{*a.d} : infer_alphabet({a.target, a.basis});
    const auto target = word::parse(a.target, sigma);
    const auto family = a.basis.empty() ? functional_family::loop_and_one_prefixed()
                                        : functional_family(sigma, parse_list(a.basis, sigma), a.length_functional);
    if (family.alpha() != sigma) throw error(error_kind::alphabet_mismatch, "default basis is binary");
    const auto coefficients = express_in_span(target, family, a.max_len);
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        out << family.column_name(j) << ' ' << format_rational(coefficients[j]) << '\n';
    }
    return exit_ok;
}

// --- dot -------------------------------------------------------------------

struct dot_args {
    std::size_t d = 2;
    std::size_t n = 3;
    std::string path_word;
    std::string highlight;
    std::string mark;
    bool square = false;
    std::string output;
};

inline int cmd_dot(const dot_args& a, std::ostream& out) {
    std::string text;
    if (a.square) {
        text = export_square_dot();
    } else {
        const de_bruijn_graph g(alphabet{a.d}, a.n);
        dot_options options;
        if (!a.path_word.empty()) options.highlight_edges = path_of_word(g, circular_word::parse(a.path_word, g.alpha())).edges;
        for (auto& e : parse_list(a.highlight, g.alpha())) options.highlight_edges.push_back(std::move(e));
        options.marked_vertices = parse_list(a.mark, g.alpha());
        text = export_dot(g, options);
    }
    if (a.output.empty()) {
        out << text;
    } else {
        std::ofstream file(a.output);
        if (!file) throw error(error_kind::bad_parameter, "cannot write " + a.output);
        file << text;
    }
    return exit_ok;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Occurrence counts, winding invariants and De Bruijn graphs of circular words", "grandsart"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"text", "json", "csv"};

    detail::count_args count;
    auto* count_cmd = app.add_subcommand("count", "Count circular occurrences of FACTOR in WORD");
    count_cmd->add_option("word", count.subject, "circular word as a digit string")->required();
    count_cmd->add_option("factor", count.factor, "factor as a digit string")->required();
    count_cmd->add_option("--d", count.d, "alphabet size (default: largest digit + 1)");

    detail::report_args report;
    auto* report_cmd = app.add_subcommand("report", "Occurrence differences and winding number of a binary word");
    report_cmd->add_option("word", report.subject, "binary circular word")->required();
    report_cmd->add_option("--format", report.format)->check(CLI::IsMember(formats));

    detail::verify_args verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check every binary word up to a length (and random words)");
    verify_cmd->add_option("--max-len", verify.max_len, "enumerate all words of length 1..N")->required();
    verify_cmd->add_option("--random", verify.random, "number of extra random words");
    verify_cmd->add_option("--seed", verify.seed, "seed for random words")->capture_default_str();
    verify_cmd->add_option("--rand-len", verify.rand_len, "length of random words")->capture_default_str();
    verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember(std::vector<std::string>{"text", "json"}));

    detail::rank_args rank;
    auto* rank_cmd = app.add_subcommand("rank", "Exact rank of the length-l occurrence functionals");
    rank_cmd->add_option("--d", rank.d, "alphabet size")->capture_default_str();
    rank_cmd->add_option("--l", rank.l, "factor length")->capture_default_str();
    rank_cmd->add_option("--max-len", rank.max_len, "longest sample word (default 2l+2)");
    rank_cmd->add_flag("--cks", rank.cks, "check the nonzero-first-and-last-letter basis");
    rank_cmd->add_flag("--spanning-set", rank.spanning_set, "check the 0000/1V spanning set (d=2, l=4)");
    rank_cmd->add_option("--format", rank.format)->check(CLI::IsMember(std::vector<std::string>{"text", "json"}));
    rank_cmd->add_option("--csv", rank.csv_path, "also write the occurrence matrix as CSV");

    detail::express_args express;
    auto* express_cmd = app.add_subcommand("express", "Write |W|_TARGET as a combination of basis functionals");
    express_cmd->add_option("target", express.target, "target factor")->required();
    express_cmd->add_option("--basis", express.basis, "comma-separated factors (default 0000 and 1V)");
    express_cmd->add_flag("--length", express.length_functional, "include the length functional |W|");
    express_cmd->add_option("--d", express.d, "alphabet size");
    express_cmd->add_option("--max-len", express.max_len, "longest sample word");

    detail::dot_args dot;
    auto* dot_cmd = app.add_subcommand("dot", "Emit a De Bruijn graph in DOT format");
    dot_cmd->add_option("--d", dot.d, "alphabet size")->capture_default_str();
    dot_cmd->add_option("--n", dot.n, "vertex length")->capture_default_str();
    dot_cmd->add_option("--word", dot.path_word, "highlight the closed path of this word");
    dot_cmd->add_option("--highlight", dot.highlight, "comma-separated edge labels to highlight");
    dot_cmd->add_option("--mark", dot.mark, "comma-separated vertices drawn as double circles");
    dot_cmd->add_flag("--square", dot.square, "emit the four-vertex shortened graph instead");
    dot_cmd->add_option("--output,-o", dot.output, "write to a file instead of standard output");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        if (count_cmd->parsed()) return detail::cmd_count(count, out);
        if (report_cmd->parsed()) return detail::cmd_report(report, out);
        if (verify_cmd->parsed()) return detail::cmd_verify(verify, out);
        if (rank_cmd->parsed()) return detail::cmd_rank(rank, out, err);
        if (express_cmd->parsed()) return detail::cmd_express(express, out);
        if (dot_cmd->parsed()) return detail::cmd_dot(dot, out);
    } catch (const error& e) {
        if (e.kind() == error_kind::broken_projection) {
            err << "internal error: " << e.what() << '\n';
            return exit_violation;
        }
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace grandsart::cli
