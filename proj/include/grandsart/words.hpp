#pragma once

// Finite and circular words over a d-letter alphabet, circular occurrence
// counting, runs and the isolated-letter / long-run block decomposition.
//
// A circular word W of length n is indexed by Z/nZ. The factor U occurs at
// position i (0 <= i < n) when U_j = W_{(i+j) mod n} for every j < |U|, so
// factors longer than W are read off the periodic word WWW...

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grandsart/core.hpp"

namespace grandsart {

namespace detail {

inline void check_letters(std::span<const letter> letters, alphabet sigma) {
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (!sigma.contains(letters[i])) {
            throw error(error_kind::bad_letter,
                        "letter " + std::to_string(letters[i]) + " at index " + std::to_string(i) +
                            " is outside an alphabet of size " + std::to_string(sigma.size()));
        }
    }
}

inline std::vector<letter> parse_digits(std::string_view digits) {
    std::vector<letter> letters;
    letters.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw error(error_kind::parse_error,
                        "expected a digit string, found '" + std::string(1, c) + "'");
        }
        letters.push_back(static_cast<letter>(c - '0'));
    }
    return letters;
}

inline std::string format_digits(std::span<const letter> letters) {
    std::string out;
    out.reserve(letters.size());
    for (letter a : letters) {
        out.push_back(a < 10 ? static_cast<char>('0' + a) : static_cast<char>('a' + (a - 10)));
    }
    return out;
}

}  // namespace detail

// Smallest alphabet holding every digit of the given strings (at least binary).
inline alphabet infer_alphabet(std::initializer_list<std::string_view> digit_strings) {
    std::size_t top = 0;
    for (auto s : digit_strings) {
        for (char c : s) {
            if (c >= '0' && c <= '9') top = std::max<std::size_t>(top, static_cast<std::size_t>(c - '0'));
        }
    }
    return alphabet{std::max<std::size_t>(2, top + 1)};
}

class word {
public:
    word() = default;

    explicit word(std::vector<letter> letters, alphabet sigma = alphabet::binary())
        : sigma_(sigma), letters_(std::move(letters)) {
        detail::check_letters(letters_, sigma_);
    }

    static word parse(std::string_view digits, std::optional<alphabet> sigma = std::nullopt) {
        return word(detail::parse_digits(digits), sigma.value_or(infer_alphabet({digits})));
    }

    alphabet alpha() const noexcept { return sigma_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    letter operator[](std::size_t i) const { return letters_[i]; }
    std::span<const letter> letters() const noexcept { return letters_; }

    letter front() const { return letters_.front(); }
    letter back() const { return letters_.back(); }

    word prefix(std::size_t len) const {
        return word(std::vector<letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(len)), sigma_);
    }
    word suffix(std::size_t len) const {
        return word(std::vector<letter>(letters_.end() - static_cast<std::ptrdiff_t>(len), letters_.end()), sigma_);
    }

    std::string str() const { return detail::format_digits(letters_); }

    friend bool operator==(const word&, const word&) = default;
    friend std::strong_ordering operator<=>(const word& a, const word& b) {
        if (auto c = a.sigma_.size() <=> b.sigma_.size(); c != 0) return c;
        return a.letters_ <=> b.letters_;
    }

private:
    alphabet sigma_;
    std::vector<letter> letters_;
};

class circular_word {
public:
    circular_word(std::vector<letter> letters, alphabet sigma) : sigma_(sigma), letters_(std::move(letters)) {
        if (letters_.empty()) throw error(error_kind::empty_word, "a circular word needs at least one letter");
        detail::check_letters(letters_, sigma_);
    }

    static circular_word parse(std::string_view digits, std::optional<alphabet> sigma = std::nullopt) {
        return circular_word(detail::parse_digits(digits), sigma.value_or(infer_alphabet({digits})));
    }

    alphabet alpha() const noexcept { return sigma_; }
    std::size_t size() const noexcept { return letters_.size(); }
    std::span<const letter> letters() const noexcept { return letters_; }

    // Index taken modulo the length; negative indices wrap as well.
    letter operator[](std::int64_t i) const {
        const auto n = static_cast<std::int64_t>(letters_.size());
        const auto r = ((i % n) + n) % n;
        return letters_[static_cast<std::size_t>(r)];
    }

    // Factor of the given length starting at position i.
    word factor(std::int64_t i, std::size_t len) const {
        std::vector<letter> out(len);
        for (std::size_t j = 0; j < len; ++j) out[j] = (*this)[i + static_cast<std::int64_t>(j)];
        return word(std::move(out), sigma_);
    }

    word linear() const { return word(letters_, sigma_); }
    std::string str() const { return detail::format_digits(letters_); }

    friend bool operator==(const circular_word&, const circular_word&) = default;

private:
    alphabet sigma_;
    std::vector<letter> letters_;
};

inline circular_word make_circular(std::span<const letter> letters, alphabet sigma) {
    return circular_word(std::vector<letter>(letters.begin(), letters.end()), sigma);
}

// --- occurrences -----------------------------------------------------------

inline std::uint64_t count_occurrences(const circular_word& w, const word& u) {
    if (u.empty()) throw error(error_kind::empty_factor, "cannot count occurrences of the empty word");
    if (u.alpha() != w.alpha()) {
        throw error(error_kind::alphabet_mismatch, "factor " + u.str() + " and word " + w.str() +
                                                       " use different alphabets");
    }
    const auto n = static_cast<std::int64_t>(w.size());
    std::uint64_t count = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        bool match = true;
        for (std::size_t j = 0; j < u.size() && match; ++j) {
            match = w[i + static_cast<std::int64_t>(j)] == u[j];
        }
        count += match ? 1 : 0;
    }
    return count;
}

// Words of a fixed length are indexed by their base-d value, most significant
// letter first, which is also their lexicographic rank.
inline std::uint64_t word_index(std::span<const letter> letters, alphabet sigma) {
    std::uint64_t index = 0;
    for (letter a : letters) index = index * sigma.size() + a;
    return index;
}

inline word word_at(std::uint64_t index, std::size_t length, alphabet sigma) {
    std::vector<letter> letters(length);
    for (std::size_t j = length; j-- > 0;) {
        letters[j] = static_cast<letter>(index % sigma.size());
        index /= sigma.size();
    }
    return word(std::move(letters), sigma);
}

class occurrence_vector {
public:
    occurrence_vector(alphabet sigma, std::size_t factor_length, std::vector<std::uint64_t> counts)
        : sigma_(sigma), factor_length_(factor_length), counts_(std::move(counts)) {}

    alphabet alpha() const noexcept { return sigma_; }
    std::size_t factor_length() const noexcept { return factor_length_; }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    std::uint64_t operator[](std::uint64_t index) const { return counts_[index]; }

    std::uint64_t count(const word& u) const {
        if (u.size() != factor_length_ || u.alpha() != sigma_) {
            throw error(error_kind::alphabet_mismatch,
                        "factor " + u.str() + " does not belong to this occurrence vector");
        }
        return counts_[word_index(u.letters(), sigma_)];
    }

    std::uint64_t total() const noexcept {
        std::uint64_t sum = 0;
        for (auto c : counts_) sum += c;
        return sum;
    }

    // Factors with a nonzero count, in lexicographic order.
    std::vector<std::pair<word, std::uint64_t>> support() const {
        std::vector<std::pair<word, std::uint64_t>> out;
        for (std::uint64_t i = 0; i < counts_.size(); ++i) {
            if (counts_[i] != 0) out.emplace_back(word_at(i, factor_length_, sigma_), counts_[i]);
        }
        return out;
    }

private:
    alphabet sigma_;
    std::size_t factor_length_;
    std::vector<std::uint64_t> counts_;
};

inline occurrence_vector occurrence_vector_of(const circular_word& w, std::size_t length,
                                              std::uint64_t bound = default_size_bound) {
    if (length == 0) throw error(error_kind::bad_parameter, "factor length must be at least 1");
    const auto sigma = w.alpha();
    const auto size = checked_power(sigma.size(), length, bound);
    std::vector<std::uint64_t> counts(size, 0);
    const auto n = static_cast<std::int64_t>(w.size());
    for (std::int64_t i = 0; i < n; ++i) {
        std::uint64_t index = 0;
        for (std::size_t j = 0; j < length; ++j) index = index * sigma.size() + w[i + static_cast<std::int64_t>(j)];
        ++counts[index];
    }
    return occurrence_vector(sigma, length, std::move(counts));
}

// --- mirror images ---------------------------------------------------------

inline word mirror(const word& u) {
    std::vector<letter> letters(u.letters().rbegin(), u.letters().rend());
    return word(std::move(letters), u.alpha());
}

inline bool is_palindrome(const word& u) {
    return std::equal(u.letters().begin(), u.letters().begin() + static_cast<std::ptrdiff_t>(u.size() / 2),
                      u.letters().rbegin());
}

inline bool is_palindromic_pair(const word& u, const word& v) {
    return u.size() == v.size() && v == mirror(u) && !is_palindrome(u) && !is_palindrome(v);
}

inline circular_word mirror(const circular_word& w) {
    return circular_word(std::vector<letter>(w.letters().rbegin(), w.letters().rend()), w.alpha());
}

// Letter-wise a -> d-1-a; for binary words this exchanges 0 and 1.
inline circular_word complement(const circular_word& w) {
    std::vector<letter> letters(w.letters().begin(), w.letters().end());
    const auto top = static_cast<letter>(w.alpha().size() - 1);
    for (auto& a : letters) a = static_cast<letter>(top - a);
    return circular_word(std::move(letters), w.alpha());
}

// --- conjugacy -------------------------------------------------------------

// rotate(W, s)[i] = W[i + s].
inline circular_word rotate(const circular_word& w, std::int64_t shift) {
    std::vector<letter> letters(w.size());
    for (std::size_t i = 0; i < letters.size(); ++i) letters[i] = w[static_cast<std::int64_t>(i) + shift];
    return circular_word(std::move(letters), w.alpha());
}

// Offset of the lexicographically least rotation (Booth's algorithm).
inline std::size_t least_rotation_offset(const circular_word& w) {
    const auto n = w.size();
    std::vector<std::ptrdiff_t> failure(2 * n, -1);
    std::size_t k = 0;
    const auto at = [&](std::size_t i) { return w[static_cast<std::int64_t>(i)]; };
    for (std::size_t j = 1; j < 2 * n; ++j) {
        std::ptrdiff_t i = failure[j - k - 1];
        while (i != -1 && at(j) != at(k + static_cast<std::size_t>(i) + 1)) {
            if (at(j) < at(k + static_cast<std::size_t>(i) + 1)) k = j - static_cast<std::size_t>(i) - 1;
            i = failure[static_cast<std::size_t>(i)];
        }
        if (i == -1 && at(j) != at(k)) {
            if (at(j) < at(k)) k = j;
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    return k % n;
}

inline circular_word canonical_rotation(const circular_word& w) {
    return rotate(w, static_cast<std::int64_t>(least_rotation_offset(w)));
}

// --- runs and blocks -------------------------------------------------------

struct run {
    letter value;
    std::size_t start;
    std::size_t length;

    friend bool operator==(const run&, const run&) = default;
};

inline bool is_constant(const circular_word& w) {
    const auto ls = w.letters();
    return std::all_of(ls.begin(), ls.end(), [&](letter a) { return a == ls.front(); });
}

// Circularly maximal runs ordered by start position. A run may wrap past the
// end of the letter sequence; a constant word is a single run of length n.
inline std::vector<run> runs(const circular_word& w) {
    const auto n = w.size();
    if (is_constant(w)) return {run{w.letters().front(), 0, n}};

    std::size_t first_boundary = 0;
    while (w[static_cast<std::int64_t>(first_boundary)] == w[static_cast<std::int64_t>(first_boundary) - 1]) {
        ++first_boundary;
    }

    std::vector<run> out;
    for (std::size_t offset = 0; offset < n;) {
        const auto start = (first_boundary + offset) % n;
        const letter value = w[static_cast<std::int64_t>(start)];
        std::size_t length = 1;
        while (offset + length < n && w[static_cast<std::int64_t>(start + length)] == value) ++length;
        out.push_back(run{value, start, length});
        offset += length;
    }
    std::sort(out.begin(), out.end(), [](const run& a, const run& b) { return a.start < b.start; });
    return out;
}

enum class block_kind { isolated, long_runs };

// A maximal group of consecutive runs that all have length 1 (isolated) or all
// have length >= 2 (long_runs). `first_letter` is the letter at `start`.
struct block {
    block_kind kind;
    std::size_t start;
    std::size_t length;
    letter first_letter;
    std::vector<run> members;
};

struct block_decomposition {
    std::vector<block> blocks;
    // Set when no run has length >= 2; the single isolated block then has no
    // meaningful anchor.
    bool whole_word_alternating = false;
};

inline block_decomposition decompose_blocks(const circular_word& w) {
    const auto n = w.size();
    auto rs = runs(w);
    const auto is_long = [&](const run& r) { return r.length >= 2 || is_constant(w); };

    block_decomposition out;
    if (std::none_of(rs.begin(), rs.end(), is_long)) {
        out.whole_word_alternating = true;
        out.blocks.push_back(block{block_kind::isolated, 0, n, w.letters().front(), std::move(rs)});
        return out;
    }
    if (std::all_of(rs.begin(), rs.end(), is_long)) {
        const auto start = rs.front().start;
        const auto first = rs.front().value;
        out.blocks.push_back(block{block_kind::long_runs, start, n, first, std::move(rs)});
        return out;
    }

    // Begin at a long run preceded by an isolated letter, so every block is
    // closed when the walk returns to it.
    const auto m = rs.size();
    std::size_t anchor = 0;
    while (!(is_long(rs[anchor]) && !is_long(rs[(anchor + m - 1) % m]))) ++anchor;

    for (std::size_t step = 0; step < m; ++step) {
        const auto& r = rs[(anchor + step) % m];
        const auto kind = is_long(r) ? block_kind::long_runs : block_kind::isolated;
        if (out.blocks.empty() || out.blocks.back().kind != kind) {
            out.blocks.push_back(block{kind, r.start, 0, r.value, {}});
        }
        out.blocks.back().length += r.length;
        out.blocks.back().members.push_back(r);
    }
    std::sort(out.blocks.begin(), out.blocks.end(),
              [](const block& a, const block& b) { return a.start < b.start; });
    return out;
}

// --- enumeration -----------------------------------------------------------

// All d^n words of length n in lexicographic order, generated lazily.
class all_words {
public:
    class iterator {
    public:
        using value_type = circular_word;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(alphabet sigma, std::size_t length) : sigma_(sigma), letters_(length, 0), done_(false) {}

        circular_word operator*() const { return circular_word(letters_, sigma_); }

        iterator& operator++() {
            for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
                if (*it + std::size_t{1} < sigma_.size()) {
                    ++*it;
                    return *this;
                }
                *it = 0;
            }
            done_ = true;
            return *this;
        }
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

    private:
        alphabet sigma_;
        std::vector<letter> letters_;
        bool done_ = true;
    };

    all_words(alphabet sigma, std::size_t length) : sigma_(sigma), length_(length) {
        if (length == 0) throw error(error_kind::bad_parameter, "word length must be at least 1");
    }

    iterator begin() const { return iterator(sigma_, length_); }
    std::default_sentinel_t end() const { return {}; }

private:
    alphabet sigma_;
    std::size_t length_;
};

inline all_words enumerate_words(alphabet sigma, std::size_t length) { return all_words(sigma, length); }

}  // namespace grandsart
