#pragma once

// Shared vocabulary: letters, alphabets, the error type and size bounds.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace grandsart {

using letter = std::uint8_t;

enum class error_kind {
    bad_alphabet,
    empty_word,
    bad_letter,
    empty_factor,
    size_limit,
    broken_projection,
    alphabet_mismatch,
    not_in_span,
    bad_parameter,
    parse_error,
};

inline const char* to_string(error_kind kind) noexcept {
    switch (kind) {
        case error_kind::bad_alphabet: return "bad alphabet";
        case error_kind::empty_word: return "empty word";
        case error_kind::bad_letter: return "bad letter";
        case error_kind::empty_factor: return "empty factor";
        case error_kind::size_limit: return "size limit";
        case error_kind::broken_projection: return "broken projection";
        case error_kind::alphabet_mismatch: return "alphabet mismatch";
        case error_kind::not_in_span: return "not in span";
        case error_kind::bad_parameter: return "bad parameter";
        case error_kind::parse_error: return "parse error";
    }
    return "unknown error";
}

class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    error_kind kind() const noexcept { return kind_; }

private:
    error_kind kind_;
};

// Graphs, occurrence tables and sample sets are capped at this many items.
inline constexpr std::uint64_t default_size_bound = std::uint64_t{1} << 20;

// base^exp, throwing size_limit once the value exceeds `bound`.
inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp,
                                   std::uint64_t bound = default_size_bound) {
    std::uint64_t value = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (value > bound / base) {
            throw error(error_kind::size_limit,
                        std::to_string(base) + "^" + std::to_string(exp) + " exceeds bound " +
                            std::to_string(bound));
        }
        value *= base;
    }
    if (value > bound) {
        throw error(error_kind::size_limit,
                    std::to_string(base) + "^" + std::to_string(exp) + " exceeds bound " +
                        std::to_string(bound));
    }
    return value;
}

class alphabet {
public:
    static constexpr std::size_t max_size = std::size_t{std::numeric_limits<letter>::max()} + 1;

    constexpr alphabet() noexcept = default;

    explicit constexpr alphabet(std::size_t size) : size_(size) {
        if (size < 2 || size > max_size) {
            throw error(error_kind::bad_alphabet,
                        "alphabet size must be in [2, 256], got " + std::to_string(size));
        }
    }

    static constexpr alphabet binary() noexcept { return alphabet{}; }

    constexpr std::size_t size() const noexcept { return size_; }
    constexpr bool contains(std::size_t value) const noexcept { return value < size_; }

    friend constexpr bool operator==(alphabet, alphabet) noexcept = default;

private:
    std::size_t size_ = 2;
};

}  // namespace grandsart
