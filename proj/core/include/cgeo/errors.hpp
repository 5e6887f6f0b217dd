#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cgeo {

struct UnknownGeneratorError : std::invalid_argument {
    explicit UnknownGeneratorError(int letter)
        : std::invalid_argument("unknown generator letter " + std::to_string(letter)),
          letter(letter) {}
    int letter;
};

struct BudgetExceededError : std::runtime_error {
    BudgetExceededError(std::uint64_t projected, std::uint64_t budget)
        : std::runtime_error("projected vertex count " + std::to_string(projected) +
                             " exceeds budget " + std::to_string(budget)),
          projected(projected), budget(budget) {}
    std::uint64_t projected;
    std::uint64_t budget;
};

struct IncompatiblePatternError : std::invalid_argument {
    explicit IncompatiblePatternError(const std::string& what)
        : std::invalid_argument("incompatible pattern: " + what) {}
};

struct ComplementEmptyError : std::runtime_error {
    ComplementEmptyError() : std::runtime_error("complement of the neighborhood is empty") {}
};

struct EmptyAfterGuardError : std::runtime_error {
    EmptyAfterGuardError() : std::runtime_error("vertex set empty after guard truncation") {}
};

struct NotTwoSeparatingError : std::runtime_error {
    NotTwoSeparatingError() : std::runtime_error("complement has fewer than two deep components") {}
};

struct RangeTooShortError : std::runtime_error {
    explicit RangeTooShortError(const std::string& what)
        : std::runtime_error("series range too short: " + what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& field, const std::string& detail = "")
        : std::runtime_error("config error in field '" + field + "'" +
                             (detail.empty() ? "" : ": " + detail)),
          field(field) {}
    std::string field;
};

}  // namespace cgeo
