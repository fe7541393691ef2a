#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bimorph {

enum class ErrorKind {
    invalid_position,
    unbound_variable,
    arity_mismatch,
    alphabet_mismatch,
    nonlinear_hom,
    unmapped_symbol,
    class_mismatch,
    nontermination_suspected,
    unsupported_shape,
    grammar_invalid,
    invalid_context,
    parse_error,
    io_error,
};

/// Kebab-case name reported on the command line, e.g. "class-mismatch".
std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace bimorph
