#ifndef RESIDUA_EXPR_HPP
#define RESIDUA_EXPR_HPP

#include "residua/rational_function.hpp"

#include <string>
#include <vector>

namespace residua {

struct ParseDiagnostic {
    int line = 1;
    int column = 1;
    std::string message;
    enum class Severity { Error, Warning } severity = Severity::Error;

    std::string to_string() const;
};

class ParseError : public Error {
public:
    explicit ParseError(ParseDiagnostic d)
        : Error(d.to_string()), diagnostic(std::move(d)) {}
    ParseDiagnostic diagnostic;
};

/// Parse an algebraic expression over the given variable scope.
///
/// Grammar: identifiers [a-zA-Z][a-zA-Z0-9_]*, `i` the imaginary unit,
/// integer / p/q rational literals (with optional `i` suffix), operators
/// + - * / ^ with standard precedence, ^ right-associative with nonnegative
/// integer exponents, parentheses. Unknown identifiers are rejected.
RationalFunction parse_expression(const std::string& text, const std::vector<std::string>& vars);

/// Same, with diagnostics anchored at the given source position.
RationalFunction parse_expression_at(const std::string& text, const std::vector<std::string>& vars,
                                     int line0, int col0);

/// Canonical text form; parse_expression(serialize_expression(r)) == r.
std::string serialize_expression(const RationalFunction& r);

} // namespace residua

#endif
