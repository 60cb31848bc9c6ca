#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <opsolve/errors.hpp>
#include <opsolve/problem.hpp>

namespace opsolve::cli {

// Malformed JSON or an unreadable rational literal. line is 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string &what, int line = 0) : Error(what), line_(line) {}
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

// Well-formed JSON that does not follow the problem schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

// Problem file layout:
//
//   {
//     "kind": "two_point" | "three_point",
//     "p":   {"-1": "1", ...},            index -> rational string
//     "q":   {"-2": "-1/9", "0": "1"},    missing indices are zero
//     "rhs": [{"sigma": "-2/3", "power": 0, "log_power": 0, "coeff": "2"}]   optional
//   }
//
// Rationals may also be given as JSON integers. JSON floats are rejected so that
// nothing inexact slips in.
OdeProblem parse_problem_text(std::string_view text, const std::string &origin = "<input>");
OdeProblem parse_problem(const std::filesystem::path &path);

// Inverse of parse_problem_text; the output re-parses to an equal problem.
std::string dump_problem(const OdeProblem &problem);

// Every coefficient, forcing exponent and forcing coefficient as a double.
OdeProblem to_float(const OdeProblem &problem);

} // namespace opsolve::cli
