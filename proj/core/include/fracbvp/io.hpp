#pragma once

#include "fracbvp/harness.hpp"
#include "fracbvp/monotone.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace fracbvp::io {

/// Scientific notation with 6 significant digits, e.g. "1.46437E-01".
std::string format_sci(double v);

/// FracPoly from a JSON array of {"coeff": ..., "power": ...}. Powers (and
/// coefficients) may be numbers or expressions in `delta` such as "delta" or
/// "2*delta-1", resolved against the given delta.
FracPoly parse_fracpoly(std::string_view json_text, double delta);

/// A problem file:
///   {"name": "...", "delta": 1.5,
///    "b": <coef>, "c": <coef>, "f": <coef> | "manufactured",
///    "alpha0": <scalar>, "alpha1": <scalar>,
///    "gamma0": <scalar> | "auto", "gamma1": <scalar> | "auto",
///    "exact": <fracpoly>}            (exact optional)
/// where <coef> is a number, a FracPoly array, or an expression string in x
/// and delta, and <scalar> is a number or an expression in delta.
/// "manufactured" and "auto" derive f, gamma0, gamma1 from "exact".
class ProblemFile {
public:
    /// Throws ParseError on malformed JSON or schema violations.
    static ProblemFile parse(std::string_view json_text);
    /// Throws ParseError if the file cannot be read or parsed.
    static ProblemFile load(const std::filesystem::path& path);

    [[nodiscard]] double delta() const { return delta_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] bool has_exact() const { return has_exact_; }

    /// Resolve every delta-dependent field; `delta` overrides the file's value.
    [[nodiscard]] FractionalBVP build(std::optional<double> delta = std::nullopt) const;

private:
    std::string text_;
    std::string name_;
    double delta_ = 0.0;
    bool has_exact_ = false;
};

/// Columns x,u_numeric and, when `exact` is given, u_exact,error.
void write_solution_csv(std::ostream& os, const DiscreteSolution& sol, const FracPoly* exact);
std::string solution_json(const DiscreteSolution& sol, const FracPoly* exact);

/// (j, k, a_jk) for every nonzero stored entry.
void write_matrix_csv(std::ostream& os, const LowerHessenbergMatrix& a);

/// Long format delta,N,error,order; the uniform row uses delta = "uniform".
void write_table_csv(std::ostream& os, const ConvergenceTable& table);
std::string table_json(const ConvergenceTable& table);
/// Wide layout: one row of errors and one row of orders per delta, uniform row last.
void write_table_text(std::ostream& os, const ConvergenceTable& table);

std::string report_json(const MonotonicityReport& report);
std::string validation_json(const ValidationReport& report);

}  // namespace fracbvp::io
