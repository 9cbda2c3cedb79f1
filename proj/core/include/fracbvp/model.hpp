#pragma once

#include "fracbvp/fracpoly.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracbvp {

/// A coefficient function on [0, 1]: either a fractional polynomial (exact
/// features available) or an arbitrary callable.
class Coefficient {
public:
    Coefficient() : Coefficient(0.0) {}
    Coefficient(double constant);                 // NOLINT(google-explicit-constructor)
    Coefficient(FracExpr expr);                   // NOLINT(google-explicit-constructor)
    Coefficient(const FracPoly& poly);            // NOLINT(google-explicit-constructor)
    Coefficient(std::function<double(double)> fn, std::string description);

    double operator()(double x) const { return fn_(x); }

    /// Null for black-box coefficients.
    [[nodiscard]] const FracExpr* fracexpr() const { return expr_ ? &*expr_ : nullptr; }
    [[nodiscard]] const std::string& description() const { return description_; }

private:
    std::optional<FracExpr> expr_;
    std::function<double(double)> fn_;
    std::string description_;
};

/// -D^delta u + b u' + c u = f on (0, 1),
/// u(0) - alpha0 u'(0) = gamma0,   u(1) + alpha1 u'(1) = gamma1.
struct FractionalBVP {
    std::string name;
    double delta = 1.5;
    Coefficient b;
    Coefficient c;
    Coefficient f;
    double alpha0 = 2.0;
    double alpha1 = 0.0;
    double gamma0 = 0.0;
    double gamma1 = 0.0;
    std::optional<FracPoly> exact;
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string message;
    std::optional<double> witness;  // offending x for pointwise checks
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    [[nodiscard]] bool ok() const;
    /// Messages of the failed checks, joined by "; ".
    [[nodiscard]] std::string failures() const;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport report);
    [[nodiscard]] const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Number of equispaced sample points for the c >= 0 check.
inline constexpr int kValidationSamples = 1001;

/// Checks delta in (1, 2), alpha0 >= 1/(delta - 1), alpha1 >= 0 and c >= 0 on
/// a grid. Never throws.
ValidationReport validate(const FractionalBVP& p);

/// u = x^delta + x^(2 delta - 1) + 1 + 3x - 7x^2 + 4x^3 + x^4.
FracPoly test_problem_1_solution(double delta);

/// b = x^2, c = 1 + x, alpha0 = 1/(delta - 1), alpha1 = 1, with f, gamma0 and
/// gamma1 manufactured from test_problem_1_solution().
FractionalBVP test_problem_1(double delta);

/// b = 2, c = 3, f = 1.25, alpha0 = 1/(delta - 1), gamma0 = 0.4,
/// Dirichlet u(1) = 1.7 (alpha1 = 0). No exact solution.
FractionalBVP test_problem_2(double delta);

/// Built-in problem by name ("tp1", "tp2"); nullopt if unknown.
std::optional<FractionalBVP> builtin_problem(const std::string& name, double delta);

}  // namespace fracbvp
