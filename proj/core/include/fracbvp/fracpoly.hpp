#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fracbvp {

/// One monomial coeff * x^power.
struct Term {
    double coeff = 0.0;
    double power = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Finite sum of real-power monomials, powers > -1.
///
/// Always canonical: terms sorted by ascending power, powers closer than
/// kPowerMergeTol merged, powers within kPowerMergeTol of an integer snapped
/// to it, zero coefficients dropped. Derivatives of a FracPoly with powers
/// in (1, 2) land here with negative powers, so evaluation at x = 0 is only
/// defined when every power is >= 0.
class FracExpr {
public:
    static constexpr double kPowerMergeTol = 1e-12;

    FracExpr() = default;
    FracExpr(std::initializer_list<Term> terms);
    explicit FracExpr(std::vector<Term> terms);

    static FracExpr constant(double value);
    static FracExpr monomial(double coeff, double power);

    [[nodiscard]] std::span<const Term> terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    /// Smallest power present; +inf for the zero expression.
    [[nodiscard]] double min_power() const;
    /// True when every power is >= 0, i.e. the expression is continuous at 0.
    [[nodiscard]] bool regular_at_zero() const;

    /// Sum of coeff * x^power. Requires x > 0, or x = 0 with regular_at_zero().
    [[nodiscard]] double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    /// k-fold classical derivative, term by term.
    [[nodiscard]] FracExpr derivative(int k = 1) const;

    FracExpr& operator+=(const FracExpr& rhs);
    FracExpr& operator-=(const FracExpr& rhs);
    FracExpr& operator*=(double s);

    friend FracExpr operator+(FracExpr lhs, const FracExpr& rhs) { return lhs += rhs; }
    friend FracExpr operator-(FracExpr lhs, const FracExpr& rhs) { return lhs -= rhs; }
    friend FracExpr operator*(FracExpr lhs, double s) { return lhs *= s; }
    friend FracExpr operator*(double s, FracExpr rhs) { return rhs *= s; }
    friend FracExpr operator-(FracExpr e) { return e *= -1.0; }
    /// Product of two sums; powers add.
    friend FracExpr operator*(const FracExpr& lhs, const FracExpr& rhs);

    friend bool operator==(const FracExpr&, const FracExpr&) = default;

private:
    void canonicalize();

    std::vector<Term> terms_;
};

/// A FracExpr whose powers are all >= 0: continuous on [0, 1]. Carrier for
/// coefficient functions and exact solutions.
class FracPoly {
public:
    FracPoly() = default;
    FracPoly(std::initializer_list<Term> terms);
    /// Throws DomainError if any power is negative.
    explicit FracPoly(FracExpr expr);

    [[nodiscard]] const FracExpr& expr() const { return expr_; }
    operator const FracExpr&() const { return expr_; }  // NOLINT(google-explicit-constructor)

    [[nodiscard]] std::span<const Term> terms() const { return expr_.terms(); }
    [[nodiscard]] double eval(double x) const { return expr_.eval(x); }
    double operator()(double x) const { return expr_.eval(x); }
    [[nodiscard]] FracExpr derivative(int k = 1) const { return expr_.derivative(k); }

    friend FracPoly operator+(const FracPoly& a, const FracPoly& b) { return FracPoly(a.expr_ + b.expr_); }
    friend FracPoly operator-(const FracPoly& a, const FracPoly& b) { return FracPoly(a.expr_ - b.expr_); }
    friend FracPoly operator*(const FracPoly& a, const FracPoly& b) { return FracPoly(a.expr_ * b.expr_); }
    friend FracPoly operator*(double s, const FracPoly& p) { return FracPoly(s * p.expr_); }

    friend bool operator==(const FracPoly&, const FracPoly&) = default;

private:
    FracExpr expr_;
};

/// Exact Caputo derivative of order sigma in (1, 2):
///   x^0, x^1 -> 0,   x^p -> Gamma(p+1)/Gamma(p+1-sigma) x^(p-sigma) for p > 1.
/// Powers in (0, 1) are rejected with DomainError (the function would not be C^1).
FracExpr caputo(const FracPoly& p, double sigma);

/// Reference value of the Caputo derivative from its integral form
///   (1/Gamma(2-sigma)) * int_0^x (x-t)^(1-sigma) u''(t) dt,
/// computed by quadrature that only samples u''. Independent of caputo().
double caputo_quadrature_oracle(const FracPoly& p, double sigma, double x);

/// Same integral for an arbitrary second derivative u''.
/// Throws ConvergenceError if the singular tail near t = 0 cannot be resolved.
double caputo_integral(const std::function<double(double)>& second_derivative,
                       double sigma, double x);

/// Right-hand side f = -D^delta u + b u' + c u for a prescribed solution u.
FracExpr manufactured_rhs(const FracPoly& u, const FracPoly& b, const FracPoly& c,
                          double delta);

std::string to_string(const FracExpr& e);

}  // namespace fracbvp
