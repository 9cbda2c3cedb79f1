#pragma once

namespace fracbvp::specfun {

/// Gamma function for real x that is not a non-positive integer.
/// Lanczos approximation for x >= 0.5, reflection below.
/// Throws DomainError at the poles 0, -1, -2, ...
double gamma(double x);

/// log|Gamma(x)| for x > 0.
double log_gamma(double x);

/// Euler's Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
double beta(double a, double b);

/// sin(pi * x) with exact argument reduction, so that the result is accurate
/// to relative precision near the integers.
double sin_pi(double x);

}  // namespace fracbvp::specfun
