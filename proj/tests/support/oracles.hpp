#pragma once

// Reference computations that share no code with the library beyond its
// public data types. Each one takes a different route to the quantity it
// checks: std::tgamma instead of the Lanczos gamma, tanh-sinh instead of
// Gauss-Jacobi, direct summation of the difference formula instead of the
// assembled matrix.

#include <fracbvp/fracbvp.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

/// Sum of c_i x^{p_i} in long double.
inline long double eval(const fracbvp::FracExpr& e, long double x) {
    long double s = 0.0L;
    for (const auto& t : e.terms()) {
        s += static_cast<long double>(t.coeff) *
             (t.power == 0.0 ? 1.0L : std::pow(x, static_cast<long double>(t.power)));
    }
    return s;
}

/// k-th derivative of c x^p evaluated term by term in long double.
inline long double derivative(const fracbvp::FracExpr& e, int k, long double x) {
    long double s = 0.0L;
    for (const auto& t : e.terms()) {
        long double c = t.coeff;
        long double p = t.power;
        for (int i = 0; i < k; ++i) {
            c *= p;
            p -= 1.0L;
        }
        if (c != 0.0L) {
            s += c * std::pow(x, p);
        }
    }
    return s;
}

/// Double-exponential (tanh-sinh) rule for f on [a, b]. f receives the node
/// and its distances to a and b, computed without cancellation, so algebraic
/// endpoint singularities can be evaluated accurately.
inline double tanh_sinh(const std::function<double(double t, double from_a, double to_b)>& f,
                        double a, double b, double tol = 1e-14) {
    const double half = 0.5 * (b - a);
    constexpr double kTauMax = 6.5;
    const auto node_sum = [&](double step, bool odd_only) {
        double sum = 0.0;
        const int count = static_cast<int>(kTauMax / step);
        for (int i = -count; i <= count; ++i) {
            if (odd_only && i % 2 == 0) {
                continue;
            }
            const double tau = i * step;
            const double u = 0.5 * std::numbers::pi * std::sinh(std::abs(tau));
            const double e2u = std::exp(-2.0 * u);
            // 1 - |s| = 2 e^{-2u} / (1 + e^{-2u}); sech^2(u) = 4 e^{-2u} / (1 + e^{-2u})^2
            const double one_minus = 2.0 * e2u / (1.0 + e2u);
            const double w = 0.5 * std::numbers::pi * std::cosh(tau) * 4.0 * e2u /
                             ((1.0 + e2u) * (1.0 + e2u));
            if (w == 0.0 || one_minus == 0.0) {
                continue;
            }
            const double from_a = tau >= 0 ? half * (2.0 - one_minus) : half * one_minus;
            const double to_b = tau >= 0 ? half * one_minus : half * (2.0 - one_minus);
            const double t = tau >= 0 ? b - to_b : a + from_a;
            sum += w * f(t, from_a, to_b);
        }
        return sum;
    };
    double step = 0.5;
    double total = node_sum(step, false);
    double estimate = half * step * total;
    for (int level = 0; level < 12; ++level) {
        step *= 0.5;
        total += node_sum(step, true);
        const double next = half * step * total;
        if (std::abs(next - estimate) <= tol * std::max(1.0, std::abs(next))) {
            return next;
        }
        estimate = next;
    }
    return estimate;
}

/// Caputo derivative of order sigma in (1, 2) through its integral form
/// (1/Gamma(2 - sigma)) int_0^x (x - t)^{1 - sigma} u''(t) dt, by tanh-sinh.
inline double caputo_by_integral(const fracbvp::FracPoly& u, double sigma, double x) {
    const auto integrand = [&](double t, double from_a, double to_b) {
        (void)t;
        return static_cast<double>(std::pow(static_cast<long double>(to_b), 1.0L - sigma) *
                                   derivative(u.expr(), 2, from_a));
    };
    return tanh_sinh(integrand, 0.0, x) / std::tgamma(2.0 - sigma);
}

/// Caputo weight d_r = r_+^{2-delta} - (r-1)_+^{2-delta}.
inline double weight(long r, double delta) {
    const auto pos = [&](double v) { return v > 0 ? std::pow(v, 2.0 - delta) : 0.0; };
    return pos(static_cast<double>(r)) - pos(static_cast<double>(r - 1));
}

/// The discrete Caputo term -(1/kappa) sum_{k=0}^{j-1} d_{j-k} (u_{k+2} - 2u_{k+1} + u_k),
/// kappa = Gamma(3 - delta) h^delta, applied directly to nodal data.
inline double discrete_caputo(const std::vector<double>& u, int j, double delta) {
    const int n = static_cast<int>(u.size()) - 1;
    const double kappa = std::tgamma(3.0 - delta) * std::pow(1.0 / n, delta);
    double s = 0.0;
    for (int k = 0; k < j; ++k) {
        s += weight(j - k, delta) * (u[k + 2] - 2.0 * u[k + 1] + u[k]);
    }
    return -s / kappa;
}

/// Truncation error of the scheme at node j, assembled from its definition:
/// discrete operator applied to the exact solution minus the data.
inline double truncation(const fracbvp::FractionalBVP& p, int n, int j) {
    const auto& u = *p.exact;
    std::vector<double> nodal(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        nodal[i] = u.eval(static_cast<double>(i) / n);
    }
    const double h = 1.0 / n;
    if (j == 0) {
        return p.alpha0 * u.derivative(1).eval(0.0) - p.alpha0 * (nodal[1] - nodal[0]) / h;
    }
    if (j == n) {
        return -p.alpha1 * u.derivative(1).eval(1.0) + p.alpha1 * (nodal[n] - nodal[n - 1]) / h;
    }
    const double x = static_cast<double>(j) / n;
    const double b = p.b(x);
    const double conv = b >= 0 ? b * (nodal[j] - nodal[j - 1]) / h : b * (nodal[j + 1] - nodal[j]) / h;
    return discrete_caputo(nodal, j, p.delta) + conv + p.c(x) * nodal[j] - p.f(x);
}

/// Dense copy for Eigen-based checks.
inline Eigen::MatrixXd to_eigen(const fracbvp::LowerHessenbergMatrix& a) {
    const auto n = static_cast<Eigen::Index>(a.order());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            m(j, k) = a(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
        }
    }
    return m;
}

/// Explicit inverse through Eigen's full-pivoting LU.
inline Eigen::MatrixXd inverse(const fracbvp::LowerHessenbergMatrix& a) {
    return to_eigen(a).fullPivLu().inverse();
}

/// Random fractional polynomial with powers in {0, 1} U (1, 5] and
/// coefficients in [-2, 2].
inline fracbvp::FracPoly random_fracpoly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_real_distribution<double> power(1.0, 5.0);
    std::uniform_int_distribution<int> kind(0, 3);
    std::vector<fracbvp::Term> terms;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) {
        const int k = kind(rng);
        double p = k == 0 ? 0.0 : (k == 1 ? 1.0 : power(rng));
        if (p == 1.0 && k > 1) {
            p = 1.5;
        }
        terms.push_back({coeff(rng), p});
    }
    return fracbvp::FracPoly(fracbvp::FracExpr(std::move(terms)));
}

}  // namespace oracle
