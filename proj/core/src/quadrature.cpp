#include "fracbvp/quadrature.hpp"

#include "fracbvp/error.hpp"
#include "fracbvp/fracpoly.hpp"
#include "fracbvp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fracbvp {

namespace quadrature {

namespace {

// Implicit QL on a symmetric tridiagonal matrix (diag d, off-diagonal e with
// e[i] coupling i and i+1). On return d holds the eigenvalues and z0 the first
// component of each normalized eigenvector.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z0) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) {
                    break;
                }
            }
            if (m != l) {
                if (iter++ == 60) {
                    throw ConvergenceError("gauss_jacobi: QL iteration did not converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z0[i + 1];
                    z0[i + 1] = s * z0[i] + c * f;
                    z0[i] = c * z0[i] - s * f;
                }
                if (r == 0.0 && i >= l) {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

Rule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1 || !(alpha > -1.0) || !(beta > -1.0)) {
        throw DomainError("gauss_jacobi: need n >= 1 and alpha, beta > -1");
    }
    const double ab = alpha + beta;
    std::vector<double> diag(n);
    std::vector<double> off(n, 0.0);
    diag[0] = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
        const double den = s * s * (s + 1.0) * (s - 1.0);
        off[k - 1] = std::sqrt(num / den);
    }
    std::vector<double> z0(n, 0.0);
    z0[0] = 1.0;
    tridiagonal_ql(diag, off, z0);

    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + specfun::log_gamma(alpha + 1.0) +
                                specfun::log_gamma(beta + 1.0) - specfun::log_gamma(ab + 2.0));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });
    Rule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    for (int idx : order) {
        rule.nodes.push_back(diag[idx]);
        rule.weights.push_back(mu0 * z0[idx] * z0[idx]);
    }
    return rule;
}

Rule gauss_legendre(int n) {
    return gauss_jacobi(n, 0.0, 0.0);
}

}  // namespace quadrature

namespace {

constexpr int kJacobiPoints = 30;
constexpr int kLegendrePoints = 24;
constexpr int kMaxLevels = 900;
constexpr double kLevelTol = 1e-12;
constexpr double kRatioTol = 1e-10;
constexpr double kNonIntegrableGap = 1e3 * kRatioTol;

double legendre_on(const quadrature::Rule& rule, const std::function<double(double)>& g,
                   double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * g(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

}  // namespace

double caputo_integral(const std::function<double(double)>& second_derivative, double sigma,
                       double x) {
    if (!(sigma > 1.0 && sigma < 2.0)) {
        throw DomainError("caputo_integral: order must lie in (1, 2)");
    }
    if (!(x > 0.0)) {
        throw DomainError("caputo_integral: x must be > 0");
    }
    const double kernel_exp = 1.0 - sigma;

    // [x/2, x]: Gauss-Jacobi absorbs the (x - t)^(1 - sigma) endpoint singularity.
    const double a = 0.5 * x;
    const double half = 0.5 * (x - a);
    const auto jacobi = quadrature::gauss_jacobi(kJacobiPoints, kernel_exp, 0.0);
    double upper = 0.0;
    for (std::size_t i = 0; i < jacobi.nodes.size(); ++i) {
        upper += jacobi.weights[i] * second_derivative(a + half * (1.0 + jacobi.nodes[i]));
    }
    upper *= std::pow(half, kernel_exp + 1.0);

    // [0, x/2]: geometric subdivision toward t = 0, where u'' may blow up.
    const auto legendre = quadrature::gauss_legendre(kLegendrePoints);
    const auto integrand = [&](double t) {
        return std::pow(x - t, kernel_exp) * second_derivative(t);
    };
    double lower = 0.0;
    double right = a;
    double prev = 0.0;
    double prev_ratio = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    for (int level = 0; level < kMaxLevels; ++level) {
        const double left = 0.5 * right;
        const double piece = legendre_on(legendre, integrand, left, right);
        lower += piece;
        right = left;
        if (std::abs(piece) < kLevelTol) {
            converged = true;
            break;
        }
        if (level > 0 && prev != 0.0) {
            // Contributions of an algebraic singularity t^beta form a geometric
            // series with ratio 2^-(beta+1); sum its tail once the ratio settles.
            // Ratios tending to 1 mean beta <= -1, which is not integrable.
            const double ratio = piece / prev;
            if (level >= 4 && ratio > 0.0 && ratio < 1.0 - kNonIntegrableGap &&
                std::abs(ratio - prev_ratio) <= kRatioTol) {
                lower += piece * ratio / (1.0 - ratio);
                converged = true;
                break;
            }
            prev_ratio = ratio;
        }
        prev = piece;
    }
    if (!converged) {
        throw ConvergenceError("caputo_integral: singular tail near t = 0 did not converge");
    }
    return (upper + lower) / specfun::gamma(2.0 - sigma);
}

double caputo_quadrature_oracle(const FracPoly& p, double sigma, double x) {
    const FracExpr second = p.derivative(2);
    return caputo_integral([&](double t) { return second.eval(t); }, sigma, x);
}

}  // namespace fracbvp
