#include "fracbvp/linsolve.hpp"

#include "fracbvp/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace fracbvp {

std::string_view to_string(Solver s) {
    switch (s) {
        case Solver::lu: return "lu";
        case Solver::forward: return "forward";
        case Solver::hessenberg: return "hessenberg";
    }
    return "?";
}

Solver parse_solver(std::string_view name) {
    if (name == "lu") {
        return Solver::lu;
    }
    if (name == "forward") {
        return Solver::forward;
    }
    if (name == "hessenberg") {
        return Solver::hessenberg;
    }
    throw ParseError("unknown solver '" + std::string(name) + "' (expected lu|forward|hessenberg)");
}

DenseMatrix DenseMatrix::from(const LowerHessenbergMatrix& a) {
    DenseMatrix m(a.order());
    for (std::size_t j = 0; j < a.order(); ++j) {
        const auto r = a.row(j);
        std::copy(r.begin(), r.end(), m.data.begin() + static_cast<std::ptrdiff_t>(j * m.n));
    }
    return m;
}

DenseLU::DenseLU(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.n) {
    const std::size_t n = lu_.n;
    for (std::size_t i = 0; i < n; ++i) {
        perm_[i] = i;
    }
    double* m = lu_.data.data();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(m[i * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best >= kPivotFloor)) {
            throw SingularMatrixError("DenseLU: pivot " + std::to_string(best) + " in column " +
                                      std::to_string(k));
        }
        if (piv != k) {
            std::swap_ranges(m + k * n, m + (k + 1) * n, m + piv * n);
            std::swap(perm_[k], perm_[piv]);
        }
        const double inv_pivot = 1.0 / m[k * n + k];
        const double* pivot_row = m + k * n;
        for (std::size_t i = k + 1; i < n; ++i) {
            double* row = m + i * n;
            const double l = row[k] * inv_pivot;
            row[k] = l;
            if (l == 0.0) {
                continue;
            }
            for (std::size_t c = k + 1; c < n; ++c) {
                row[c] -= l * pivot_row[c];
            }
        }
    }
}

std::vector<double> DenseLU::solve(std::span<const double> rhs) const {
    const std::size_t n = lu_.n;
    if (rhs.size() != n) {
        throw std::invalid_argument("DenseLU::solve: size mismatch");
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rhs[perm_[i]];
    }
    const double* m = lu_.data.data();
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) {
            s -= m[i * n + k] * x[k];
        }
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            s -= m[i * n + k] * x[k];
        }
        x[i] = s / m[i * n + i];
    }
    return x;
}

DenseMatrix DenseLU::inverse() const {
    const std::size_t n = lu_.n;
    DenseMatrix inv(n);
    std::vector<double> e(n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        e[col] = 1.0;
        const auto x = solve(e);
        e[col] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            inv(i, col) = x[i];
        }
    }
    return inv;
}

HessenbergLU::HessenbergLU(LowerHessenbergMatrix a)
    : l_(std::move(a)), multipliers_(l_.order(), 0.0), swapped_(l_.order(), 0) {
    const std::size_t n = l_.order();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // Row k holds the only nonzero right of column k; pick the larger of
        // columns k and k+1 as pivot column and eliminate the other.
        double diag = l_(k, k);
        double super = l_(k, k + 1);
        if (std::abs(super) > std::abs(diag)) {
            swapped_[k] = 1;
            for (std::size_t j = k; j < n; ++j) {
                auto r = l_.row(j);
                std::swap(r[k], r[k + 1]);
            }
            std::swap(diag, super);
        }
        if (!(std::abs(diag) >= DenseLU::kPivotFloor)) {
            throw SingularMatrixError("HessenbergLU: pivot " + std::to_string(diag) + " in row " +
                                      std::to_string(k));
        }
        const double m = super / diag;
        multipliers_[k] = m;
        l_.at(k, k + 1) = 0.0;
        if (m != 0.0) {
            for (std::size_t j = k + 1; j < n; ++j) {
                auto r = l_.row(j);
                r[k + 1] -= m * r[k];
            }
        }
    }
    if (n > 0 && !(std::abs(l_(n - 1, n - 1)) >= DenseLU::kPivotFloor)) {
        throw SingularMatrixError("HessenbergLU: last pivot vanished");
    }
}

std::vector<double> HessenbergLU::solve(std::span<const double> rhs) const {
    const std::size_t n = l_.order();
    if (rhs.size() != n) {
        throw std::invalid_argument("HessenbergLU::solve: size mismatch");
    }
    // L y = rhs
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto r = l_.row(j);
        double s = rhs[j];
        for (std::size_t k = 0; k < j; ++k) {
            s -= r[k] * y[k];
        }
        y[j] = s / r[j];
    }
    // u = Q y, undoing the column operations in reverse.
    for (std::size_t k = n - 1; k-- > 0;) {
        y[k] -= multipliers_[k] * y[k + 1];
        if (swapped_[k]) {
            std::swap(y[k], y[k + 1]);
        }
    }
    return y;
}

namespace {

double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Shooting through rows 0..N-1 with u_0 as the unknown, closed by row N.
// Returns nullopt when the closure is ill-conditioned or values overflow.
std::optional<std::vector<double>> forward_recurrence(const LowerHessenbergMatrix& a,
                                                      std::span<const double> rhs) {
    const std::size_t n = a.order();
    std::vector<double> p(n, 0.0);
    std::vector<double> q(n, 0.0);
    q[0] = 1.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto r = a.row(j);
        double sp = rhs[j];
        double sq = 0.0;
        for (std::size_t k = 0; k <= j; ++k) {
            sp -= r[k] * p[k];
            sq -= r[k] * q[k];
        }
        const double super = r[j + 1];
        if (super == 0.0) {
            return std::nullopt;
        }
        p[j + 1] = sp / super;
        q[j + 1] = sq / super;
    }
    const auto last = a.row(n - 1);
    double closure = 0.0;
    double known = rhs[n - 1];
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        closure += last[k] * q[k];
        known -= last[k] * p[k];
        scale = std::max(scale, std::abs(p[k]) + std::abs(q[k]));
    }
    if (!std::isfinite(closure) || !std::isfinite(scale) ||
        std::abs(closure) < 1e-8 * scale) {
        return std::nullopt;
    }
    const double u0 = known / closure;
    std::vector<double> u(n);
    for (std::size_t k = 0; k < n; ++k) {
        u[k] = p[k] + q[k] * u0;
    }
    if (!all_finite(u)) {
        return std::nullopt;
    }
    return u;
}

DiscreteSolution finish(const AssembledSystem& sys, std::vector<double> u, Solver requested,
                        Solver used) {
    DiscreteSolution sol{sys.mesh(), std::move(u), {}};
    sol.info.requested = requested;
    sol.info.used = used;
    sol.info.fell_back = requested != used;
    sol.info.residual = residual_norm(sys.matrix(), sol.values, sys.rhs());
    sol.info.tolerance = residual_tolerance(sys.matrix(), sol.values, sys.rhs());
    return sol;
}

void require_residual(const DiscreteSolution& sol) {
    if (!(sol.info.residual <= sol.info.tolerance)) {
        throw SingularMatrixError("solve (" + std::string(to_string(sol.info.used)) +
                                  "): residual " + std::to_string(sol.info.residual) +
                                  " exceeds " + std::to_string(sol.info.tolerance));
    }
}

}  // namespace

double residual_norm(const LowerHessenbergMatrix& a, std::span<const double> u,
                     std::span<const double> rhs) {
    auto r = a.multiply(u);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= rhs[i];
    }
    return all_finite(r) ? norm_inf(r) : std::numeric_limits<double>::infinity();
}

double residual_tolerance(const LowerHessenbergMatrix& a, std::span<const double> u,
                          std::span<const double> rhs) {
    return 1e-9 * (1.0 + norm_inf(rhs)) + 1e-12 * a.norm_inf() * norm_inf(u);
}

std::vector<double> solve_system(const LowerHessenbergMatrix& a, std::span<const double> rhs,
                                 Solver solver) {
    switch (solver) {
        case Solver::lu:
            return DenseLU(DenseMatrix::from(a)).solve(rhs);
        case Solver::hessenberg:
            return HessenbergLU(a).solve(rhs);
        case Solver::forward: {
            if (auto u = forward_recurrence(a, rhs)) {
                if (residual_norm(a, *u, rhs) <= residual_tolerance(a, *u, rhs)) {
                    return *std::move(u);
                }
            }
            return HessenbergLU(a).solve(rhs);
        }
    }
    return {};
}

DiscreteSolution solve_lu(const AssembledSystem& sys) {
    auto sol = finish(sys, solve_system(sys.matrix(), sys.rhs(), Solver::lu), Solver::lu,
                      Solver::lu);
    require_residual(sol);
    return sol;
}

DiscreteSolution solve_hessenberg(const AssembledSystem& sys) {
    auto sol = finish(sys, solve_system(sys.matrix(), sys.rhs(), Solver::hessenberg),
                      Solver::hessenberg, Solver::hessenberg);
    require_residual(sol);
    return sol;
}

DiscreteSolution solve_forward(const AssembledSystem& sys) {
    if (auto u = forward_recurrence(sys.matrix(), sys.rhs())) {
        auto sol = finish(sys, *std::move(u), Solver::forward, Solver::forward);
        if (sol.info.residual <= sol.info.tolerance) {
            return sol;
        }
    }
    auto sol = finish(sys, HessenbergLU(sys.matrix()).solve(sys.rhs()), Solver::forward,
                      Solver::hessenberg);
    require_residual(sol);
    return sol;
}

DiscreteSolution solve(const AssembledSystem& sys, Solver solver) {
    switch (solver) {
        case Solver::lu: return solve_lu(sys);
        case Solver::forward: return solve_forward(sys);
        case Solver::hessenberg: return solve_hessenberg(sys);
    }
    return solve_lu(sys);
}

}  // namespace fracbvp
