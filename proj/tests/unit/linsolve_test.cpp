#include "oracles.hpp"

#include <fracbvp/error.hpp>
#include <fracbvp/harness.hpp>
#include <fracbvp/linsolve.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace fracbvp {
namespace {

constexpr Solver kAllSolvers[] = {Solver::lu, Solver::forward, Solver::hessenberg};

/// b = 0, c = 0 problem with Robin data chosen so that `u` is the exact solution
/// whenever -D^delta u = f holds pointwise.
FractionalBVP affine_problem(double delta, double u0, double slope) {
    FractionalBVP p;
    p.delta = delta;
    p.alpha0 = 1.0 / (delta - 1.0) + 0.5;
    p.alpha1 = 0.75;
    p.gamma0 = u0 - p.alpha0 * slope;
    p.gamma1 = u0 + slope + p.alpha1 * slope;
    return p;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

TEST(SolverNames, RoundTrip) {
    for (Solver s : kAllSolvers) {
        EXPECT_EQ(parse_solver(to_string(s)), s);
    }
    EXPECT_THROW((void)parse_solver("cholesky"), ParseError);
}

TEST(Solve, ConstantSolution) {
    for (Solver s : kAllSolvers) {
        const auto sol = solve(assemble(affine_problem(1.5, 2.0, 0.0), 32), s);
        for (double v : sol.values) {
            EXPECT_NEAR(v, 2.0, 1e-12) << to_string(s);
        }
    }
}

TEST(Solve, LinearSolutionIsReproduced) {
    for (double delta : {1.1, 1.5, 1.9}) {
        for (Solver s : kAllSolvers) {
            const auto sol = solve(assemble(affine_problem(delta, -0.5, 1.25), 64), s);
            for (int j = 0; j <= 64; ++j) {
                EXPECT_NEAR(sol.values[j], -0.5 + 1.25 * sol.x(j), 1e-10) << delta << ' ' << to_string(s);
            }
        }
    }
}

TEST(Solve, TestProblemOneCell) {
    const auto p = test_problem_1(1.5);
    const auto sol = solve(assemble(p, 64), Solver::lu);
    EXPECT_NEAR(max_error(sol, *p.exact), 1.476e-1, 0.005 * 1.476e-1);
    EXPECT_LE(sol.info.residual, sol.info.tolerance);
    EXPECT_EQ(sol.values.size(), 65u);
}

TEST(Solve, SolversAgreeAcrossGrid) {
    for (int i = 1; i <= 9; ++i) {
        const double delta = 1.0 + 0.1 * i;
        for (int n : {64, 256, 1024}) {
            const auto sys = assemble(test_problem_1(delta), n);
            const auto hess = solve(sys, Solver::hessenberg).values;
            const auto fwd = solve(sys, Solver::forward).values;
            EXPECT_LE(max_abs_diff(hess, fwd), 1e-8) << delta << ' ' << n;
            if (n <= 256) {
                EXPECT_LE(max_abs_diff(hess, solve(sys, Solver::lu).values), 1e-8) << delta << ' ' << n;
            }
        }
    }
}

TEST(Solve, ForwardMatchesLuOnTestProblemTwo) {
    const auto sys = assemble(test_problem_2(1.5), 256);
    EXPECT_LE(max_abs_diff(solve(sys, Solver::forward).values, solve(sys, Solver::lu).values), 1e-8);
}

TEST(Solve, NonnegativeDataGivesNonnegativeSolution) {
    // Test problem 2 has f >= 0, gamma0 >= 0, gamma1 >= 0.
    for (double delta : {1.1, 1.5, 1.9}) {
        const auto sol = solve(assemble(test_problem_2(delta), 256), Solver::hessenberg);
        for (double v : sol.values) {
            EXPECT_GE(v, -1e-10) << delta;
        }
    }
}

TEST(Solve, ForwardFallsBackWhenRecurrenceDegenerates) {
    const auto sys = assemble(test_problem_2(1.1), 2048);
    const auto fwd = solve(sys, Solver::forward);
    EXPECT_EQ(fwd.info.requested, Solver::forward);
    EXPECT_LE(fwd.info.residual, fwd.info.tolerance);
    const auto ref = solve(sys, Solver::hessenberg);
    EXPECT_LE(max_abs_diff(fwd.values, ref.values), 1e-8);
    if (fwd.info.fell_back) {
        EXPECT_EQ(fwd.info.used, Solver::hessenberg);
    }
}

/// Random lower Hessenberg matrix; `super` scales the superdiagonal.
LowerHessenbergMatrix random_hessenberg(std::mt19937_64& rng, std::size_t n, double super) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    LowerHessenbergMatrix a(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto r = a.row(j);
        for (std::size_t k = 0; k < r.size(); ++k) {
            r[k] = k == j + 1 ? super * (dist(rng) < 0 ? -1.0 : 1.0) * (1.0 + dist(rng) * dist(rng))
                              : dist(rng);
        }
    }
    return a;
}

double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

TEST(HessenbergLU, SmallBackwardErrorOnRandomMatrices) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + trial * 7;
        const auto a = random_hessenberg(rng, n, 1.0);
        std::vector<double> rhs(n);
        for (auto& v : rhs) {
            v = dist(rng);
        }
        const auto ref = DenseLU(DenseMatrix::from(a)).solve(rhs);
        const auto hess = HessenbergLU(a).solve(rhs);
        Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(n));
        const Eigen::VectorXd e = oracle::to_eigen(a).fullPivLu().solve(b);
        const std::vector<double> eig(e.data(), e.data() + e.size());
        for (const auto* u : {&ref, &hess, &eig}) {
            EXPECT_LE(residual_norm(a, *u, rhs), 1e-12 * a.norm_inf() * norm_inf(*u)) << trial;
        }
    }
}

TEST(HessenbergLU, PivotsOnDominantSuperdiagonal) {
    // A large superdiagonal forces column swaps at every step; the matrices stay
    // well conditioned, so forward errors are comparable.
    std::mt19937_64 rng(6);
    for (std::size_t n : {6u, 40u, 200u}) {
        const auto a = random_hessenberg(rng, n, 10.0);
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::cos(0.3 * static_cast<double>(i));
        }
        const auto rhs = a.multiply(x);
        const auto hess = HessenbergLU(a).solve(rhs);
        const auto dense = DenseLU(DenseMatrix::from(a)).solve(rhs);
        EXPECT_LE(max_abs_diff(hess, x), 1e-10) << n;
        EXPECT_LE(max_abs_diff(dense, x), 1e-10) << n;
    }
}

TEST(DenseLU, InverseMatchesEigen) {
    const auto sys = assemble(test_problem_1(1.4), 32);
    const auto inv = DenseLU(DenseMatrix::from(sys.matrix())).inverse();
    const auto ref = oracle::inverse(sys.matrix());
    for (std::size_t i = 0; i < inv.n; ++i) {
        for (std::size_t j = 0; j < inv.n; ++j) {
            EXPECT_NEAR(inv(i, j), ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), 1e-10);
        }
    }
}

TEST(DenseLU, SingularMatrixThrows) {
    LowerHessenbergMatrix a(4);
    a.at(0, 0) = 1.0;
    a.at(0, 1) = 2.0;
    a.at(1, 0) = 2.0;
    a.at(1, 1) = 4.0;
    a.at(2, 2) = 1.0;
    a.at(3, 3) = 1.0;
    EXPECT_THROW(DenseLU{DenseMatrix::from(a)}, SingularMatrixError);
    EXPECT_THROW(HessenbergLU{a}, SingularMatrixError);
}

TEST(Residual, NormAndTolerance) {
    const auto sys = assemble(test_problem_1(1.7), 128);
    const auto sol = solve(sys, Solver::hessenberg);
    EXPECT_EQ(sol.info.residual, residual_norm(sys.matrix(), sol.values, sys.rhs()));
    EXPECT_EQ(sol.info.tolerance, residual_tolerance(sys.matrix(), sol.values, sys.rhs()));
    EXPECT_LE(sol.info.residual, sol.info.tolerance);
    std::vector<double> perturbed = sol.values;
    perturbed[5] += 1.0;
    EXPECT_GT(residual_norm(sys.matrix(), perturbed, sys.rhs()), 1.0);
}

TEST(SolveSystem, DirectInterface) {
    LowerHessenbergMatrix a(4);
    for (std::size_t j = 0; j < 4; ++j) {
        a.at(j, j) = 2.0;
    }
    a.at(1, 0) = -1.0;
    const std::vector<double> rhs = {2.0, 1.0, 4.0, 6.0};
    for (Solver s : {Solver::lu, Solver::hessenberg}) {
        const auto u = solve_system(a, rhs, s);
        EXPECT_NEAR(u[0], 1.0, 1e-14);
        EXPECT_NEAR(u[1], 1.0, 1e-14);
        EXPECT_NEAR(u[2], 2.0, 1e-14);
        EXPECT_NEAR(u[3], 3.0, 1e-14);
    }
}

}  // namespace
}  // namespace fracbvp
