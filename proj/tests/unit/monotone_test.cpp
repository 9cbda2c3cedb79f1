#include "oracles.hpp"

#include <fracbvp/error.hpp>
#include <fracbvp/monotone.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace fracbvp {
namespace {

/// Assembles b = 0, c = 0 rows by hand so that alpha0 may violate the
/// admissibility bound that assemble() enforces.
LowerHessenbergMatrix hand_assembled(double delta, double alpha0, int n) {
    const double h = 1.0 / n;
    LowerHessenbergMatrix a(static_cast<std::size_t>(n) + 1);
    a.at(0, 0) = 1.0 + alpha0 / h;
    a.at(0, 1) = -alpha0 / h;
    for (int j = 1; j < n; ++j) {
        const auto row = caputo_row(j, delta, n);
        for (std::size_t k = 0; k < row.size(); ++k) {
            a.at(j, k) = row[k];
        }
    }
    a.at(n, n) = 1.0;
    return a;
}

TEST(EliminateCol0, ClearsColumnAndUpdatesColumnOne) {
    const auto sys = assemble(test_problem_1(1.5), 32);
    const auto& a = sys.matrix();
    const auto ap = eliminate_col0(a);
    for (std::size_t j = 1; j < 32; ++j) {
        EXPECT_EQ(ap(j, 0), 0.0);
        const double expected = a(j, 1) - a(j, 0) * a(0, 1) / a(0, 0);
        EXPECT_NEAR(ap(j, 1), expected, 1e-12 * std::abs(expected));
        // a_00 + a_01 = 1, so the row sum drops by a_j0 / a_00.
        EXPECT_NEAR(ap.row_sum(j), a.row_sum(j) - a(j, 0) / a(0, 0), 1e-11 * std::abs(a(j, j)));
        for (std::size_t k = 2; k < a.row_length(j); ++k) {
            EXPECT_EQ(ap(j, k), a(j, k));
        }
    }
    EXPECT_EQ(ap(32, 31), a(32, 31));
    EXPECT_EQ(ap(0, 0), a(0, 0));
}

TEST(EliminateCol0, PreservesSolutionSet) {
    const auto sys = assemble(test_problem_2(1.4), 64);
    const auto ap = eliminate_col0(sys.matrix());
    const auto rhs = eliminate_col0_rhs(sys.matrix(), sys.rhs());
    const auto u = solve_system(sys.matrix(), sys.rhs(), Solver::lu);
    const auto v = solve_system(ap, rhs, Solver::lu);
    for (std::size_t i = 0; i < u.size(); ++i) {
        EXPECT_NEAR(u[i], v[i], 1e-11);
    }
}

TEST(EliminateCol0, RequiresPositivePivot) {
    LowerHessenbergMatrix a(4);
    EXPECT_THROW((void)eliminate_col0(a), DomainError);
}

TEST(Certificate, PassesOnBuiltInProblems) {
    for (int i = 1; i <= 9; ++i) {
        const double delta = 1.0 + 0.1 * i;
        for (int n : {16, 64, 256}) {
            for (const auto& p : {test_problem_1(delta), test_problem_2(delta)}) {
                const auto report = certify_monotone(assemble(p, n).matrix());
                EXPECT_TRUE(report.m_matrix) << p.name << ' ' << delta << ' ' << n;
                EXPECT_TRUE(report.row_sum_positivity);
                EXPECT_EQ(report.sign_checks.size(), 9u);
            }
        }
    }
}

TEST(Certificate, InverseIsNonnegative) {
    for (double delta : {1.2, 1.9}) {
        for (int n : {64, 128, 256}) {
            const auto a = assemble(test_problem_2(delta), n).matrix();
            ASSERT_TRUE(certify_monotone(a).m_matrix);
            const Eigen::MatrixXd inv = oracle::inverse(a);
            EXPECT_GE(inv.minCoeff(), -1e-10) << delta << ' ' << n;
        }
    }
}

TEST(Certificate, NamedChecks) {
    const auto report = certify_monotone(assemble(test_problem_1(1.3), 32).matrix());
    for (const char* name : {"A_diag_positive", "A_col0_negative", "A_col1_positive",
                             "A_offdiag_negative", "Aprime_a11_positive", "Aprime_col1_negative",
                             "offdiag_nonpositive", "diag_positive", "row_sums_positive"}) {
        const auto* c = report.find(name);
        ASSERT_NE(c, nullptr) << name;
        EXPECT_TRUE(c->passed) << name;
        EXPECT_FALSE(c->witness.has_value());
    }
    EXPECT_EQ(report.find("no_such_check"), nullptr);
}

TEST(Certificate, ReportsWitnessOnFailure) {
    auto a = assemble(test_problem_1(1.5), 16).matrix();
    a.at(7, 4) = 3.0;
    const auto report = certify_m_matrix(eliminate_col0(a));
    EXPECT_FALSE(report.m_matrix);
    const auto* c = report.find("offdiag_nonpositive");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed);
    ASSERT_TRUE(c->witness.has_value());
    EXPECT_EQ(c->witness->first, 7u);
    EXPECT_EQ(c->witness->second, 4u);
    EXPECT_EQ(c->witness_value, 3.0);
    EXPECT_TRUE(report.find("diag_positive")->passed);
}

TEST(Certificate, SmallAlpha0ReportsColumnOneSign) {
    // Below the admissibility bound the modified column 1 may turn positive;
    // the certificate must say exactly what the entries say.
    const double delta = 1.5;
    const int n = 64;
    for (double alpha0 : {0.05, 0.5, 1.0, 1.0 / (delta - 1.0)}) {
        const auto a = hand_assembled(delta, alpha0, n);
        const auto report = certify_monotone(a);
        const double h = 1.0 / n;
        const double kappa = std::tgamma(3.0 - delta) * std::pow(h, delta);
        bool col1_negative = true;
        for (int j = 2; j < n; ++j) {
            const double ratio = (alpha0 / h) / (1.0 + alpha0 / h);
            const double a1 = (-oracle::weight(j - 1, delta) + 2.0 * oracle::weight(j, delta) -
                               ratio * oracle::weight(j, delta)) / kappa;
            col1_negative = col1_negative && a1 < 0.0;
        }
        EXPECT_EQ(report.find("Aprime_col1_negative")->passed, col1_negative) << alpha0;
        if (!col1_negative) {
            EXPECT_FALSE(report.m_matrix);
        }
    }
}

TEST(Rescaled, RowSumsAtLeastOne) {
    for (double delta : {1.1, 1.5, 1.9}) {
        const auto sys = assemble(test_problem_1(delta), 128);
        const auto at = rescaled_matrix(sys);
        for (std::size_t j = 0; j < at.order(); ++j) {
            EXPECT_GE(at.row_sum(j), 1.0 - 1e-10) << delta << ' ' << j;
        }
    }
}

TEST(Rescaled, InverseNormBound) {
    for (int i = 1; i <= 9; ++i) {
        const double delta = 1.0 + 0.1 * i;
        for (int n : {64, 256, 1024}) {
            const auto sys = assemble(test_problem_1(delta), n);
            EXPECT_LE(rescaled_inverse_norm_bound(sys), 1.0 + 1e-8) << delta << ' ' << n;
        }
    }
}

TEST(Rescaled, ExplicitAndVectorRoutesAgreeOnNonnegativeInverse) {
    const auto sys = assemble(test_problem_2(1.6), 128);
    const Eigen::MatrixXd inv = oracle::to_eigen(rescaled_matrix(sys)).fullPivLu().inverse();
    EXPECT_GE(inv.minCoeff(), -1e-12);
    const double by_rows = inv.cwiseAbs().rowwise().sum().maxCoeff();
    EXPECT_NEAR(rescaled_inverse_norm_bound(sys), by_rows, 1e-10);
}

}  // namespace
}  // namespace fracbvp
