#include "fracbvp/monotone.hpp"

#include "fracbvp/error.hpp"
#include "fracbvp/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fracbvp {

namespace {

constexpr double kSignTol = 1e-12;

double row_scale(const LowerHessenbergMatrix& a, std::size_t j) {
    double m = 0.0;
    for (double v : a.row(j)) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

// Runs `ok(j, k, value)` over entries (j, k) selected by `select`; records the
// first failure.
SignCheck scan(std::string name, const LowerHessenbergMatrix& a,
               const std::function<bool(std::size_t, std::size_t)>& select,
               const std::function<bool(double value, double tol)>& ok) {
    SignCheck check{std::move(name), true, std::nullopt, 0.0};
    for (std::size_t j = 0; j < a.order() && check.passed; ++j) {
        const auto r = a.row(j);
        const double tol = kSignTol * row_scale(a, j);
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (select(j, k) && !ok(r[k], tol)) {
                check.passed = false;
                check.witness = std::make_pair(j, k);
                check.witness_value = r[k];
                break;
            }
        }
    }
    return check;
}

const auto kPositive = [](double v, double) { return v > 0.0; };
const auto kNegative = [](double v, double) { return v < 0.0; };
const auto kNonPositive = [](double v, double tol) { return v <= tol; };

}  // namespace

const SignCheck* MonotonicityReport::find(const std::string& name) const {
    for (const auto& c : sign_checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

LowerHessenbergMatrix eliminate_col0(const LowerHessenbergMatrix& a) {
    if (!(a(0, 0) > 0.0)) {
        throw DomainError("eliminate_col0: a_00 must be positive");
    }
    LowerHessenbergMatrix ap = a;
    const double a00 = a(0, 0);
    const double a01 = a(0, 1);
    const std::size_t n = a.order();
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double factor = a(j, 0) / a00;
        ap.at(j, 0) = 0.0;
        ap.at(j, 1) -= factor * a01;
    }
    return ap;
}

std::vector<double> eliminate_col0_rhs(const LowerHessenbergMatrix& a, std::span<const double> rhs) {
    std::vector<double> out(rhs.begin(), rhs.end());
    const std::size_t n = a.order();
    for (std::size_t j = 1; j + 1 < n; ++j) {
        out[j] -= a(j, 0) / a(0, 0) * rhs[0];
    }
    return out;
}

MonotonicityReport certify_m_matrix(const LowerHessenbergMatrix& ap) {
    MonotonicityReport report;
    const std::size_t n = ap.order();
    report.sign_checks.push_back(scan(
        "offdiag_nonpositive", ap, [](std::size_t j, std::size_t k) { return j != k; },
        kNonPositive));
    report.sign_checks.push_back(scan(
        "diag_positive", ap, [](std::size_t j, std::size_t k) { return j == k; }, kPositive));

    SignCheck rows{"row_sums_positive", true, std::nullopt, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        const double s = ap.row_sum(j);
        if (!(s > 0.0)) {
            rows.passed = false;
            rows.witness = std::make_pair(j, j);
            rows.witness_value = s;
            break;
        }
    }
    report.row_sum_positivity = rows.passed;
    report.sign_checks.push_back(rows);
    report.m_matrix = std::all_of(report.sign_checks.begin(), report.sign_checks.end(),
                                  [](const SignCheck& c) { return c.passed; });
    return report;
}

MonotonicityReport certify_monotone(const LowerHessenbergMatrix& a) {
    const std::size_t last = a.order() - 1;
    MonotonicityReport report;
    auto& checks = report.sign_checks;
    checks.push_back(scan(
        "A_diag_positive", a, [](std::size_t j, std::size_t k) { return j == k; }, kPositive));
    checks.push_back(scan(
        "A_col0_negative", a,
        [last](std::size_t j, std::size_t k) { return k == 0 && j >= 1 && j < last; }, kNegative));
    checks.push_back(scan(
        "A_col1_positive", a,
        [last](std::size_t j, std::size_t k) { return k == 1 && j >= 3 && j < last; }, kPositive));
    checks.push_back(scan(
        "A_offdiag_negative", a,
        [last](std::size_t j, std::size_t k) {
            return j >= 1 && j < last && ((k >= 2 && k + 1 <= j) || k == j + 1);
        },
        kNegative));

    const auto ap = eliminate_col0(a);
    checks.push_back(scan(
        "Aprime_a11_positive", ap, [](std::size_t j, std::size_t k) { return j == 1 && k == 1; },
        kPositive));
    checks.push_back(scan(
        "Aprime_col1_negative", ap,
        [last](std::size_t j, std::size_t k) { return k == 1 && j >= 2 && j < last; }, kNegative));

    const auto m = certify_m_matrix(ap);
    checks.insert(checks.end(), m.sign_checks.begin(), m.sign_checks.end());
    report.row_sum_positivity = m.row_sum_positivity;
    report.m_matrix = std::all_of(checks.begin(), checks.end(),
                                  [](const SignCheck& c) { return c.passed; });
    return report;
}

LowerHessenbergMatrix rescaled_matrix(const AssembledSystem& sys) {
    auto at = eliminate_col0(sys.matrix());
    const double h = sys.mesh().h();
    const double lead = (1.0 + sys.problem().alpha0 / h) * sys.kappa();
    const auto d = sys.weights();
    const std::size_t n = at.order();
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double s = lead / d[j];
        for (double& v : at.row(j)) {
            v *= s;
        }
    }
    return at;
}

double rescaled_inverse_norm_bound(const AssembledSystem& sys) {
    const auto at = rescaled_matrix(sys);
    const std::size_t n = at.order();
    if (sys.mesh().intervals() <= kExplicitInverseMaxN) {
        const auto inv = DenseLU(DenseMatrix::from(at)).inverse();
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                s += std::abs(inv(i, j));
            }
            best = std::max(best, s);
        }
        return best;
    }
    const std::vector<double> ones(n, 1.0);
    const auto z = HessenbergLU(at).solve(ones);
    double best = 0.0;
    for (double v : z) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

}  // namespace fracbvp
