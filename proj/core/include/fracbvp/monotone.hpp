#pragma once

#include "fracbvp/discretize.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fracbvp {

/// Outcome of one sign condition; `witness` is the first violating (row, column).
struct SignCheck {
    std::string name;
    bool passed = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    double witness_value = 0.0;
};

struct MonotonicityReport {
    std::vector<SignCheck> sign_checks;
    bool row_sum_positivity = false;
    bool m_matrix = false;

    [[nodiscard]] const SignCheck* find(const std::string& name) const;
};

/// A' = E^(N-1) ... E^(1) A: adds -(a_j0/a_00) * row 0 to each row j = 1..N-1
/// so that column 0 vanishes below the diagonal. Requires a_00 > 0.
LowerHessenbergMatrix eliminate_col0(const LowerHessenbergMatrix& a);

/// The same row operations applied to a right-hand side.
std::vector<double> eliminate_col0_rhs(const LowerHessenbergMatrix& a, std::span<const double> rhs);

/// Sufficient M-matrix test: off-diagonals <= 0 (up to 1e-12 of the row's
/// largest magnitude), positive diagonal, and A' (1,...,1)^T > 0.
MonotonicityReport certify_m_matrix(const LowerHessenbergMatrix& ap);

/// Full certificate for an assembled matrix A: the sign pattern of A, the
/// column-1 signs of A', and certify_m_matrix(A'). m_matrix is true only if
/// every check passes.
MonotonicityReport certify_monotone(const LowerHessenbergMatrix& a);

/// Rows 1..N-1 of A' scaled by (1 + alpha0/h) kappa / d_j; rows 0 and N as in A'.
LowerHessenbergMatrix rescaled_matrix(const AssembledSystem& sys);

/// Largest N for which rescaled_inverse_norm_bound forms the explicit inverse.
inline constexpr int kExplicitInverseMaxN = 512;

/// ||Ã^{-1}||_inf of the rescaled matrix. Explicit inverse for N <= 512;
/// beyond that ||Ã^{-1} (1,...,1)^T||_inf, which equals the norm when Ã^{-1} >= 0.
double rescaled_inverse_norm_bound(const AssembledSystem& sys);

}  // namespace fracbvp
