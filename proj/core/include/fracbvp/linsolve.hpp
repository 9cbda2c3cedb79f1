#pragma once

#include "fracbvp/discretize.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracbvp {

enum class Solver {
    lu,          ///< dense LU with partial pivoting, O(N^3)
    forward,     ///< u_j = p_j + q_j u_0 recurrence through the Hessenberg rows, O(N^2)
    hessenberg,  ///< partial-pivoting elimination of the superdiagonal, O(N^2)
};

std::string_view to_string(Solver s);
/// Throws ParseError for unknown names.
Solver parse_solver(std::string_view name);

struct SolveInfo {
    Solver requested = Solver::lu;
    Solver used = Solver::lu;
    bool fell_back = false;
    double residual = 0.0;   ///< ||A u - rhs||_inf
    double tolerance = 0.0;  ///< bound the residual was checked against
};

/// Nodal values u_0..u_N on a uniform mesh.
struct DiscreteSolution {
    UniformMesh mesh;
    std::vector<double> values;
    SolveInfo info;

    [[nodiscard]] double x(int j) const { return mesh.x(j); }
};

/// Row-major square matrix.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t order) : n(order), data(order * order, 0.0) {}
    static DenseMatrix from(const LowerHessenbergMatrix& a);

    double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

/// PA = LU with partial pivoting. Throws SingularMatrixError when a pivot
/// magnitude falls below kPivotFloor.
class DenseLU {
public:
    static constexpr double kPivotFloor = 1e-300;

    explicit DenseLU(DenseMatrix a);

    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;
    [[nodiscard]] DenseMatrix inverse() const;
    [[nodiscard]] std::size_t order() const { return lu_.n; }

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

/// Factorization A Q = L of a lower Hessenberg A, where Q collects column
/// swaps and column eliminations of the superdiagonal (Gaussian elimination
/// with partial pivoting applied to A^T). O(N^2) work and storage.
class HessenbergLU {
public:
    explicit HessenbergLU(LowerHessenbergMatrix a);

    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;

private:
    LowerHessenbergMatrix l_;  // lower triangular after factorization
    std::vector<double> multipliers_;
    std::vector<unsigned char> swapped_;
};

/// ||A u - rhs||_inf
double residual_norm(const LowerHessenbergMatrix& a, std::span<const double> u,
                     std::span<const double> rhs);

/// Residual bound 1e-9 (1 + ||rhs||) + 1e-12 ||A|| ||u||.
double residual_tolerance(const LowerHessenbergMatrix& a, std::span<const double> u,
                          std::span<const double> rhs);

DiscreteSolution solve_lu(const AssembledSystem& sys);
DiscreteSolution solve_hessenberg(const AssembledSystem& sys);
/// Falls back to solve_hessenberg if the closing equation is ill-conditioned,
/// the recurrence overflows, or the residual contract fails.
DiscreteSolution solve_forward(const AssembledSystem& sys);
DiscreteSolution solve(const AssembledSystem& sys, Solver solver);

/// Solve A u = rhs for an arbitrary lower Hessenberg A with the chosen method.
std::vector<double> solve_system(const LowerHessenbergMatrix& a, std::span<const double> rhs,
                                 Solver solver);

}  // namespace fracbvp
