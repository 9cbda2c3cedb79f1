#pragma once

#include "fracbvp/discretize.hpp"
#include "fracbvp/linsolve.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fracbvp {

/// max_j |u(x_j) - u_j|
double max_error(const DiscreteSolution& sol, const FracPoly& exact);

/// log2(e_N / e_2N); DomainError unless both are positive.
double order(double e_n, double e_2n);

/// max_j |u_j - z_2j| between the solutions on N and 2N intervals.
double two_mesh_difference(const FractionalBVP& p, int intervals, Solver solver = Solver::lu);

enum class StudyMode { exact, two_mesh };

struct StudyOptions {
    Solver solver = Solver::lu;
    /// Also compute the error at 2 * max(Ns) so the last column gets an order.
    bool extend = false;
    /// Worker threads for independent cells; 1 runs serially.
    int jobs = 1;
};

struct TableCell {
    double error = 0.0;
    std::optional<double> order;
};

/// Errors (or two-mesh differences) and orders on a delta x N grid, plus the
/// uniform row e_N = max_delta e_N^delta, p_N = log2(e_N / e_2N).
struct ConvergenceTable {
    StudyMode mode = StudyMode::exact;
    std::vector<double> deltas;
    std::vector<int> ns;
    std::vector<std::vector<TableCell>> cells;  // [delta index][N index]
    std::vector<TableCell> uniform;             // [N index]

    [[nodiscard]] const TableCell& at(std::size_t delta_index, std::size_t n_index) const {
        return cells[delta_index][n_index];
    }
};

using ProblemBuilder = std::function<FractionalBVP(double delta)>;

/// Ns must be strictly doubling. In exact mode every built problem needs an
/// exact solution.
ConvergenceTable run_study(const ProblemBuilder& builder, const std::vector<double>& deltas,
                           const std::vector<int>& ns, StudyMode mode,
                           const StudyOptions& options = {});

/// tau = A (u(x_0), ..., u(x_N))^T - rhs for the exact solution u.
std::vector<double> truncation_profile(const FractionalBVP& p, int intervals);

/// tau_0 and tau_N from the boundary rows alone; O(1) in N, so usable far
/// beyond the meshes that can be assembled.
struct BoundaryTruncation {
    double tau0 = 0.0;
    double tauN = 0.0;
};
BoundaryTruncation boundary_truncation(const FractionalBVP& p, int intervals);

/// Least-squares slope of ys against xs.
double fit_slope(std::span<const double> xs, std::span<const double> ys);

/// Default reference grids.
std::vector<double> default_deltas();  // 1.1, 1.2, ..., 1.9
std::vector<int> default_ns();         // 64, 128, ..., 2048

}  // namespace fracbvp
