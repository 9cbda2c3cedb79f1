#pragma once

#include "fracbvp/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fracbvp {

/// Uniform mesh x_j = j/N on [0, 1], N >= 4.
class UniformMesh {
public:
    static constexpr int kMinIntervals = 4;

    explicit UniformMesh(int intervals);

    [[nodiscard]] int intervals() const { return n_; }
    [[nodiscard]] std::size_t nodes() const { return static_cast<std::size_t>(n_) + 1; }
    [[nodiscard]] double h() const { return 1.0 / n_; }
    [[nodiscard]] double x(int j) const { return static_cast<double>(j) / n_; }

    friend bool operator==(const UniformMesh&, const UniformMesh&) = default;

private:
    int n_;
};

/// Dense lower Hessenberg matrix of order n: row j stores columns
/// 0..min(j+1, n-1) contiguously; entries right of the superdiagonal are
/// structurally zero.
class LowerHessenbergMatrix {
public:
    LowerHessenbergMatrix() = default;
    explicit LowerHessenbergMatrix(std::size_t order);

    [[nodiscard]] std::size_t order() const { return n_; }
    /// Number of stored columns in row j.
    [[nodiscard]] std::size_t row_length(std::size_t j) const { return j + 2 < n_ ? j + 2 : n_; }

    [[nodiscard]] std::span<double> row(std::size_t j) {
        return {data_.data() + offset(j), row_length(j)};
    }
    [[nodiscard]] std::span<const double> row(std::size_t j) const {
        return {data_.data() + offset(j), row_length(j)};
    }

    /// Entry (j, k); zero for k > j + 1.
    [[nodiscard]] double operator()(std::size_t j, std::size_t k) const {
        return k < row_length(j) ? data_[offset(j) + k] : 0.0;
    }
    /// Mutable access to a stored entry; k must be <= min(j+1, n-1).
    [[nodiscard]] double& at(std::size_t j, std::size_t k);

    [[nodiscard]] std::vector<double> multiply(std::span<const double> v) const;
    [[nodiscard]] double row_sum(std::size_t j) const;
    [[nodiscard]] double norm_inf() const;

private:
    [[nodiscard]] std::size_t offset(std::size_t j) const { return j * (j + 3) / 2; }

    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// d_r = r_+^(2-delta) - (r-1)_+^(2-delta); zero for r <= 0.
double weight(long r, double delta);

/// The weights d_0..d_max_r, computed once per (delta, N).
std::vector<double> caputo_weights(double delta, int max_r);

/// Normalizing factor kappa = Gamma(3 - delta) h^delta of the discrete Caputo operator.
double caputo_scale(double delta, double h);

/// Coefficients of u_{j-1}, u_j, u_{j+1} in the upwinded b_j u'(x_j).
struct UpwindStencil {
    double lower = 0.0;
    double diag = 0.0;
    double upper = 0.0;
};
UpwindStencil upwind_coeffs(double b_j, double h);

/// Coefficients over columns 0..j+1 of the discrete -D^delta u(x_j), 1 <= j <= N-1.
std::vector<double> caputo_row(int j, double delta, int intervals);

/// The linear system A u = rhs of the finite difference scheme. Immutable.
class AssembledSystem {
public:
    [[nodiscard]] const FractionalBVP& problem() const { return problem_; }
    [[nodiscard]] const UniformMesh& mesh() const { return mesh_; }
    [[nodiscard]] const LowerHessenbergMatrix& matrix() const { return matrix_; }
    [[nodiscard]] std::span<const double> rhs() const { return rhs_; }
    [[nodiscard]] double kappa() const { return kappa_; }
    /// d_0..d_N
    [[nodiscard]] std::span<const double> weights() const { return weights_; }

private:
    friend AssembledSystem assemble(const FractionalBVP& p, int intervals);

    AssembledSystem(FractionalBVP problem, UniformMesh mesh)
        : problem_(std::move(problem)), mesh_(mesh) {}

    FractionalBVP problem_;
    UniformMesh mesh_;
    LowerHessenbergMatrix matrix_;
    std::vector<double> rhs_;
    double kappa_ = 0.0;
    std::vector<double> weights_;
};

/// Robin rows: (1 + alpha0/h, -alpha0/h | gamma0) and (-alpha1/h, 1 + alpha1/h | gamma1).
struct BoundaryRows {
    double a00 = 0.0;
    double a01 = 0.0;
    double rhs0 = 0.0;
    double aNm1 = 0.0;
    double aNN = 0.0;
    double rhsN = 0.0;
};
BoundaryRows boundary_rows(const FractionalBVP& p, const UniformMesh& mesh);

/// Build A and rhs = (gamma0, f(x_1), ..., f(x_{N-1}), gamma1).
/// Throws ValidationError if validate(p) fails, DomainError if N < 4.
AssembledSystem assemble(const FractionalBVP& p, int intervals);

}  // namespace fracbvp
