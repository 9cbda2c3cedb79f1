#include "fracbvp/discretize.hpp"

#include "fracbvp/error.hpp"
#include "fracbvp/specfun.hpp"

#include <cmath>
#include <string>

namespace fracbvp {

UniformMesh::UniformMesh(int intervals) : n_(intervals) {
    if (intervals < kMinIntervals) {
        throw DomainError("UniformMesh: need N >= " + std::to_string(kMinIntervals) +
                          ", got " + std::to_string(intervals));
    }
}

LowerHessenbergMatrix::LowerHessenbergMatrix(std::size_t order) : n_(order) {
    const std::size_t size = order == 0 ? 0 : offset(order - 1) + row_length(order - 1);
    data_.assign(size, 0.0);
}

double& LowerHessenbergMatrix::at(std::size_t j, std::size_t k) {
    if (j >= n_ || k >= row_length(j)) {
        throw std::out_of_range("LowerHessenbergMatrix::at: (" + std::to_string(j) + ", " +
                                std::to_string(k) + ") outside the Hessenberg profile");
    }
    return data_[offset(j) + k];
}

std::vector<double> LowerHessenbergMatrix::multiply(std::span<const double> v) const {
    if (v.size() != n_) {
        throw std::invalid_argument("LowerHessenbergMatrix::multiply: size mismatch");
    }
    std::vector<double> out(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        const auto r = row(j);
        double sum = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            sum += r[k] * v[k];
        }
        out[j] = sum;
    }
    return out;
}

double LowerHessenbergMatrix::row_sum(std::size_t j) const {
    double sum = 0.0;
    for (double a : row(j)) {
        sum += a;
    }
    return sum;
}

double LowerHessenbergMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        double sum = 0.0;
        for (double a : row(j)) {
            sum += std::abs(a);
        }
        best = std::max(best, sum);
    }
    return best;
}

double weight(long r, double delta) {
    const double e = 2.0 - delta;
    const auto pos_pow = [e](long s) { return s > 0 ? std::pow(static_cast<double>(s), e) : 0.0; };
    return pos_pow(r) - pos_pow(r - 1);
}

std::vector<double> caputo_weights(double delta, int max_r) {
    std::vector<double> d(static_cast<std::size_t>(max_r) + 1, 0.0);
    const double e = 2.0 - delta;
    double prev = 0.0;  // (r-1)^e
    for (int r = 1; r <= max_r; ++r) {
        const double cur = std::pow(static_cast<double>(r), e);
        d[static_cast<std::size_t>(r)] = cur - prev;
        prev = cur;
    }
    return d;
}

double caputo_scale(double delta, double h) {
    return specfun::gamma(3.0 - delta) * std::pow(h, delta);
}

UpwindStencil upwind_coeffs(double b_j, double h) {
    const double ab = std::abs(b_j);
    return {-(b_j + ab) / (2.0 * h), ab / h, (b_j - ab) / (2.0 * h)};
}

namespace {

// Fill columns 0..j+1 of `out` with -(1/kappa) sum_{k=0}^{j-1} d_{j-k}(u_{k+2} - 2u_{k+1} + u_k).
void fill_caputo_row(std::span<double> out, int j, std::span<const double> d, double kappa) {
    const auto dd = [&](int r) { return r > 0 ? d[static_cast<std::size_t>(r)] : 0.0; };
    out[0] = -dd(j) / kappa;
    out[1] = (-dd(j - 1) + 2.0 * dd(j)) / kappa;
    for (int k = 2; k <= j + 1; ++k) {
        out[static_cast<std::size_t>(k)] =
            (-dd(j - k) + 2.0 * dd(j - k + 1) - dd(j - k + 2)) / kappa;
    }
}

}  // namespace

std::vector<double> caputo_row(int j, double delta, int intervals) {
    const UniformMesh mesh(intervals);
    if (j < 1 || j > intervals - 1) {
        throw DomainError("caputo_row: row index must lie in 1..N-1");
    }
    const auto d = caputo_weights(delta, intervals);
    std::vector<double> out(static_cast<std::size_t>(j) + 2, 0.0);
    fill_caputo_row(out, j, d, caputo_scale(delta, mesh.h()));
    return out;
}

BoundaryRows boundary_rows(const FractionalBVP& p, const UniformMesh& mesh) {
    const double h = mesh.h();
    BoundaryRows rows;
    rows.a00 = 1.0 + p.alpha0 / h;
    rows.a01 = -p.alpha0 / h;
    rows.rhs0 = p.gamma0;
    rows.aNm1 = -p.alpha1 / h;
    rows.aNN = 1.0 + p.alpha1 / h;
    rows.rhsN = p.gamma1;
    return rows;
}

AssembledSystem assemble(const FractionalBVP& p, int intervals) {
    const UniformMesh mesh(intervals);
    auto report = validate(p);
    if (!report.ok()) {
        throw ValidationError(std::move(report));
    }

    AssembledSystem sys(p, mesh);
    const int n = intervals;
    const double h = mesh.h();
    sys.kappa_ = caputo_scale(p.delta, h);
    sys.weights_ = caputo_weights(p.delta, n);
    sys.matrix_ = LowerHessenbergMatrix(mesh.nodes());
    sys.rhs_.assign(mesh.nodes(), 0.0);

    auto& a = sys.matrix_;
    const auto boundary = boundary_rows(p, mesh);
    a.at(0, 0) = boundary.a00;
    a.at(0, 1) = boundary.a01;
    sys.rhs_[0] = boundary.rhs0;

    for (int j = 1; j < n; ++j) {
        const auto row = a.row(static_cast<std::size_t>(j));
        fill_caputo_row(row, j, sys.weights_, sys.kappa_);
        const double x = mesh.x(j);
        const auto up = upwind_coeffs(p.b(x), h);
        const auto jj = static_cast<std::size_t>(j);
        row[jj - 1] += up.lower;
        row[jj] += up.diag + p.c(x);
        row[jj + 1] += up.upper;
        sys.rhs_[jj] = p.f(x);
    }

    const auto last = static_cast<std::size_t>(n);
    a.at(last, last - 1) = boundary.aNm1;
    a.at(last, last) = boundary.aNN;
    sys.rhs_[last] = boundary.rhsN;
    return sys;
}

}  // namespace fracbvp
