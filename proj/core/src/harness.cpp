#include "fracbvp/harness.hpp"

#include "fracbvp/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>

namespace fracbvp {

double max_error(const DiscreteSolution& sol, const FracPoly& exact) {
    double e = 0.0;
    for (std::size_t j = 0; j < sol.values.size(); ++j) {
        e = std::max(e, std::abs(exact.eval(sol.x(static_cast<int>(j))) - sol.values[j]));
    }
    return e;
}

double order(double e_n, double e_2n) {
    if (!(e_n > 0.0) || !(e_2n > 0.0)) {
        throw DomainError("order: errors must be positive");
    }
    return std::log2(e_n / e_2n);
}

namespace {

double coincident_difference(std::span<const double> coarse, std::span<const double> fine) {
    double d = 0.0;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
        d = std::max(d, std::abs(coarse[j] - fine[2 * j]));
    }
    return d;
}

void check_doubling(const std::vector<int>& ns) {
    if (ns.empty()) {
        throw DomainError("run_study: empty N list");
    }
    for (std::size_t i = 1; i < ns.size(); ++i) {
        if (ns[i] != 2 * ns[i - 1]) {
            throw DomainError("run_study: N values must be strictly doubling");
        }
    }
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads; results by index.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, int jobs, Fn fn) {
    std::vector<T> out(count);
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::size_t next = 0;
    std::vector<std::pair<std::size_t, std::future<T>>> running;
    while (next < count || !running.empty()) {
        while (next < count && running.size() < static_cast<std::size_t>(jobs)) {
            running.emplace_back(next, std::async(std::launch::async, fn, next));
            ++next;
        }
        auto& [idx, fut] = running.front();
        out[idx] = fut.get();
        running.erase(running.begin());
    }
    return out;
}

}  // namespace

double two_mesh_difference(const FractionalBVP& p, int intervals, Solver solver) {
    const auto coarse = solve(assemble(p, intervals), solver);
    const auto fine = solve(assemble(p, 2 * intervals), solver);
    return coincident_difference(coarse.values, fine.values);
}

ConvergenceTable run_study(const ProblemBuilder& builder, const std::vector<double>& deltas,
                           const std::vector<int>& ns, StudyMode mode,
                           const StudyOptions& options) {
    check_doubling(ns);
    ConvergenceTable table;
    table.mode = mode;
    table.deltas = deltas;
    table.ns = ns;

    // Mesh sizes whose solutions are needed: the error at N needs N (exact) or
    // N and 2N (two-mesh); an order at N needs the error at 2N.
    std::vector<int> error_ns = ns;
    if (options.extend) {
        error_ns.push_back(2 * ns.back());
    }
    std::set<int> solve_ns(error_ns.begin(), error_ns.end());
    if (mode == StudyMode::two_mesh) {
        for (int n : error_ns) {
            solve_ns.insert(2 * n);
        }
    }

    struct Job {
        std::size_t delta_index;
        int n;
    };
    std::vector<Job> jobs;
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        for (int n : solve_ns) {
            jobs.push_back({di, n});
        }
    }

    // One solve per (delta, N); exact mode keeps only the error.
    struct Outcome {
        double error = 0.0;
        std::vector<double> values;
    };
    const auto outcomes = parallel_map<Outcome>(jobs.size(), options.jobs, [&](std::size_t i) {
        const auto p = builder(deltas[jobs[i].delta_index]);
        auto sol = solve(assemble(p, jobs[i].n), options.solver);
        Outcome out;
        if (mode == StudyMode::exact) {
            if (!p.exact) {
                throw DomainError("run_study: exact mode needs an exact solution for " + p.name);
            }
            out.error = max_error(sol, *p.exact);
        } else {
            out.values = std::move(sol.values);
        }
        return out;
    });
    std::map<std::pair<std::size_t, int>, const Outcome*> by_key;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        by_key[{jobs[i].delta_index, jobs[i].n}] = &outcomes[i];
    }

    const auto error_at = [&](std::size_t di, int n) {
        if (mode == StudyMode::exact) {
            return by_key.at({di, n})->error;
        }
        return coincident_difference(by_key.at({di, n})->values, by_key.at({di, 2 * n})->values);
    };

    const std::size_t cols = ns.size();
    table.cells.assign(deltas.size(), std::vector<TableCell>(cols));
    std::vector<double> uniform_err(error_ns.size(), 0.0);
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        std::vector<double> errs;
        for (int n : error_ns) {
            errs.push_back(error_at(di, n));
        }
        for (std::size_t c = 0; c < error_ns.size(); ++c) {
            uniform_err[c] = std::max(uniform_err[c], errs[c]);
        }
        for (std::size_t c = 0; c < cols; ++c) {
            auto& cell = table.cells[di][c];
            cell.error = errs[c];
            if (c + 1 < errs.size() && errs[c] > 0.0 && errs[c + 1] > 0.0) {
                cell.order = order(errs[c], errs[c + 1]);
            }
        }
    }
    table.uniform.resize(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        table.uniform[c].error = uniform_err[c];
        if (!deltas.empty() && c + 1 < uniform_err.size() && uniform_err[c] > 0.0 &&
            uniform_err[c + 1] > 0.0) {
            table.uniform[c].order = order(uniform_err[c], uniform_err[c + 1]);
        }
    }
    return table;
}

std::vector<double> truncation_profile(const FractionalBVP& p, int intervals) {
    if (!p.exact) {
        throw DomainError("truncation_profile: problem has no exact solution");
    }
    const auto sys = assemble(p, intervals);
    std::vector<double> nodal(sys.mesh().nodes());
    for (std::size_t j = 0; j < nodal.size(); ++j) {
        nodal[j] = p.exact->eval(sys.mesh().x(static_cast<int>(j)));
    }
    auto tau = sys.matrix().multiply(nodal);
    for (std::size_t j = 0; j < tau.size(); ++j) {
        tau[j] -= sys.rhs()[j];
    }
    return tau;
}

BoundaryTruncation boundary_truncation(const FractionalBVP& p, int intervals) {
    if (!p.exact) {
        throw DomainError("boundary_truncation: problem has no exact solution");
    }
    const UniformMesh mesh(intervals);
    const auto rows = boundary_rows(p, mesh);
    const auto& u = *p.exact;
    const int n = intervals;
    BoundaryTruncation t;
    t.tau0 = rows.a00 * u.eval(0.0) + rows.a01 * u.eval(mesh.x(1)) - rows.rhs0;
    t.tauN = rows.aNm1 * u.eval(mesh.x(n - 1)) + rows.aNN * u.eval(1.0) - rows.rhsN;
    return t;
}

double fit_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw DomainError("fit_slope: need at least two paired samples");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

std::vector<double> default_deltas() {
    std::vector<double> d;
    for (int i = 1; i <= 9; ++i) {
        d.push_back((10 + i) / 10.0);
    }
    return d;
}

std::vector<int> default_ns() {
    return {64, 128, 256, 512, 1024, 2048};
}

}  // namespace fracbvp
