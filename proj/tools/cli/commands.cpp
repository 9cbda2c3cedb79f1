#include "cli/commands.hpp"

#include <fracbvp/fracbvp.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace fracbvp::cli {
namespace {

struct RunConfig {
    std::string command;
    std::string problem;
    std::optional<double> delta;
    std::vector<double> deltas;
    int n = 64;
    std::vector<int> ns;
    std::string output;
    std::string format;
    std::string solver;
    std::string mode;
    int jobs = 1;
    std::optional<double> alpha0;
    bool extend = false;
};

/// A built-in problem name or a problem file, turned into a FractionalBVP per delta.
class ProblemSource {
public:
    explicit ProblemSource(const std::string& spec) {
        if (builtin_problem(spec, 1.5)) {
            builtin_ = spec;
        } else {
            file_ = io::ProblemFile::load(spec);
        }
    }

    [[nodiscard]] std::optional<double> default_delta() const {
        if (file_) {
            return file_->delta();
        }
        return std::nullopt;
    }

    [[nodiscard]] FractionalBVP build(double delta) const {
        if (file_) {
            return file_->build(delta);
        }
        return *builtin_problem(builtin_, delta);
    }

private:
    std::string builtin_;
    std::optional<io::ProblemFile> file_;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ProblemBuilder make_builder(const RunConfig& cfg) {
    if (cfg.problem.empty()) {
        throw UsageError("a problem is required: tp1, tp2 or a JSON file");
    }
    auto source = std::make_shared<ProblemSource>(cfg.problem);
    const auto alpha0 = cfg.alpha0;
    return [source, alpha0](double delta) {
        auto p = source->build(delta);
        if (alpha0) {
            p.alpha0 = *alpha0;
            if (p.exact) {
                // Keep the known solution exact under the new Robin coefficient.
                p.gamma0 = p.exact->eval(0.0) - p.alpha0 * p.exact->derivative(1).eval(0.0);
            }
        }
        return p;
    };
}

double single_delta(const RunConfig& cfg) {
    if (cfg.delta) {
        return *cfg.delta;
    }
    if (!cfg.problem.empty()) {
        if (const auto d = ProblemSource(cfg.problem).default_delta()) {
            return *d;
        }
    }
    throw UsageError("--delta is required for built-in problems");
}

Solver solver_or(const RunConfig& cfg, Solver fallback) {
    return cfg.solver.empty() ? fallback : parse_solver(cfg.solver);
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output);
    if (!file || !(file << text)) {
        throw std::ios_base::failure("cannot write " + cfg.output);
    }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto p = make_builder(cfg)(single_delta(cfg));
    const auto sol = solve(assemble(p, cfg.n), solver_or(cfg, Solver::lu));
    if (sol.info.fell_back) {
        err << "note: " << to_string(sol.info.requested) << " solver fell back to "
            << to_string(sol.info.used) << '\n';
    }
    const FracPoly* exact = p.exact ? &*p.exact : nullptr;
    std::ostringstream os;
    if (cfg.format == "json") {
        os << io::solution_json(sol, exact) << '\n';
    } else if (cfg.format == "csv" || cfg.format.empty()) {
        io::write_solution_csv(os, sol, exact);
    } else {
        throw UsageError("solve supports --format csv or json");
    }
    emit(cfg, out, os.str());
    return kOk;
}

std::string render_table(const ConvergenceTable& table, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        os << io::table_json(table) << '\n';
    } else if (format == "csv") {
        io::write_table_csv(os, table);
    } else {
        io::write_table_text(os, table);
    }
    return os.str();
}

int study(const RunConfig& cfg, std::ostream& out, const ProblemBuilder& builder,
          std::vector<double> deltas, StudyMode mode, bool extend, Solver solver,
          const std::string& default_format) {
    const auto ns = cfg.ns.empty() ? default_ns() : cfg.ns;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 4 || (i > 0 && ns[i] != 2 * ns[i - 1])) {
            throw UsageError("--Ns must start at 4 or more and double at each step");
        }
    }
    StudyOptions options;
    options.solver = solver;
    options.extend = extend;
    options.jobs = cfg.jobs;
    const auto table = run_study(builder, deltas, ns, mode, options);
    emit(cfg, out, render_table(table, cfg.format.empty() ? default_format : cfg.format));
    return kOk;
}

int cmd_study(const RunConfig& cfg, std::ostream& out) {
    const auto builder = make_builder(cfg);
    auto deltas = cfg.deltas;
    if (deltas.empty()) {
        deltas.push_back(single_delta(cfg));
    }
    StudyMode mode = StudyMode::two_mesh;
    if (cfg.mode == "exact") {
        mode = StudyMode::exact;
    } else if (cfg.mode.empty() && builder(deltas.front()).exact) {
        mode = StudyMode::exact;
    }
    return study(cfg, out, builder, deltas, mode, cfg.extend, solver_or(cfg, Solver::lu), "csv");
}

int cmd_table(const RunConfig& cfg, std::ostream& out, const std::string& name, StudyMode mode) {
    RunConfig c = cfg;
    c.problem = name;
    const auto deltas = cfg.deltas.empty() ? default_deltas() : cfg.deltas;
    // Default grids extend past the last column so every order is filled.
    const bool extend = cfg.ns.empty() || cfg.extend;
    return study(c, out, make_builder(c), deltas, mode, extend,
                 solver_or(cfg, Solver::hessenberg), "table");
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto p = make_builder(cfg)(single_delta(cfg));
    const auto sys = assemble(p, cfg.n);
    const auto report = certify_monotone(sys.matrix());
    std::ostringstream os;
    if (cfg.format == "csv") {
        os << "check,passed,j,k,value\n";
        for (const auto& c : report.sign_checks) {
            os << c.name << ',' << (c.passed ? "true" : "false") << ',';
            if (c.witness) {
                os << c.witness->first << ',' << c.witness->second << ','
                   << io::format_sci(c.witness_value);
            } else {
                os << ",,";
            }
            os << '\n';
        }
        os << "m_matrix," << (report.m_matrix ? "true" : "false") << ",,,\n";
    } else if (cfg.format == "json" || cfg.format.empty()) {
        os << io::report_json(report) << '\n';
    } else {
        throw UsageError("verify supports --format csv or json");
    }
    emit(cfg, out, os.str());
    if (!report.m_matrix) {
        for (const auto& c : report.sign_checks) {
            if (!c.passed) {
                err << "certificate failed: " << c.name << '\n';
            }
        }
        return kCertificateFailed;
    }
    return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_problem) {
    if (needs_problem) {
        auto* pos = sub->add_option("source", cfg.problem, "tp1, tp2 or a problem JSON file");
        auto* flag = sub->add_option("--problem", cfg.problem, "problem JSON file or built-in name");
        pos->excludes(flag);
        sub->add_option("--alpha0", cfg.alpha0, "override the left Robin coefficient");
    }
    sub->add_option("--output,-o", cfg.output, "write results to a file instead of stdout");
    sub->add_option("--format", cfg.format, "csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    sub->add_option("--solver", cfg.solver, "lu, forward or hessenberg")
        ->check(CLI::IsMember({"lu", "forward", "hessenberg"}));
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--deltas", cfg.deltas, "comma-separated delta values")->delimiter(',');
    sub->add_option("--Ns", cfg.ns, "comma-separated doubling mesh sizes")->delimiter(',');
    sub->add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--extend", cfg.extend, "solve at 2*max(Ns) so the last column has an order");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Solver for Caputo two-point boundary value problems", "fracbvp"};
    app.require_subcommand(1);

    auto* solve_cmd = app.add_subcommand("solve", "solve one problem on one mesh");
    add_common(solve_cmd, cfg, true);
    solve_cmd->add_option("--delta", cfg.delta, "fractional order in (1, 2)");
    solve_cmd->add_option("--N", cfg.n, "mesh intervals")->check(CLI::Range(4, 1 << 20));

    auto* study_cmd = app.add_subcommand("study", "convergence study for one problem");
    add_common(study_cmd, cfg, true);
    study_cmd->add_option("--delta", cfg.delta, "single delta (shorthand for --deltas)");
    add_grid(study_cmd, cfg);
    study_cmd->add_option("--mode", cfg.mode, "exact or two-mesh (default: exact when known)")
        ->check(CLI::IsMember({"exact", "two-mesh"}));

    auto* table1_cmd = app.add_subcommand("table1", "errors and orders for test problem 1");
    add_common(table1_cmd, cfg, false);
    add_grid(table1_cmd, cfg);

    auto* table2_cmd = app.add_subcommand("table2", "two-mesh differences for test problem 2");
    add_common(table2_cmd, cfg, false);
    add_grid(table2_cmd, cfg);

    auto* verify_cmd = app.add_subcommand("verify", "check the M-matrix certificate");
    add_common(verify_cmd, cfg, true);
    verify_cmd->add_option("--delta", cfg.delta, "fractional order in (1, 2)");
    verify_cmd->add_option("--N", cfg.n, "mesh intervals")->check(CLI::Range(4, 1 << 16));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kIoError;
    }

    try {
        if (*solve_cmd) {
            return cmd_solve(cfg, out, err);
        }
        if (*study_cmd) {
            return cmd_study(cfg, out);
        }
        if (*table1_cmd) {
            return cmd_table(cfg, out, "tp1", StudyMode::exact);
        }
        if (*table2_cmd) {
            return cmd_table(cfg, out, "tp2", StudyMode::two_mesh);
        }
        return cmd_verify(cfg, out, err);
    } catch (const ValidationError& e) {
        err << "error: invalid problem\n";
        for (const auto& c : e.report().checks) {
            if (!c.passed) {
                err << "  " << c.name << ": " << c.message << '\n';
            }
        }
        return kValidationError;
    } catch (const DomainError& e) {
        err << "error: invalid problem: " << e.what() << '\n';
        return kValidationError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace fracbvp::cli
