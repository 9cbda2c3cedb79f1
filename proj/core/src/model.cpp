#include "fracbvp/model.hpp"

#include "fracbvp/error.hpp"

#include <cmath>
#include <sstream>

namespace fracbvp {

Coefficient::Coefficient(double constant) : Coefficient(FracExpr::constant(constant)) {}

Coefficient::Coefficient(FracExpr expr)
    : expr_(std::move(expr)), description_(to_string(*expr_)) {
    fn_ = [e = *expr_](double x) { return e.eval(x); };
}

Coefficient::Coefficient(const FracPoly& poly) : Coefficient(poly.expr()) {}

Coefficient::Coefficient(std::function<double(double)> fn, std::string description)
    : fn_(std::move(fn)), description_(std::move(description)) {}

bool ValidationReport::ok() const {
    for (const auto& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

std::string ValidationReport::failures() const {
    std::string out;
    for (const auto& c : checks) {
        if (!c.passed) {
            if (!out.empty()) {
                out += "; ";
            }
            out += c.message;
        }
    }
    return out;
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("problem validation failed: " + report.failures()),
      report_(std::move(report)) {}

ValidationReport validate(const FractionalBVP& p) {
    ValidationReport report;
    auto add = [&](std::string name, bool ok, std::string message,
                   std::optional<double> witness = std::nullopt) {
        report.checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(message),
                                 witness});
    };

    const bool delta_ok = p.delta > 1.0 && p.delta < 2.0;
    add("delta_range", delta_ok, "delta must lie in (1, 2), got " + std::to_string(p.delta));

    if (delta_ok) {
        // Relative slack absorbs rounding in 1/(delta - 1), e.g. delta = 1.4.
        const double bound = 1.0 / (p.delta - 1.0);
        const bool ok = p.alpha0 >= bound * (1.0 - 1e-12);
        std::ostringstream msg;
        msg.precision(17);
        msg << "requires alpha0 >= 1/(delta-1): alpha0 = " << p.alpha0 << ", 1/(delta-1) = " << bound;
        add("alpha0_bound", ok, msg.str());
    } else {
        add("alpha0_bound", false, "alpha0 >= 1/(delta-1) cannot be checked without valid delta");
    }

    add("alpha1_nonnegative", p.alpha1 >= 0.0,
        "alpha1 < 0: alpha1 = " + std::to_string(p.alpha1));

    bool c_ok = true;
    std::optional<double> witness;
    std::string c_msg;
    for (int i = 0; i < kValidationSamples && c_ok; ++i) {
        const double x = static_cast<double>(i) / (kValidationSamples - 1);
        double value = 0.0;
        try {
            value = p.c(x);
        } catch (const DomainError&) {
            if (i == 0 || i == kValidationSamples - 1) {
                continue;  // endpoint singularity; hypothesis is on (0, 1)
            }
            throw;
        }
        if (!(value >= 0.0)) {
            c_ok = false;
            witness = x;
            c_msg = "c(x) < 0 at x = " + std::to_string(x) + " (c = " + std::to_string(value) + ")";
        }
    }
    add("c_nonnegative", c_ok, c_msg, witness);
    return report;
}

FracPoly test_problem_1_solution(double delta) {
    return FracPoly{{1.0, delta}, {1.0, 2.0 * delta - 1.0}, {1.0, 0.0}, {3.0, 1.0},
                    {-7.0, 2.0},  {4.0, 3.0},                {1.0, 4.0}};
}

FractionalBVP test_problem_1(double delta) {
    FractionalBVP p;
    p.name = "tp1";
    p.delta = delta;
    const FracPoly u = test_problem_1_solution(delta);
    const FracPoly b{{1.0, 2.0}};
    const FracPoly c{{1.0, 0.0}, {1.0, 1.0}};
    p.b = b;
    p.c = c;
    p.f = manufactured_rhs(u, b, c, delta);
    p.alpha0 = 1.0 / (delta - 1.0);
    p.alpha1 = 1.0;
    const FracExpr du = u.derivative(1);
    p.gamma0 = u.eval(0.0) - p.alpha0 * du.eval(0.0);
    p.gamma1 = u.eval(1.0) + p.alpha1 * du.eval(1.0);
    p.exact = u;
    return p;
}

FractionalBVP test_problem_2(double delta) {
    FractionalBVP p;
    p.name = "tp2";
    p.delta = delta;
    p.b = 2.0;
    p.c = 3.0;
    p.f = 1.25;
    p.alpha0 = 1.0 / (delta - 1.0);
    p.alpha1 = 0.0;
    p.gamma0 = 0.4;
    p.gamma1 = 1.7;
    return p;
}

std::optional<FractionalBVP> builtin_problem(const std::string& name, double delta) {
    if (name == "tp1") {
        return test_problem_1(delta);
    }
    if (name == "tp2") {
        return test_problem_2(delta);
    }
    return std::nullopt;
}

}  // namespace fracbvp
