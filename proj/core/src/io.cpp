#include "fracbvp/io.hpp"

#include "fracbvp/error.hpp"
#include "fracbvp/expression.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fracbvp::io {

using nlohmann::json;

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5E", v);
    return buf;
}

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

double scalar_in_delta(const json& j, double delta, const std::string& field) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        const auto expr = Expression::parse(j.get<std::string>());
        if (expr.depends_on_x()) {
            throw ParseError("field '" + field + "' must not depend on x");
        }
        return expr.evaluate(0.0, delta);
    }
    throw ParseError("field '" + field + "' must be a number or an expression string");
}

FracPoly fracpoly_from(const json& j, double delta) {
    if (!j.is_array()) {
        throw ParseError("fractional polynomial must be an array of {coeff, power}");
    }
    std::vector<Term> terms;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("coeff") || !item.contains("power")) {
            throw ParseError("fractional polynomial term needs 'coeff' and 'power'");
        }
        terms.push_back({scalar_in_delta(item["coeff"], delta, "coeff"),
                         scalar_in_delta(item["power"], delta, "power")});
    }
    return FracPoly(FracExpr(std::move(terms)));
}

Coefficient coefficient_from(const json& j, double delta, const std::string& field) {
    if (j.is_number()) {
        return Coefficient(j.get<double>());
    }
    if (j.is_array()) {
        return Coefficient(fracpoly_from(j, delta));
    }
    if (j.is_string()) {
        const auto expr = Expression::parse(j.get<std::string>());
        if (!expr.depends_on_x()) {
            return Coefficient(expr.evaluate(0.0, delta));
        }
        return Coefficient([expr, delta](double x) { return expr.evaluate(x, delta); },
                           expr.source());
    }
    throw ParseError("field '" + field + "' must be a number, an array or an expression");
}

const json& require(const json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw ParseError(std::string("problem file: missing field '") + key + "'");
    }
    return doc[key];
}

bool is_keyword(const json& j, const char* word) {
    return j.is_string() && j.get<std::string>() == word;
}

}  // namespace

FracPoly parse_fracpoly(std::string_view json_text, double delta) {
    return fracpoly_from(parse_json(json_text), delta);
}

ProblemFile ProblemFile::parse(std::string_view json_text) {
    const json doc = parse_json(json_text);
    if (!doc.is_object()) {
        throw ParseError("problem file: top level must be an object");
    }
    ProblemFile file;
    file.text_ = std::string(json_text);
    file.name_ = doc.value("name", std::string("problem"));
    const auto& d = require(doc, "delta");
    if (!d.is_number()) {
        throw ParseError("problem file: 'delta' must be a number");
    }
    file.delta_ = d.get<double>();
    file.has_exact_ = doc.contains("exact") && !doc["exact"].is_null();
    // Resolve once so schema errors surface at load time.
    (void)file.build();
    return file;
}

ProblemFile ProblemFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open problem file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

FractionalBVP ProblemFile::build(std::optional<double> delta) const {
    const json doc = parse_json(text_);
    FractionalBVP p;
    p.name = name_;
    p.delta = delta.value_or(delta_);
    const double dl = p.delta;

    try {
        if (has_exact_) {
            p.exact = fracpoly_from(doc["exact"], dl);
        }
        p.b = coefficient_from(require(doc, "b"), dl, "b");
        p.c = coefficient_from(require(doc, "c"), dl, "c");
        p.alpha0 = scalar_in_delta(require(doc, "alpha0"), dl, "alpha0");
        p.alpha1 = scalar_in_delta(require(doc, "alpha1"), dl, "alpha1");

        const auto& f = require(doc, "f");
        if (is_keyword(f, "manufactured")) {
            if (!p.exact) {
                throw ParseError("'f': \"manufactured\" requires an 'exact' solution");
            }
            if (!p.b.fracexpr() || !p.c.fracexpr()) {
                throw ParseError("'f': \"manufactured\" requires fractional-polynomial b and c");
            }
            p.f = manufactured_rhs(*p.exact, FracPoly(*p.b.fracexpr()), FracPoly(*p.c.fracexpr()),
                                   dl);
        } else {
            p.f = coefficient_from(f, dl, "f");
        }

        const auto& g0 = require(doc, "gamma0");
        const auto& g1 = require(doc, "gamma1");
        if ((is_keyword(g0, "auto") || is_keyword(g1, "auto")) && !p.exact) {
            throw ParseError("\"auto\" boundary data requires an 'exact' solution");
        }
        if (is_keyword(g0, "auto")) {
            p.gamma0 = p.exact->eval(0.0) - p.alpha0 * p.exact->derivative(1).eval(0.0);
        } else {
            p.gamma0 = scalar_in_delta(g0, dl, "gamma0");
        }
        if (is_keyword(g1, "auto")) {
            p.gamma1 = p.exact->eval(1.0) + p.alpha1 * p.exact->derivative(1).eval(1.0);
        } else {
            p.gamma1 = scalar_in_delta(g1, dl, "gamma1");
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("problem file: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(std::string("problem file: ") + e.what());
    }
    return p;
}

void write_solution_csv(std::ostream& os, const DiscreteSolution& sol, const FracPoly* exact) {
    os << (exact ? "x,u_numeric,u_exact,error\n" : "x,u_numeric\n");
    for (std::size_t j = 0; j < sol.values.size(); ++j) {
        const double x = sol.x(static_cast<int>(j));
        os << format_sci(x) << ',' << format_sci(sol.values[j]);
        if (exact) {
            const double u = exact->eval(x);
            os << ',' << format_sci(u) << ',' << format_sci(std::abs(u - sol.values[j]));
        }
        os << '\n';
    }
}

std::string solution_json(const DiscreteSolution& sol, const FracPoly* exact) {
    json doc;
    doc["N"] = sol.mesh.intervals();
    doc["solver"] = std::string(to_string(sol.info.used));
    doc["residual"] = sol.info.residual;
    json xs = json::array();
    json us = json::array();
    json ue = json::array();
    json err = json::array();
    for (std::size_t j = 0; j < sol.values.size(); ++j) {
        const double x = sol.x(static_cast<int>(j));
        xs.push_back(x);
        us.push_back(sol.values[j]);
        if (exact) {
            const double u = exact->eval(x);
            ue.push_back(u);
            err.push_back(std::abs(u - sol.values[j]));
        }
    }
    doc["x"] = xs;
    doc["u_numeric"] = us;
    if (exact) {
        doc["u_exact"] = ue;
        doc["error"] = err;
    }
    return doc.dump(2);
}

void write_matrix_csv(std::ostream& os, const LowerHessenbergMatrix& a) {
    os << "j,k,a_jk\n";
    for (std::size_t j = 0; j < a.order(); ++j) {
        const auto r = a.row(j);
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k] != 0.0) {
                os << j << ',' << k << ',' << format_sci(r[k]) << '\n';
            }
        }
    }
}

namespace {

std::string delta_label(double d) {
    std::ostringstream os;
    os << d;
    return os.str();
}

}  // namespace

void write_table_csv(std::ostream& os, const ConvergenceTable& table) {
    os << "delta,N,error,order\n";
    const auto line = [&](const std::string& label, int n, const TableCell& cell) {
        os << label << ',' << n << ',' << format_sci(cell.error) << ',';
        if (cell.order) {
            os << format_sci(*cell.order);
        }
        os << '\n';
    };
    for (std::size_t di = 0; di < table.deltas.size(); ++di) {
        for (std::size_t c = 0; c < table.ns.size(); ++c) {
            line(delta_label(table.deltas[di]), table.ns[c], table.cells[di][c]);
        }
    }
    for (std::size_t c = 0; c < table.ns.size(); ++c) {
        line("uniform", table.ns[c], table.uniform[c]);
    }
}

std::string table_json(const ConvergenceTable& table) {
    const auto cell_json = [](const TableCell& cell) {
        json j;
        j["error"] = cell.error;
        j["order"] = cell.order ? json(*cell.order) : json(nullptr);
        return j;
    };
    json doc;
    doc["mode"] = table.mode == StudyMode::exact ? "exact" : "two_mesh";
    doc["deltas"] = table.deltas;
    doc["Ns"] = table.ns;
    json rows = json::array();
    for (std::size_t di = 0; di < table.deltas.size(); ++di) {
        json row;
        row["delta"] = table.deltas[di];
        json cells = json::array();
        for (std::size_t c = 0; c < table.ns.size(); ++c) {
            json cj = cell_json(table.cells[di][c]);
            cj["N"] = table.ns[c];
            cells.push_back(cj);
        }
        row["cells"] = cells;
        rows.push_back(row);
    }
    doc["rows"] = rows;
    json uniform = json::array();
    for (std::size_t c = 0; c < table.ns.size(); ++c) {
        json cj = cell_json(table.uniform[c]);
        cj["N"] = table.ns[c];
        uniform.push_back(cj);
    }
    doc["uniform"] = uniform;
    return doc.dump(2);
}

void write_table_text(std::ostream& os, const ConvergenceTable& table) {
    const bool exact = table.mode == StudyMode::exact;
    const auto err_text = [](double e) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3E", e);
        return std::string(buf);
    };
    const auto order_text = [](const std::optional<double>& p) {
        if (!p) {
            return std::string("-");
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", *p);
        return std::string(buf);
    };
    constexpr int kLabel = 12;
    constexpr int kCol = 12;
    os << std::left << std::setw(kLabel) << "";
    for (int n : table.ns) {
        os << std::right << std::setw(kCol) << ("N=" + std::to_string(n));
    }
    os << '\n';
    const auto rows = [&](const std::string& label, const std::string& order_label,
                          const std::vector<TableCell>& cells) {
        os << std::left << std::setw(kLabel) << label;
        for (const auto& c : cells) {
            os << std::right << std::setw(kCol) << err_text(c.error);
        }
        os << '\n' << std::left << std::setw(kLabel) << order_label;
        for (const auto& c : cells) {
            os << std::right << std::setw(kCol) << order_text(c.order);
        }
        os << '\n';
    };
    for (std::size_t di = 0; di < table.deltas.size(); ++di) {
        rows("delta=" + delta_label(table.deltas[di]), "", table.cells[di]);
    }
    rows(exact ? "e_N" : "d_N", exact ? "p_N" : "q_N", table.uniform);
}

std::string report_json(const MonotonicityReport& report) {
    json doc;
    doc["m_matrix"] = report.m_matrix;
    doc["row_sum_positivity"] = report.row_sum_positivity;
    json checks = json::array();
    for (const auto& c : report.sign_checks) {
        json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        if (c.witness) {
            cj["witness"] = {c.witness->first, c.witness->second};
            cj["value"] = c.witness_value;
        } else {
            cj["witness"] = nullptr;
        }
        checks.push_back(cj);
    }
    doc["checks"] = checks;
    return doc.dump(2);
}

std::string validation_json(const ValidationReport& report) {
    json doc;
    doc["ok"] = report.ok();
    json checks = json::array();
    for (const auto& c : report.checks) {
        json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        cj["message"] = c.message;
        cj["witness"] = c.witness ? json(*c.witness) : json(nullptr);
        checks.push_back(cj);
    }
    doc["checks"] = checks;
    return doc.dump(2);
}

}  // namespace fracbvp::io
