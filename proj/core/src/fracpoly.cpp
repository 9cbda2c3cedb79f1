#include "fracbvp/fracpoly.hpp"

#include "fracbvp/error.hpp"
#include "fracbvp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fracbvp {

FracExpr::FracExpr(std::initializer_list<Term> terms) : terms_(terms) {
    canonicalize();
}

FracExpr::FracExpr(std::vector<Term> terms) : terms_(std::move(terms)) {
    canonicalize();
}

FracExpr FracExpr::constant(double value) {
    return FracExpr{{value, 0.0}};
}

FracExpr FracExpr::monomial(double coeff, double power) {
    return FracExpr{{coeff, power}};
}

void FracExpr::canonicalize() {
    for (const auto& t : terms_) {
        if (!std::isfinite(t.coeff) || !std::isfinite(t.power)) {
            throw DomainError("FracExpr: non-finite coefficient or power");
        }
        if (t.power <= -1.0) {
            throw DomainError("FracExpr: power " + std::to_string(t.power) +
                              " is not integrable at 0 (need power > -1)");
        }
    }
    for (auto& t : terms_) {
        const double nearest = std::round(t.power);
        if (std::abs(t.power - nearest) <= kPowerMergeTol) {
            t.power = nearest;
        }
    }
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& a, const Term& b) { return a.power < b.power; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!merged.empty() && std::abs(t.power - merged.back().power) <= kPowerMergeTol) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });
    terms_ = std::move(merged);
}

double FracExpr::min_power() const {
    return terms_.empty() ? std::numeric_limits<double>::infinity() : terms_.front().power;
}

bool FracExpr::regular_at_zero() const {
    return terms_.empty() || terms_.front().power >= 0.0;
}

double FracExpr::eval(double x) const {
    if (x < 0.0 || std::isnan(x)) {
        throw DomainError("FracExpr::eval: x must be >= 0, got " + std::to_string(x));
    }
    double sum = 0.0;
    if (x == 0.0) {
        for (const auto& t : terms_) {
            if (t.power < 0.0) {
                throw DomainError("FracExpr::eval: x^" + std::to_string(t.power) +
                                  " is unbounded at x = 0");
            }
            if (t.power == 0.0) {
                sum += t.coeff;
            }
        }
        return sum;
    }
    for (const auto& t : terms_) {
        sum += t.power == 0.0 ? t.coeff : t.coeff * std::pow(x, t.power);
    }
    return sum;
}

FracExpr FracExpr::derivative(int k) const {
    if (k < 0) {
        throw DomainError("FracExpr::derivative: order must be non-negative");
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        double c = t.coeff;
        for (int i = 0; i < k; ++i) {
            c *= t.power - i;
        }
        if (c != 0.0) {
            out.push_back({c, t.power - k});
        }
    }
    return FracExpr(std::move(out));
}

FracExpr& FracExpr::operator+=(const FracExpr& rhs) {
    terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    canonicalize();
    return *this;
}

FracExpr& FracExpr::operator-=(const FracExpr& rhs) {
    for (const auto& t : rhs.terms_) {
        terms_.push_back({-t.coeff, t.power});
    }
    canonicalize();
    return *this;
}

FracExpr& FracExpr::operator*=(double s) {
    for (auto& t : terms_) {
        t.coeff *= s;
    }
    canonicalize();
    return *this;
}

FracExpr operator*(const FracExpr& lhs, const FracExpr& rhs) {
    std::vector<Term> out;
    out.reserve(lhs.size() * rhs.size());
    for (const auto& a : lhs.terms_) {
        for (const auto& b : rhs.terms_) {
            out.push_back({a.coeff * b.coeff, a.power + b.power});
        }
    }
    return FracExpr(std::move(out));
}

FracPoly::FracPoly(std::initializer_list<Term> terms) : FracPoly(FracExpr(terms)) {}

FracPoly::FracPoly(FracExpr expr) : expr_(std::move(expr)) {
    if (!expr_.regular_at_zero()) {
        throw DomainError("FracPoly: negative power " + std::to_string(expr_.min_power()) +
                          " not allowed");
    }
}

FracExpr caputo(const FracPoly& p, double sigma) {
    if (!(sigma > 1.0 && sigma < 2.0)) {
        throw DomainError("caputo: order must lie in (1, 2), got " + std::to_string(sigma));
    }
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        if (t.power == 0.0 || t.power == 1.0) {
            continue;
        }
        if (t.power < 1.0) {
            throw DomainError("caputo: term x^" + std::to_string(t.power) +
                              " has power in (0, 1); only powers 0, 1 or > 1 are admissible");
        }
        const double scale = specfun::gamma(t.power + 1.0) / specfun::gamma(t.power + 1.0 - sigma);
        out.push_back({t.coeff * scale, t.power - sigma});
    }
    return FracExpr(std::move(out));
}

FracExpr manufactured_rhs(const FracPoly& u, const FracPoly& b, const FracPoly& c,
                          double delta) {
    return -caputo(u, delta) + b.expr() * u.derivative(1) + c.expr() * u.expr();
}

std::string to_string(const FracExpr& e) {
    if (e.empty()) {
        return "0";
    }
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& t : e.terms()) {
        if (!first) {
            os << (t.coeff < 0 ? " - " : " + ");
        } else if (t.coeff < 0) {
            os << "-";
        }
        first = false;
        os << std::abs(t.coeff);
        if (t.power != 0.0) {
            os << "*x^" << t.power;
        }
    }
    return os.str();
}

}  // namespace fracbvp
