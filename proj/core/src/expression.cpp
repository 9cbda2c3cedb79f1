#include "fracbvp/expression.hpp"

#include "fracbvp/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace fracbvp {

struct Expression::Node {
    enum class Kind { number, var_x, var_delta, neg, add, sub, mul, div, pow, call };
    enum class Fn { sin, cos, tan, exp, log, sqrt, abs };

    Kind kind = Kind::number;
    double value = 0.0;
    Fn fn = Fn::sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    [[nodiscard]] double eval(double x, double delta) const {
        switch (kind) {
            case Kind::number: return value;
            case Kind::var_x: return x;
            case Kind::var_delta: return delta;
            case Kind::neg: return -lhs->eval(x, delta);
            case Kind::add: return lhs->eval(x, delta) + rhs->eval(x, delta);
            case Kind::sub: return lhs->eval(x, delta) - rhs->eval(x, delta);
            case Kind::mul: return lhs->eval(x, delta) * rhs->eval(x, delta);
            case Kind::div: return lhs->eval(x, delta) / rhs->eval(x, delta);
            case Kind::pow: return std::pow(lhs->eval(x, delta), rhs->eval(x, delta));
            case Kind::call: {
                const double a = lhs->eval(x, delta);
                switch (fn) {
                    case Fn::sin: return std::sin(a);
                    case Fn::cos: return std::cos(a);
                    case Fn::tan: return std::tan(a);
                    case Fn::exp: return std::exp(a);
                    case Fn::log: return std::log(a);
                    case Fn::sqrt: return std::sqrt(a);
                    case Fn::abs: return std::abs(a);
                }
            }
        }
        return 0.0;
    }

    [[nodiscard]] bool uses_x() const {
        if (kind == Kind::var_x) {
            return true;
        }
        return (lhs && lhs->uses_x()) || (rhs && rhs->uses_x());
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make_binary(Node::Kind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        auto root = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected character");
        }
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression '" + std::string(text_) + "': " + what + " at offset " +
                         std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_sum() {
        auto lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = make_binary(Node::Kind::add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = make_binary(Node::Kind::sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_binary(Node::Kind::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_binary(Node::Kind::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::neg;
            n->lhs = parse_unary();
            return n;
        }
        if (accept('+')) {
            return parse_unary();
        }
        return parse_power();
    }

    // Exponent binds tighter than unary minus on its left: -x^2 == -(x^2).
    NodePtr parse_power() {
        auto base = parse_primary();
        if (accept('^')) {
            return make_binary(Node::Kind::pow, base, parse_unary());
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_sum();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return parse_identifier();
        }
        fail(std::string("unexpected '") + c + "'");
    }

    NodePtr parse_number() {
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{}) {
            fail("bad number");
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        auto n = std::make_shared<Node>();
        n->value = value;
        return n;
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        auto n = std::make_shared<Node>();
        if (name == "x") {
            n->kind = Node::Kind::var_x;
            return n;
        }
        if (name == "delta") {
            n->kind = Node::Kind::var_delta;
            return n;
        }
        if (name == "pi") {
            n->value = std::numbers::pi;
            return n;
        }
        if (name == "e") {
            n->value = std::numbers::e;
            return n;
        }
        static const std::vector<std::pair<std::string_view, Node::Fn>> functions = {
            {"sin", Node::Fn::sin},   {"cos", Node::Fn::cos},   {"tan", Node::Fn::tan},
            {"exp", Node::Fn::exp},   {"log", Node::Fn::log},   {"sqrt", Node::Fn::sqrt},
            {"abs", Node::Fn::abs},
        };
        for (const auto& [fname, fn] : functions) {
            if (name == fname) {
                if (!accept('(')) {
                    fail("expected '(' after " + std::string(name));
                }
                n->kind = Node::Kind::call;
                n->fn = fn;
                n->lhs = parse_sum();
                if (!accept(')')) {
                    fail("expected ')'");
                }
                return n;
            }
        }
        fail("unknown identifier '" + std::string(name) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
    return Expression(Parser(text).parse(), std::string(text));
}

double Expression::evaluate(double x, double delta) const {
    return root_->eval(x, delta);
}

bool Expression::depends_on_x() const {
    return root_->uses_x();
}

}  // namespace fracbvp
