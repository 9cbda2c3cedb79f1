#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace fracbvp {

/// Scalar arithmetic expression in the variables `x` and `delta`, used for
/// black-box coefficients in problem files ("1 + sin(x)") and for symbolic
/// powers ("2*delta-1").
///
/// Grammar: numbers, x, delta, pi, e, + - * / ^ (right-associative),
/// unary minus, parentheses, and the functions sin cos tan exp log sqrt abs.
class Expression {
public:
    /// Throws ParseError on malformed input.
    static Expression parse(std::string_view text);

    [[nodiscard]] double evaluate(double x, double delta) const;
    [[nodiscard]] bool depends_on_x() const;
    [[nodiscard]] const std::string& source() const { return source_; }

    struct Node;

private:
    Expression(std::shared_ptr<const Node> root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace fracbvp
