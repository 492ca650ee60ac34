#pragma once

#include "dirichlet/errors.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace dirichlet::cli {

class ExpressionError : public Error {
public:
    ExpressionError(std::size_t column, const std::string& message);
    /// 1-based column in the expression text.
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// Data expression in x and y. Grammar: numbers, x, y, sin, cos, exp,
/// |.|, + - * / ^ and parentheses; '^' binds tighter than unary minus and
/// is right associative.
class Expression {
public:
    static Expression parse(std::string_view text);
    static Expression constant(double value);

    /// c times this expression.
    Expression scaled(double c) const;

    double operator()(double x, double y) const;
    bool depends_on_position() const noexcept;
    const std::string& source() const noexcept { return source_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

} // namespace dirichlet::cli
