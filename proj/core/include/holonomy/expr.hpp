#pragma once

#include <memory>
#include <string>

#include "holonomy/types.hpp"

namespace holonomy {

/// Small arithmetic expression over base variables x1..xm and fiber
/// variables g1..gn.
///
/// Grammar: numbers, x<k>, g<k>, + - * / ^ with the usual precedence, unary
/// minus, parentheses, and the functions exp, ln, sin, cos, pow(a, b).
/// Parse errors raise SchemaError with the offending position.
class Expression {
public:
    Expression() = default;

    static Expression parse(const std::string& text, int base_dim, int fiber_dim);

    double eval(const Vec& x, const Vec& g) const;
    const std::string& text() const { return text_; }
    bool valid() const { return static_cast<bool>(root_); }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace holonomy
