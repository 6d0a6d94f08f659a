#include "holonomy/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "holonomy/errors.hpp"

namespace holonomy {

struct Expression::Node {
    enum class Kind { Constant, BaseVar, FiberVar, Neg, Add, Sub, Mul, Div, Pow, Exp, Ln, Sin, Cos };
    Kind kind;
    double value = 0.0;  // Constant
    int index = 0;       // BaseVar / FiberVar (0-based)
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

/// Recursive-descent parser over the expression grammar.
class Parser {
public:
    Parser(const std::string& text, int base_dim, int fiber_dim)
        : s_(text), base_dim_(base_dim), fiber_dim_(fiber_dim) {}

    NodePtr run() {
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw SchemaError("expression", msg + " at position " + std::to_string(pos_) + " in '" +
                                            s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        NodePtr e = parse_product();
        for (;;) {
            if (eat('+'))
                e = make_node({Node::Kind::Add, 0, 0, e, parse_product()});
            else if (eat('-'))
                e = make_node({Node::Kind::Sub, 0, 0, e, parse_product()});
            else
                return e;
        }
    }

    NodePtr parse_product() {
        NodePtr e = parse_unary();
        for (;;) {
            if (eat('*'))
                e = make_node({Node::Kind::Mul, 0, 0, e, parse_unary()});
            else if (eat('/'))
                e = make_node({Node::Kind::Div, 0, 0, e, parse_unary()});
            else
                return e;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return make_node({Node::Kind::Neg, 0, 0, parse_unary(), nullptr});
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (eat('^')) {
            // right-associative; the exponent may itself be signed
            NodePtr exp = parse_unary();
            return make_node({Node::Kind::Pow, 0, 0, base, exp});
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_sum();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<size_t>(end - begin);
        return make_node({Node::Kind::Constant, v, 0, nullptr, nullptr});
    }

    NodePtr parse_name() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);

        if (name == "pi") return make_node({Node::Kind::Constant, M_PI, 0, nullptr, nullptr});
        if (name == "exp" || name == "ln" || name == "sin" || name == "cos") {
            if (!eat('(')) fail("'" + name + "' expects '('");
            NodePtr a = parse_sum();
            if (!eat(')')) fail("missing ')' after '" + name + "'");
            Node::Kind k = name == "exp"  ? Node::Kind::Exp
                           : name == "ln" ? Node::Kind::Ln
                           : name == "sin" ? Node::Kind::Sin
                                           : Node::Kind::Cos;
            return make_node({k, 0, 0, a, nullptr});
        }
        if (name == "pow") {
            if (!eat('(')) fail("'pow' expects '('");
            NodePtr a = parse_sum();
            if (!eat(',')) fail("'pow' expects two arguments");
            NodePtr b = parse_sum();
            if (!eat(')')) fail("missing ')' after 'pow'");
            return make_node({Node::Kind::Pow, 0, 0, a, b});
        }
        if ((name[0] == 'x' || name[0] == 'g') && name.size() > 1) {
            bool digits = true;
            for (size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
            if (digits) {
                int idx = std::atoi(name.c_str() + 1);
                int dim = name[0] == 'x' ? base_dim_ : fiber_dim_;
                if (idx < 1 || idx > dim)
                    fail("variable '" + name + "' out of range (declared dimension " +
                         std::to_string(dim) + ")");
                Node::Kind k = name[0] == 'x' ? Node::Kind::BaseVar : Node::Kind::FiberVar;
                return make_node({k, 0, idx - 1, nullptr, nullptr});
            }
        }
        fail("unknown name '" + name + "'");
    }

    const std::string& s_;
    size_t pos_ = 0;
    int base_dim_;
    int fiber_dim_;
};

double eval_node(const Node& n, const Vec& x, const Vec& g) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Constant: return n.value;
        case K::BaseVar: return x[n.index];
        case K::FiberVar: return g[n.index];
        case K::Neg: return -eval_node(*n.a, x, g);
        case K::Add: return eval_node(*n.a, x, g) + eval_node(*n.b, x, g);
        case K::Sub: return eval_node(*n.a, x, g) - eval_node(*n.b, x, g);
        case K::Mul: return eval_node(*n.a, x, g) * eval_node(*n.b, x, g);
        case K::Div: return eval_node(*n.a, x, g) / eval_node(*n.b, x, g);
        case K::Pow: return std::pow(eval_node(*n.a, x, g), eval_node(*n.b, x, g));
        case K::Exp: return std::exp(eval_node(*n.a, x, g));
        case K::Ln: return std::log(eval_node(*n.a, x, g));
        case K::Sin: return std::sin(eval_node(*n.a, x, g));
        case K::Cos: return std::cos(eval_node(*n.a, x, g));
    }
    return 0.0;
}

}  // namespace

Expression Expression::parse(const std::string& text, int base_dim, int fiber_dim) {
    Expression e;
    e.text_ = text;
    e.root_ = Parser(text, base_dim, fiber_dim).run();
    return e;
}

double Expression::eval(const Vec& x, const Vec& g) const {
    if (!root_) throw Error("Expression: eval on empty expression");
    return eval_node(*root_, x, g);
}

}  // namespace holonomy
