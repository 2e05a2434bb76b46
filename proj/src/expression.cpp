#include "skewflow/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "skewflow/error.hpp"

namespace skewflow {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, std::size_t dimension, Expression& out)
        : text_(text), dimension_(dimension), out_(out) {}

    void run() {
        out_.root_ = parse_sum();
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }

private:
    using Op = Expression::Op;

    std::size_t add(Expression::Node node) {
        out_.nodes_.push_back(node);
        return out_.nodes_.size() - 1;
    }
    std::size_t binary(Op op, std::size_t lhs, std::size_t rhs) { return add({op, 0.0, 0, lhs, rhs}); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::size_t parse_sum() {
        std::size_t lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = binary(Op::add, lhs, parse_product());
            else if (accept('-'))
                lhs = binary(Op::sub, lhs, parse_product());
            else
                return lhs;
        }
    }

    std::size_t parse_product() {
        std::size_t lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = binary(Op::mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = binary(Op::div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    std::size_t parse_unary() {
        if (accept('-')) return add({Op::neg, 0.0, 0, parse_unary(), 0});
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    // Right associative; the exponent may carry its own sign.
    std::size_t parse_power() {
        const std::size_t base = parse_primary();
        if (accept('^')) return binary(Op::pow, base, parse_unary());
        return base;
    }

    std::size_t parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const auto inner = parse_sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            const auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
            if (ec != std::errc()) throw ParseError("invalid number", start);
            pos_ = static_cast<std::size_t>(end - text_.data());
            return add({Op::constant, value});
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "pi") return add({Op::constant, std::numbers::pi});
            if (name == "e") return add({Op::constant, std::numbers::e});
            if (name == "sin" || name == "cos" || name == "exp") {
                if (!accept('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
                const auto arg = parse_sum();
                if (!accept(')')) throw ParseError("expected ')'", pos_);
                const Op op = name == "sin" ? Op::sin : name == "cos" ? Op::cos : Op::exp;
                return add({op, 0.0, 0, arg, 0});
            }
            if (name == "x" && dimension_ == 1) return add({Op::variable, 0.0, 0});
            if (name.size() > 1 && name[0] == 'x') {
                std::size_t index = 0;
                const auto [end, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
                if (ec == std::errc() && end == name.data() + name.size() && index >= 1 && index <= dimension_)
                    return add({Op::variable, 0.0, index - 1});
            }
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", start);
    }

    std::string_view text_;
    std::size_t dimension_;
    Expression& out_;
    std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text, std::size_t dimension) {
    Expression expr;
    expr.source_ = std::string(text);
    ExpressionParser(text, dimension, expr).run();
    return expr;
}

double Expression::evaluate(std::span<const double> x) const { return eval(root_, x); }

double Expression::eval(std::size_t index, std::span<const double> x) const {
    const Node& n = nodes_[index];
    switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return x[n.index];
    case Op::add: return eval(n.lhs, x) + eval(n.rhs, x);
    case Op::sub: return eval(n.lhs, x) - eval(n.rhs, x);
    case Op::mul: return eval(n.lhs, x) * eval(n.rhs, x);
    case Op::div: return eval(n.lhs, x) / eval(n.rhs, x);
    case Op::pow: return std::pow(eval(n.lhs, x), eval(n.rhs, x));
    case Op::neg: return -eval(n.lhs, x);
    case Op::sin: return std::sin(eval(n.lhs, x));
    case Op::cos: return std::cos(eval(n.lhs, x));
    case Op::exp: return std::exp(eval(n.lhs, x));
    }
    return 0.0;
}

VectorField expression_field(const std::vector<std::string>& components) {
    std::vector<Expression> exprs;
    for (const auto& c : components) exprs.push_back(Expression::parse(c, components.size()));
    return [exprs = std::move(exprs)](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < exprs.size(); ++i) out[i] = exprs[i].evaluate(x);
    };
}

VectorField polynomial_field(std::vector<double> coefficients) {
    return [c = std::move(coefficients)](std::span<const double> x, std::span<double> out) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x[0] + *it;
        out[0] = acc;
    };
}

VectorField linear_field(std::vector<std::vector<double>> matrix) {
    for (const auto& row : matrix)
        if (row.size() != matrix.size()) throw ValidationError("linear field matrix must be square");
    return [a = std::move(matrix)](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < a.size(); ++j) acc += a[i][j] * x[j];
            out[i] = acc;
        }
    };
}

} // namespace skewflow
