#ifndef SKEWFLOW_EXPRESSION_HPP
#define SKEWFLOW_EXPRESSION_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skewflow {

// Scalar expression over variables x1..xd (plain `x` when d == 1) with
// + - * / ^, unary minus, parentheses, sin cos exp, and the constants pi, e.
class Expression {
public:
    // Throws ParseError with the offending position.
    static Expression parse(std::string_view text, std::size_t dimension);

    double evaluate(std::span<const double> x) const;
    const std::string& source() const { return source_; }

private:
    enum class Op { constant, variable, add, sub, mul, div, pow, neg, sin, cos, exp };
    struct Node {
        Op op;
        double value = 0.0;     // constant
        std::size_t index = 0;  // variable
        std::size_t lhs = 0, rhs = 0;
    };

    double eval(std::size_t node, std::span<const double> x) const;

    std::string source_;
    std::vector<Node> nodes_;
    std::size_t root_ = 0;

    friend class ExpressionParser;
};

// Velocity of one vertex's system; writes dx/dt for state x into out.
using VectorField = std::function<void(std::span<const double> x, std::span<double> out)>;

// One expression per component.
VectorField expression_field(const std::vector<std::string>& components);
// 1-D polynomial: dx/dt = sum_k coefficients[k] * x^k.
VectorField polynomial_field(std::vector<double> coefficients);
// dx/dt = A x, A given row-major as d rows of d entries.
VectorField linear_field(std::vector<std::vector<double>> matrix);

} // namespace skewflow

#endif
