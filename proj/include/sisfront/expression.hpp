#pragma once

#include <string>
#include <vector>

#include "sisfront/errors.hpp"

namespace sisfront {

/// Raised on a syntax error; message carries the offending position.
struct ExpressionError : ValidationError {
    using ValidationError::ValidationError;
};

/// A closed-form scalar function of one variable, parsed from a small
/// arithmetic language:
///
///   operators  + - * / ^ (power, right-associative), unary -
///   functions  sin, cos, exp
///   constants  decimal literals, pi
///   variable   x
///
/// Parsed once into a postfix program and evaluated on demand. Evaluation
/// is pure and safe to call concurrently. Expressions without `x` are
/// folded to a constant at parse time.
class Expression {
public:
    Expression() = default;

    /// Parses `text`; throws ExpressionError on malformed input.
    static Expression parse(const std::string& text);

    double operator()(double x) const { return eval(x); }
    double eval(double x) const;

    const std::string& text() const { return text_; }
    bool is_constant() const { return constant_; }

private:
    enum class Op : unsigned char {
        PushConst,
        PushX,
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Neg,
        Sin,
        Cos,
        Exp,
    };

    struct Instr {
        Op op;
        double value = 0.0;  // for PushConst
    };

    std::string text_;
    std::vector<Instr> program_;
    bool constant_ = false;
    double constant_value_ = 0.0;

    friend class ExpressionParser;
};

}  // namespace sisfront
