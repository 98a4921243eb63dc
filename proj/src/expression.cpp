#include "sisfront/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace sisfront {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxStack = 64;
}  // namespace

/// Recursive-descent parser emitting a postfix program.
///
/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := factor (('*' | '/') factor)*
///   factor  := unary ('^' factor)?
///   unary   := ('-' | '+') unary | primary
///   primary := NUMBER | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
class ExpressionParser {
public:
    explicit ExpressionParser(const std::string& text) : text_(text) {}

    Expression run() {
        Expression result;
        result.text_ = text_;
        out_ = &result.program_;
        parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        if (result.program_.empty()) fail("empty expression");

        bool uses_x = false;
        for (const auto& ins : result.program_)
            if (ins.op == Expression::Op::PushX) uses_x = true;
        if (!uses_x) {
            result.constant_value_ = result.eval(0.0);
            result.constant_ = true;
        }
        return result;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    std::vector<Expression::Instr>* out_ = nullptr;

    [[noreturn]] void fail(const std::string& what) const {
        throw ExpressionError("expression error at position " +
                              std::to_string(pos_) + " in \"" + text_ +
                              "\": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void emit(Expression::Op op, double v = 0.0) { out_->push_back({op, v}); }

    void parse_expr() {
        parse_term();
        for (;;) {
            if (consume('+')) {
                parse_term();
                emit(Expression::Op::Add);
            } else if (consume('-')) {
                parse_term();
                emit(Expression::Op::Sub);
            } else {
                return;
            }
        }
    }

    void parse_term() {
        parse_factor();
        for (;;) {
            if (consume('*')) {
                parse_factor();
                emit(Expression::Op::Mul);
            } else if (consume('/')) {
                parse_factor();
                emit(Expression::Op::Div);
            } else {
                return;
            }
        }
    }

    // unary minus binds weaker than '^': -x^2 is -(x^2)
    void parse_factor() {
        if (consume('-')) {
            parse_factor();
            emit(Expression::Op::Neg);
            return;
        }
        if (consume('+')) {
            parse_factor();
            return;
        }
        parse_primary();
        if (consume('^')) {
            parse_factor();  // right-associative
            emit(Expression::Op::Pow);
        }
    }

    void parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected operand");
        char c = text_[pos_];

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = text_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start) fail("malformed number");
            pos_ += static_cast<std::size_t>(end - start);
            emit(Expression::Op::PushConst, v);
            return;
        }

        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (name == "x") {
                emit(Expression::Op::PushX);
                return;
            }
            if (name == "pi") {
                emit(Expression::Op::PushConst, kPi);
                return;
            }
            Expression::Op fn;
            if (name == "sin")
                fn = Expression::Op::Sin;
            else if (name == "cos")
                fn = Expression::Op::Cos;
            else if (name == "exp")
                fn = Expression::Op::Exp;
            else
                fail("unknown identifier \"" + name + "\"");
            if (!consume('(')) fail("expected '(' after " + name);
            parse_expr();
            if (!consume(')')) fail("expected ')'");
            emit(fn);
            return;
        }

        if (consume('(')) {
            parse_expr();
            if (!consume(')')) fail("expected ')'");
            return;
        }

        fail(std::string("unexpected character '") + c + "'");
    }
};

Expression Expression::parse(const std::string& text) {
    ExpressionParser parser(text);
    Expression e = parser.run();

    // eval() uses a fixed stack; reject anything nested deeply enough to
    // overflow it.
    int depth = 0, max_depth = 0;
    for (const auto& ins : e.program_) {
        switch (ins.op) {
            case Op::PushConst:
            case Op::PushX:
                ++depth;
                break;
            case Op::Add:
            case Op::Sub:
            case Op::Mul:
            case Op::Div:
            case Op::Pow:
                --depth;
                break;
            default:
                break;  // unary ops keep depth unchanged
        }
        max_depth = std::max(max_depth, depth);
    }
    if (max_depth > kMaxStack)
        throw ExpressionError("expression too deeply nested: \"" + text + "\"");
    return e;
}

double Expression::eval(double x) const {
    if (constant_) return constant_value_;

    double stack[kMaxStack];
    int top = -1;
    for (const auto& ins : program_) {
        switch (ins.op) {
            case Op::PushConst:
                stack[++top] = ins.value;
                break;
            case Op::PushX:
                stack[++top] = x;
                break;
            case Op::Add:
                stack[top - 1] += stack[top];
                --top;
                break;
            case Op::Sub:
                stack[top - 1] -= stack[top];
                --top;
                break;
            case Op::Mul:
                stack[top - 1] *= stack[top];
                --top;
                break;
            case Op::Div:
                stack[top - 1] /= stack[top];
                --top;
                break;
            case Op::Pow:
                stack[top - 1] = std::pow(stack[top - 1], stack[top]);
                --top;
                break;
            case Op::Neg:
                stack[top] = -stack[top];
                break;
            case Op::Sin:
                stack[top] = std::sin(stack[top]);
                break;
            case Op::Cos:
                stack[top] = std::cos(stack[top]);
                break;
            case Op::Exp:
                stack[top] = std::exp(stack[top]);
                break;
        }
    }
    return stack[0];
}

}  // namespace sisfront
