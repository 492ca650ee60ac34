#include "dirichlet/cli/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace dirichlet::cli {

enum class Op { Number, X, Y, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Abs };

struct Expression::Node {
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

using NodePtr = std::shared_ptr<const Expression::Node>;

ExpressionError::ExpressionError(std::size_t column, const std::string& message)
    : Error("column " + std::to_string(column) + ": " + message), column_(column)
{
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Bar, End };

struct Token {
    Tok kind;
    std::size_t column;
    double number = 0.0;
    std::string text{};
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        const std::size_t col = i + 1;
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        // UTF-8 middle dot and minus sign
        if (s.compare(i, 2, "\xC2\xB7") == 0) {
            out.push_back({Tok::Star, col, 0.0, {}});
            i += 2;
            continue;
        }
        if (s.compare(i, 3, "\xE2\x88\x92") == 0) {
            out.push_back({Tok::Minus, col, 0.0, {}});
            i += 3;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
            if (ec != std::errc())
                throw ExpressionError(col, "malformed number");
            out.push_back({Tok::Number, col, v, {}});
            i = static_cast<std::size_t>(ptr - s.data());
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j])))
                ++j;
            out.push_back({Tok::Ident, col, 0.0, std::string(s.substr(i, j - i))});
            i = j;
            continue;
        }
        Tok kind;
        switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '|': kind = Tok::Bar; break;
        default:
            throw ExpressionError(col, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, col, 0.0, {}});
        ++i;
    }
    out.push_back({Tok::End, s.size() + 1, 0.0, {}});
    return out;
}

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0)
{
    return std::make_shared<const Expression::Node>(Expression::Node{op, v, std::move(a), std::move(b)});
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

    NodePtr parse()
    {
        NodePtr n = expr();
        if (peek().kind != Tok::End)
            throw ExpressionError(peek().column, "unexpected trailing input");
        return n;
    }

private:
    const Token& peek() const { return t_[pos_]; }
    const Token& next() { return t_[pos_++]; }
    void expect(Tok kind, const char* what)
    {
        if (peek().kind != kind)
            throw ExpressionError(peek().column, std::string("expected ") + what);
        ++pos_;
    }

    NodePtr expr()
    {
        NodePtr n = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Op op = next().kind == Tok::Plus ? Op::Add : Op::Sub;
            n = make(op, n, term());
        }
        return n;
    }

    NodePtr term()
    {
        NodePtr n = unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Op op = next().kind == Tok::Star ? Op::Mul : Op::Div;
            n = make(op, n, unary());
        }
        return n;
    }

    NodePtr unary()
    {
        if (peek().kind == Tok::Minus) {
            next();
            return make(Op::Neg, unary());
        }
        if (peek().kind == Tok::Plus) {
            next();
            return unary();
        }
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (peek().kind == Tok::Caret) {
            next();
            return make(Op::Pow, base, unary());
        }
        return base;
    }

    NodePtr primary()
    {
        const Token& tok = next();
        switch (tok.kind) {
        case Tok::Number:
            return make(Op::Number, nullptr, nullptr, tok.number);
        case Tok::LParen: {
            NodePtr n = expr();
            expect(Tok::RParen, "')'");
            return n;
        }
        case Tok::Bar: {
            NodePtr n = expr();
            expect(Tok::Bar, "closing '|'");
            return make(Op::Abs, n);
        }
        case Tok::Ident: {
            if (tok.text == "x")
                return make(Op::X);
            if (tok.text == "y")
                return make(Op::Y);
            Op fn;
            if (tok.text == "sin")
                fn = Op::Sin;
            else if (tok.text == "cos")
                fn = Op::Cos;
            else if (tok.text == "exp")
                fn = Op::Exp;
            else
                throw ExpressionError(tok.column, "unknown name '" + tok.text + "'");
            expect(Tok::LParen, "'(' after function name");
            NodePtr arg = expr();
            expect(Tok::RParen, "')'");
            return make(fn, arg);
        }
        case Tok::End:
            throw ExpressionError(tok.column, "unexpected end of expression");
        default:
            throw ExpressionError(tok.column, "unexpected token");
        }
    }

    std::vector<Token> t_;
    std::size_t pos_ = 0;
};

double eval(const Expression::Node& n, double x, double y)
{
    switch (n.op) {
    case Op::Number: return n.value;
    case Op::X: return x;
    case Op::Y: return y;
    case Op::Neg: return -eval(*n.a, x, y);
    case Op::Add: return eval(*n.a, x, y) + eval(*n.b, x, y);
    case Op::Sub: return eval(*n.a, x, y) - eval(*n.b, x, y);
    case Op::Mul: return eval(*n.a, x, y) * eval(*n.b, x, y);
    case Op::Div: return eval(*n.a, x, y) / eval(*n.b, x, y);
    case Op::Pow: return std::pow(eval(*n.a, x, y), eval(*n.b, x, y));
    case Op::Sin: return std::sin(eval(*n.a, x, y));
    case Op::Cos: return std::cos(eval(*n.a, x, y));
    case Op::Exp: return std::exp(eval(*n.a, x, y));
    case Op::Abs: return std::abs(eval(*n.a, x, y));
    }
    return 0.0;
}

bool uses_position(const Expression::Node& n)
{
    if (n.op == Op::X || n.op == Op::Y)
        return true;
    return (n.a && uses_position(*n.a)) || (n.b && uses_position(*n.b));
}

} // namespace

Expression Expression::parse(std::string_view text)
{
    Expression e;
    e.root_ = Parser(tokenize(text)).parse();
    e.source_ = std::string(text);
    return e;
}

Expression Expression::constant(double value)
{
    Expression e;
    e.root_ = make(Op::Number, nullptr, nullptr, value);
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    e.source_ = std::string(buf, res.ptr);
    return e;
}

Expression Expression::scaled(double c) const
{
    Expression e = constant(c);
    e.source_ += "*(" + source_ + ")";
    e.root_ = make(Op::Mul, e.root_, root_);
    return e;
}

double Expression::operator()(double x, double y) const
{
    return eval(*root_, x, y);
}

bool Expression::depends_on_position() const noexcept
{
    return uses_position(*root_);
}

} // namespace dirichlet::cli
