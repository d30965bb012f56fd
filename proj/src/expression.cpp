#include "maslov/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "maslov/errors.hpp"

namespace maslov {

struct Expression::Node {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
    double value = 0.0;
    double (*fn)(double) = nullptr;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x) const {
        switch (kind) {
            case Kind::Number: return value;
            case Kind::Var: return x;
            case Kind::Neg: return -lhs->eval(x);
            case Kind::Add: return lhs->eval(x) + rhs->eval(x);
            case Kind::Sub: return lhs->eval(x) - rhs->eval(x);
            case Kind::Mul: return lhs->eval(x) * rhs->eval(x);
            case Kind::Div: return lhs->eval(x) / rhs->eval(x);
            case Kind::Pow: {
                const double e = rhs->eval(x);
                // Integer powers through repeated multiplication keep sech(x)^2
                // bit-identical to sech(x)*sech(x).
                if (e == std::round(e) && std::abs(e) <= 16) {
                    const double b = lhs->eval(x);
                    double r = 1.0;
                    for (int k = 0; k < static_cast<int>(std::abs(e)); ++k) r *= b;
                    return e < 0 ? 1.0 / r : r;
                }
                return std::pow(lhs->eval(x), e);
            }
            case Kind::Call: return fn(lhs->eval(x));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

double sech(double v) { return 1.0 / std::cosh(v); }
double absval(double v) { return std::abs(v); }

NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("expression \"" + s_ + "\": " + what + " at position " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr l = term();
        for (;;) {
            if (accept('+')) l = make(Kind::Add, l, term());
            else if (accept('-')) l = make(Kind::Sub, l, term());
            else return l;
        }
    }

    NodePtr term() {
        NodePtr l = unary();
        for (;;) {
            if (accept('*')) l = make(Kind::Mul, l, unary());
            else if (accept('/')) l = make(Kind::Div, l, unary());
            else return l;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Kind::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Kind::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            auto n = std::make_shared<Expression::Node>();
            n->kind = Kind::Number;
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "x") return make(Kind::Var);
            if (name == "pi") {
                auto n = std::make_shared<Expression::Node>();
                n->kind = Kind::Number;
                n->value = std::numbers::pi;
                return n;
            }
            double (*fn)(double) = nullptr;
            if (name == "sin") fn = [](double v) { return std::sin(v); };
            else if (name == "cos") fn = [](double v) { return std::cos(v); };
            else if (name == "tan") fn = [](double v) { return std::tan(v); };
            else if (name == "exp") fn = [](double v) { return std::exp(v); };
            else if (name == "log") fn = [](double v) { return std::log(v); };
            else if (name == "sqrt") fn = [](double v) { return std::sqrt(v); };
            else if (name == "abs") fn = absval;
            else if (name == "sinh") fn = [](double v) { return std::sinh(v); };
            else if (name == "cosh") fn = [](double v) { return std::cosh(v); };
            else if (name == "tanh") fn = [](double v) { return std::tanh(v); };
            else if (name == "sech") fn = sech;
            else {
                pos_ = start;
                fail("unknown identifier '" + name + "'");
            }
            if (!accept('(')) fail("expected '(' after " + name);
            NodePtr arg = expr();
            if (!accept(')')) fail("expected ')'");
            auto n = std::make_shared<Expression::Node>();
            n->kind = Kind::Call;
            n->fn = fn;
            n->lhs = std::move(arg);
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.text_ = text;
    e.root_ = Parser(e.text_).parse();
    return e;
}

double Expression::operator()(double x) const {
    return root_ ? root_->eval(x) : 0.0;
}

}  // namespace maslov
