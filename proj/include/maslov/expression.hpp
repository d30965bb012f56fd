#pragma once

// Small arithmetic expression language in one variable `x`, used by model
// configs.  Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'x' | 'pi' | name '(' expr ')' | '(' expr ')'
// Functions: sin cos tan exp log sqrt abs sinh cosh tanh sech.

#include <memory>
#include <string>

namespace maslov {

class Expression {
public:
    // Throws InputError with the offending position on a syntax error.
    static Expression parse(const std::string& text);

    double operator()(double x) const;
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace maslov
