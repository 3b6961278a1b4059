#pragma once

// Symbolic series recipes: a small expression language over eta products,
// q-powers, theta sums and progression extraction, evaluated on demand to
// a requested truncation.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' int)?
//   primary := INT | 'q' | 'f'K | '(' expr ')'
//            | 'ap(' expr ',' A ',' B ')'          coefficient A n + B
//            | 'dilate(' expr ',' k ')'            q -> q^k
//            | 'theta(' a ',' b ',' c ',' div ',' Z|N0|N1 [',' plus|alt [',' unit|odd]] ')'
//
// Example: "ap(f9/f1, 2, 1)" is sum b_9(2n+1) q^n.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <regulus/series.hpp>

namespace regulus {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class Recipe {
public:
    struct Node;

    static Recipe parse(std::string_view text);

    /// Expand to exponents 0..trunc in Z/mZ (m = 0: exact).
    QSeries evaluate(std::size_t trunc, Modulus m) const;

    /// Deepest generator expansion evaluate(trunc, m) will request.
    std::size_t depth(std::size_t trunc) const;

    const std::string& text() const noexcept { return text_; }

private:
    Recipe(std::string text, std::shared_ptr<const Node> root);

    std::string text_;
    std::shared_ptr<const Node> root_;
};

} // namespace regulus
