#include <regulus/recipe.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <variant>
#include <vector>

namespace regulus {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message), position_(position)
{
}

using NodePtr = std::shared_ptr<const Recipe::Node>;

struct Constant {
    mpz_class value;
};
struct QPower {
    std::size_t k;
};
struct Eta {
    std::int64_t k;
    std::int64_t e;
};
struct Sum {
    NodePtr lhs, rhs;
    bool subtract;
};
struct Negate {
    NodePtr x;
};
struct Product {
    NodePtr lhs, rhs;
};
struct Quotient {
    NodePtr lhs, rhs;
};
struct Power {
    NodePtr x;
    std::int64_t e;
};
struct Progression {
    NodePtr x;
    std::size_t A, B;
};
struct Dilation {
    NodePtr x;
    std::size_t k;
};
struct Theta {
    ThetaSpec spec;
};

struct Recipe::Node {
    std::variant<Constant, QPower, Eta, Sum, Negate, Product, Quotient, Power, Progression, Dilation, Theta> v;
};

namespace {

template <typename T>
NodePtr make(T value)
{
    return std::make_shared<const Recipe::Node>(Recipe::Node{std::move(value)});
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodePtr parse_all()
    {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    std::string identifier()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string digits()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return std::string(s_.substr(start, pos_ - start));
    }

    std::int64_t signed_int()
    {
        if (accept('(')) {
            const std::int64_t v = signed_int();
            expect(')');
            return v;
        }
        const bool neg = accept('-');
        if (!neg)
            accept('+');
        const std::size_t at = pos_;
        const std::string d = digits();
        if (d.size() > 18) {
            pos_ = at;
            fail("integer out of range");
        }
        const std::int64_t v = std::stoll(d);
        return neg ? -v : v;
    }

    std::size_t unsigned_int()
    {
        skip();
        const std::size_t at = pos_;
        const std::int64_t v = signed_int();
        if (v < 0) {
            pos_ = at;
            fail("expected a nonnegative integer");
        }
        return static_cast<std::size_t>(v);
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        while (true) {
            if (accept('+'))
                lhs = make(Sum{lhs, term(), false});
            else if (accept('-'))
                lhs = make(Sum{lhs, term(), true});
            else
                return lhs;
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        while (true) {
            if (accept('*')) {
                lhs = make(Product{lhs, unary()});
            } else if (accept('/')) {
                skip();
                const std::size_t at = pos_;
                NodePtr rhs = unary();
                if (std::holds_alternative<QPower>(rhs->v)) {
                    pos_ = at;
                    fail("division by a power of q is not supported");
                }
                lhs = make(Quotient{lhs, rhs});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary()
    {
        if (accept('-'))
            return make(Negate{unary()});
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (!accept('^'))
            return base;
        const std::size_t at = pos_;
        const std::int64_t e = signed_int();
        if (auto* q = std::get_if<QPower>(&base->v)) {
            if (e < 0) {
                pos_ = at;
                fail("negative powers of q are not supported");
            }
            return make(QPower{q->k * static_cast<std::size_t>(e)});
        }
        if (auto* eta = std::get_if<Eta>(&base->v))
            return make(Eta{eta->k, eta->e * e});
        return make(Power{base, e});
    }

    NodePtr primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return make(Constant{mpz_class(digits())});
        if (accept('(')) {
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (!std::isalpha(static_cast<unsigned char>(c)))
            fail(std::string("unexpected '") + c + "'");

        const std::size_t at = pos_;
        const std::string id = identifier();
        if (id == "q")
            return make(QPower{1});
        if (id.size() > 1 && id[0] == 'f'
            && id.find_first_not_of("0123456789", 1) == std::string::npos) {
            const std::int64_t k = std::stoll(id.substr(1));
            if (k < 1) {
                pos_ = at;
                fail("eta index must be positive");
            }
            return make(Eta{k, 1});
        }
        if (id == "ap") {
            expect('(');
            NodePtr x = expr();
            expect(',');
            const std::size_t A = unsigned_int();
            expect(',');
            const std::size_t B = unsigned_int();
            expect(')');
            if (A == 0 || B >= A) {
                pos_ = at;
                fail("ap(x, A, B) needs 0 <= B < A");
            }
            return make(Progression{x, A, B});
        }
        if (id == "dilate") {
            expect('(');
            NodePtr x = expr();
            expect(',');
            const std::size_t k = unsigned_int();
            expect(')');
            if (k == 0) {
                pos_ = at;
                fail("dilation factor must be positive");
            }
            return make(Dilation{x, k});
        }
        if (id == "theta")
            return theta(at);
        pos_ = at;
        fail("unknown name '" + id + "'");
    }

    NodePtr theta(std::size_t at)
    {
        expect('(');
        ThetaSpec spec;
        spec.a = signed_int();
        expect(',');
        spec.b = signed_int();
        expect(',');
        spec.c = signed_int();
        expect(',');
        spec.divisor = signed_int();
        expect(',');
        const std::string range = identifier();
        if (range == "Z")
            spec.range = ThetaSpec::Range::all_integers;
        else if (range == "N0")
            spec.range = ThetaSpec::Range::nonnegative;
        else if (range == "N1")
            spec.range = ThetaSpec::Range::positive;
        else
            fail("theta range must be Z, N0 or N1");
        if (accept(',')) {
            const std::string sign = identifier();
            if (sign == "alt")
                spec.sign = ThetaSpec::Sign::alternating;
            else if (sign != "plus")
                fail("theta sign must be plus or alt");
            if (accept(',')) {
                const std::string w = identifier();
                if (w == "odd")
                    spec.weight = ThetaSpec::Weight::odd_linear;
                else if (w != "unit")
                    fail("theta weight must be unit or odd");
            }
        }
        expect(')');
        if (spec.divisor < 1 || spec.a < 0) {
            pos_ = at;
            fail("theta needs a >= 0 and a positive divisor");
        }
        return make(Theta{spec});
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

QSeries eval(const NodePtr& node, std::size_t T, Modulus m);

std::optional<Eta> as_eta(const NodePtr& n)
{
    if (auto* e = std::get_if<Eta>(&n->v))
        return *e;
    return std::nullopt;
}

QSeries eval_product(const Product& p, std::size_t T, Modulus m)
{
    for (const auto& [q, other] : {std::pair{p.lhs, p.rhs}, std::pair{p.rhs, p.lhs}}) {
        if (auto* qp = std::get_if<QPower>(&q->v)) {
            if (qp->k > T)
                return QSeries::zero(m, T);
            return shift(eval(other, T - qp->k, m), qp->k);
        }
    }
    for (const auto& [c, other] : {std::pair{p.lhs, p.rhs}, std::pair{p.rhs, p.lhs}}) {
        if (auto* k = std::get_if<Constant>(&c->v))
            return ps_scale(eval(other, T, m), k->value);
    }
    if (auto e = as_eta(p.rhs))
        return mul_eta_power(eval(p.lhs, T, m), e->k, e->e);
    if (auto e = as_eta(p.lhs))
        return mul_eta_power(eval(p.rhs, T, m), e->k, e->e);
    return ps_mul(eval(p.lhs, T, m), eval(p.rhs, T, m));
}

QSeries eval(const NodePtr& node, std::size_t T, Modulus m)
{
    return std::visit(
        [&](const auto& n) -> QSeries {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Constant>) {
                QSeries one = QSeries::one(m, T);
                return ps_scale(one, n.value);
            } else if constexpr (std::is_same_v<N, QPower>) {
                return QSeries::monomial(m, T, n.k, 1);
            } else if constexpr (std::is_same_v<N, Eta>) {
                return eta_power(n.k, n.e, T, m);
            } else if constexpr (std::is_same_v<N, Sum>) {
                return n.subtract ? ps_sub(eval(n.lhs, T, m), eval(n.rhs, T, m))
                                  : ps_add(eval(n.lhs, T, m), eval(n.rhs, T, m));
            } else if constexpr (std::is_same_v<N, Negate>) {
                return ps_neg(eval(n.x, T, m));
            } else if constexpr (std::is_same_v<N, Product>) {
                return eval_product(n, T, m);
            } else if constexpr (std::is_same_v<N, Quotient>) {
                if (auto e = as_eta(n.rhs))
                    return mul_eta_power(eval(n.lhs, T, m), e->k, -e->e);
                return ps_div(eval(n.lhs, T, m), eval(n.rhs, T, m));
            } else if constexpr (std::is_same_v<N, Power>) {
                return ps_pow(eval(n.x, T, m), n.e);
            } else if constexpr (std::is_same_v<N, Progression>) {
                return extract_ap(eval(n.x, n.A * T + n.B, m), n.A, n.B);
            } else if constexpr (std::is_same_v<N, Dilation>) {
                return dilate(eval(n.x, T / n.k, m), n.k, T);
            } else {
                return theta_series(n.spec, T, m);
            }
        },
        node->v);
}

std::size_t depth_of(const NodePtr& node, std::size_t T)
{
    return std::visit(
        [&](const auto& n) -> std::size_t {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Sum> || std::is_same_v<N, Quotient>) {
                return std::max(depth_of(n.lhs, T), depth_of(n.rhs, T));
            } else if constexpr (std::is_same_v<N, Product>) {
                for (const auto& [q, other] : {std::pair{n.lhs, n.rhs}, std::pair{n.rhs, n.lhs}})
                    if (auto* qp = std::get_if<QPower>(&q->v))
                        return qp->k > T ? 0 : depth_of(other, T - qp->k);
                return std::max(depth_of(n.lhs, T), depth_of(n.rhs, T));
            } else if constexpr (std::is_same_v<N, Negate> || std::is_same_v<N, Power>) {
                return depth_of(n.x, T);
            } else if constexpr (std::is_same_v<N, Progression>) {
                return depth_of(n.x, n.A * T + n.B);
            } else if constexpr (std::is_same_v<N, Dilation>) {
                return depth_of(n.x, T / n.k);
            } else {
                return T;
            }
        },
        node->v);
}

} // namespace

Recipe::Recipe(std::string text, std::shared_ptr<const Node> root) : text_(std::move(text)), root_(std::move(root)) {}

Recipe Recipe::parse(std::string_view text)
{
    Parser p(text);
    NodePtr root = p.parse_all();
    return Recipe(std::string(text), std::move(root));
}

QSeries Recipe::evaluate(std::size_t trunc, Modulus m) const
{
    QSeries r = eval(root_, trunc, m);
    return r.trunc() == trunc ? r : truncate(r, trunc);
}

std::size_t Recipe::depth(std::size_t trunc) const { return depth_of(root_, trunc); }

} // namespace regulus
