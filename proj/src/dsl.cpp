#include "abtheme/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace abtheme::dsl
{

bool operator==(const Expr &x, const Expr &y)
{
    if (x.kind != y.kind || x.number != y.number || x.name != y.name || x.exponent != y.exponent ||
        x.args.size() != y.args.size())
        return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!(*x.args[i] == *y.args[i]))
            return false;
    return true;
}

namespace
{

bool same(const ExprPtr &x, const ExprPtr &y)
{
    if (!x || !y)
        return !x && !y;
    return *x == *y;
}

bool same(const std::vector<ExprPtr> &x, const std::vector<ExprPtr> &y)
{
    return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                      [](const ExprPtr &p, const ExprPtr &q) { return same(p, q); });
}

bool same_body(const ParamDecl &x, const ParamDecl &y) { return x.names == y.names; }
bool same_body(const SeriesDecl &x, const SeriesDecl &y) { return x.name == y.name && same(x.value, y.value); }
bool same_body(const GeneratorDecl &x, const GeneratorDecl &y)
{
    return x.name == y.name && same(x.value, y.value);
}
bool same_body(const CovDecl &x, const CovDecl &y)
{
    return x.name == y.name && x.substitution == y.substitution && same(x.value, y.value);
}
bool same_body(const PresentationDecl &x, const PresentationDecl &y)
{
    return x.name == y.name && x.explicit_units == y.explicit_units && same(x.lambda1, y.lambda1) &&
           x.gaps == y.gaps && same(x.params, y.params) && same(x.lambdas, y.lambdas) && same(x.units, y.units);
}
bool same_body(const Command &x, const Command &y)
{
    return x.verb == y.verb && x.target == y.target && x.cov == y.cov;
}

} // namespace

bool operator==(const Document &x, const Document &y)
{
    if (x.statements.size() != y.statements.size())
        return false;
    for (std::size_t i = 0; i < x.statements.size(); ++i) {
        const auto &a = x.statements[i].body, &b = y.statements[i].body;
        if (a.index() != b.index())
            return false;
        const bool eq = std::visit(
            [&](const auto &l) {
                using T = std::decay_t<decltype(l)>;
                return same_body(l, std::get<T>(b));
            },
            a);
        if (!eq)
            return false;
    }
    return true;
}

// ---- lexer -----------------------------------------------------------------

namespace
{

enum class Tok { Num, Name, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Location loc;
};

std::string where(const Location &l)
{
    return "line " + std::to_string(l.line) + ", column " + std::to_string(l.column);
}

[[noreturn]] void fail(const Location &l, const std::string &msg)
{
    throw InputError(where(l) + ": " + msg);
}

std::vector<Token> lex(const std::string &text)
{
    std::vector<Token> out;
    Location at;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++at.line;
                at.column = 1;
            } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
                ++at.column;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
            while (i < text.size() && text[i] != '\n')
                advance(1);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            out.push_back({Tok::Num, text.substr(i, j - i), at});
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::Name, text.substr(i, j - i), at});
            advance(j - i);
        } else if (std::string_view("+-*/^()[],;=").find(c) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, c), at});
            advance(1);
        } else {
            fail(at, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", at});
    return out;
}

const std::set<std::string> kReserved = {"a",     "b",     "t",      "s",       "L",      "param",
                                         "series", "generator", "cov", "theta", "subst", "presentation",
                                         "lambda1", "gaps", "params", "lambdas", "units", "empty",
                                         "analyze", "annihilator", "pushforward", "by"};

// ---- parser ----------------------------------------------------------------

class Parser
{
public:
    explicit Parser(const std::string &text) : toks_(lex(text)) {}

    Document document()
    {
        Document doc;
        bool in_commands = false;
        while (peek().kind != Tok::End) {
            Statement st;
            st.loc = peek().loc;
            const Token kw = expect_name();
            if (kw.text == "analyze" || kw.text == "annihilator" || kw.text == "pushforward") {
                in_commands = true;
                Command c;
                c.verb = kw.text;
                c.target = identifier();
                if (c.verb == "pushforward") {
                    expect_keyword("by");
                    c.cov = identifier();
                }
                st.body = c;
            } else {
                if (in_commands)
                    fail(kw.loc, "declaration '" + kw.text + "' after the first command");
                st.body = declaration(kw);
            }
            expect_sym(";");
            doc.statements.push_back(std::move(st));
        }
        return doc;
    }

private:
    const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_sym(const char *s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool at_name(const char *s) const { return peek().kind == Tok::Name && peek().text == s; }

    static std::string describe(const Token &t)
    {
        return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    }
    void expect_sym(const char *s)
    {
        if (!at_sym(s))
            fail(peek().loc, std::string("expected '") + s + "', found " + describe(peek()));
        next();
    }
    Token expect_name()
    {
        if (peek().kind != Tok::Name)
            fail(peek().loc, "expected a keyword or name, found " + describe(peek()));
        return next();
    }
    void expect_keyword(const char *s)
    {
        if (!at_name(s))
            fail(peek().loc, std::string("expected '") + s + "', found " + describe(peek()));
        next();
    }
    std::string identifier()
    {
        const Token t = expect_name();
        if (kReserved.count(t.text))
            fail(t.loc, "'" + t.text + "' is reserved");
        return t.text;
    }
    unsigned natural()
    {
        if (peek().kind != Tok::Num)
            fail(peek().loc, "expected a natural number, found " + describe(peek()));
        const Token t = next();
        if (t.text.size() > 6)
            fail(t.loc, "exponent " + t.text + " too large");
        return static_cast<unsigned>(std::stoul(t.text));
    }

    std::variant<ParamDecl, SeriesDecl, GeneratorDecl, CovDecl, PresentationDecl, Command>
    declaration(const Token &kw)
    {
        if (kw.text == "param") {
            ParamDecl p;
            p.names.push_back(identifier());
            while (at_sym(",")) {
                next();
                p.names.push_back(identifier());
            }
            return p;
        }
        if (kw.text == "series") {
            SeriesDecl s;
            s.name = identifier();
            expect_sym("=");
            s.value = expression();
            return s;
        }
        if (kw.text == "generator") {
            GeneratorDecl g;
            g.name = identifier();
            expect_sym("=");
            g.value = expression();
            return g;
        }
        if (kw.text == "cov") {
            CovDecl c;
            c.name = identifier();
            expect_sym("=");
            if (at_name("theta")) {
                next();
            } else if (at_name("subst")) {
                next();
                c.substitution = true;
            } else {
                fail(peek().loc, "expected 'theta' or 'subst', found " + describe(peek()));
            }
            c.value = expression();
            return c;
        }
        if (kw.text == "presentation") {
            PresentationDecl p;
            p.name = identifier();
            expect_sym("=");
            if (at_name("lambda1")) {
                next();
                p.lambda1 = expression();
                expect_keyword("gaps");
                expect_sym("[");
                if (!at_sym("]")) {
                    p.gaps.push_back(natural());
                    while (at_sym(",")) {
                        next();
                        p.gaps.push_back(natural());
                    }
                }
                expect_sym("]");
                expect_keyword("params");
                p.params = list([this]() -> ExprPtr {
                    if (at_name("empty")) {
                        next();
                        return nullptr;
                    }
                    return expression();
                });
            } else if (at_name("lambdas")) {
                next();
                p.explicit_units = true;
                p.lambdas = list([this] { return expression(); });
                expect_keyword("units");
                p.units = list([this] { return expression(); });
            } else {
                fail(peek().loc, "expected 'lambda1' or 'lambdas', found " + describe(peek()));
            }
            return p;
        }
        fail(kw.loc, "unknown statement '" + kw.text + "'");
    }

    template <class F> std::vector<ExprPtr> list(F item)
    {
        std::vector<ExprPtr> out;
        expect_sym("[");
        if (!at_sym("]")) {
            out.push_back(item());
            while (at_sym(",")) {
                next();
                out.push_back(item());
            }
        }
        expect_sym("]");
        return out;
    }

    static ExprPtr node(Expr::Kind k, Location loc, std::vector<ExprPtr> args = {})
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->loc = loc;
        e->args = std::move(args);
        return e;
    }

    ExprPtr expression()
    {
        ExprPtr lhs = term();
        while (at_sym("+") || at_sym("-")) {
            const Token op = next();
            lhs = node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, op.loc, {lhs, term()});
        }
        return lhs;
    }

    bool starts_monomial() const { return at_name("s") || at_name("L"); }

    ExprPtr term()
    {
        ExprPtr lhs = unary();
        for (;;) {
            if (at_sym("*") || at_sym("/")) {
                const Token op = next();
                lhs = node(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, op.loc, {lhs, unary()});
            } else if (starts_monomial()) {
                const Location l = peek().loc;
                lhs = node(Expr::Kind::Mul, l, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary()
    {
        if (at_sym("-")) {
            const Token op = next();
            return node(Expr::Kind::Neg, op.loc, {unary()});
        }
        ExprPtr base = atom();
        if (at_sym("^")) {
            const Token op = next();
            auto e = std::make_shared<Expr>(*node(Expr::Kind::Pow, op.loc, {base}));
            e->exponent = natural();
            return e;
        }
        return base;
    }

    ExprPtr atom()
    {
        const Token t = peek();
        if (t.kind == Tok::Num) {
            next();
            auto e = std::make_shared<Expr>(*node(Expr::Kind::Number, t.loc));
            e->number = Rational(t.text);
            return e;
        }
        if (at_sym("(")) {
            next();
            ExprPtr inner = expression();
            expect_sym(")");
            return inner;
        }
        if (at_name("s")) {
            next();
            expect_sym("^");
            expect_sym("(");
            const bool negative = at_sym("-");
            if (negative)
                next();
            if (peek().kind != Tok::Num)
                fail(peek().loc, "expected a rational exponent, found " + describe(peek()));
            Rational q(next().text);
            if (at_sym("/")) {
                next();
                if (peek().kind != Tok::Num)
                    fail(peek().loc, "expected a denominator, found " + describe(peek()));
                const Token d = next();
                const Rational den(d.text);
                if (den == 0)
                    fail(d.loc, "zero denominator");
                q /= den;
            }
            expect_sym(")");
            auto e = std::make_shared<Expr>(*node(Expr::Kind::SPower, t.loc));
            e->number = negative ? Rational(-q) : q;
            e->number.canonicalize();
            return e;
        }
        if (at_name("L")) {
            next();
            auto e = std::make_shared<Expr>(*node(Expr::Kind::LPower, t.loc));
            e->exponent = 1;
            if (at_sym("^")) {
                next();
                e->exponent = natural();
            }
            return e;
        }
        if (t.kind == Tok::Name) {
            if (kReserved.count(t.text) && t.text != "a" && t.text != "b" && t.text != "t")
                fail(t.loc, "keyword '" + t.text + "' cannot appear in an expression");
            next();
            auto e = std::make_shared<Expr>(*node(Expr::Kind::Name, t.loc));
            e->name = t.text;
            return e;
        }
        fail(t.loc, "expected an expression, found " + describe(t));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---- printer ---------------------------------------------------------------

int precedence(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
        return 2;
    case Expr::Kind::Neg:
        return 3;
    case Expr::Kind::Pow:
        return 4;
    default:
        return 5;
    }
}

std::string wrap(const Expr &e, bool parens)
{
    return parens ? "(" + print(e) + ")" : print(e);
}

} // namespace

std::string print(const Expr &e)
{
    const int p = precedence(e);
    switch (e.kind) {
    case Expr::Kind::Number:
        return e.number.get_str();
    case Expr::Kind::Name:
        return e.name;
    case Expr::Kind::SPower:
        return "s^(" + e.number.get_str() + ")";
    case Expr::Kind::LPower:
        return "L^" + std::to_string(e.exponent);
    case Expr::Kind::Neg:
        return "-" + wrap(*e.args[0], precedence(*e.args[0]) < p);
    case Expr::Kind::Pow:
        return wrap(*e.args[0], precedence(*e.args[0]) <= p) + "^" + std::to_string(e.exponent);
    default: {
        const char *op = e.kind == Expr::Kind::Add ? " + "
                         : e.kind == Expr::Kind::Sub ? " - "
                         : e.kind == Expr::Kind::Mul ? "*"
                                                     : "/";
        return wrap(*e.args[0], precedence(*e.args[0]) < p) + op + wrap(*e.args[1], precedence(*e.args[1]) <= p);
    }
    }
}

namespace
{

std::string join(const std::vector<ExprPtr> &xs)
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? ", " : "") + (xs[i] ? print(*xs[i]) : std::string("empty"));
    return out + "]";
}

struct StatementPrinter {
    std::string operator()(const ParamDecl &p) const
    {
        std::string out = "param ";
        for (std::size_t i = 0; i < p.names.size(); ++i)
            out += (i ? ", " : "") + p.names[i];
        return out;
    }
    std::string operator()(const SeriesDecl &s) const { return "series " + s.name + " = " + print(*s.value); }
    std::string operator()(const GeneratorDecl &g) const
    {
        return "generator " + g.name + " = " + print(*g.value);
    }
    std::string operator()(const CovDecl &c) const
    {
        return "cov " + c.name + " = " + (c.substitution ? "subst " : "theta ") + print(*c.value);
    }
    std::string operator()(const PresentationDecl &p) const
    {
        std::string out = "presentation " + p.name + " = ";
        if (p.explicit_units)
            return out + "lambdas " + join(p.lambdas) + " units " + join(p.units);
        out += "lambda1 " + print(*p.lambda1) + " gaps [";
        for (std::size_t i = 0; i < p.gaps.size(); ++i)
            out += (i ? ", " : "") + std::to_string(p.gaps[i]);
        return out + "] params " + join(p.params);
    }
    std::string operator()(const Command &c) const
    {
        return c.verb + " " + c.target + (c.verb == "pushforward" ? " by " + c.cov : "");
    }
};

} // namespace

Document parse(const std::string &text)
{
    return Parser(text).document();
}

std::string print(const Document &doc)
{
    std::string out;
    for (const auto &st : doc.statements)
        out += std::visit(StatementPrinter{}, st.body) + ";\n";
    return out;
}

// ---- semantics -------------------------------------------------------------

namespace
{

Poly trim(Poly p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
    return p;
}

Poly add(const Poly &x, const Poly &y, const Scalar &sign = Scalar(1))
{
    Poly r(std::max(x.size(), y.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i)
        r[i] += sign * y[i];
    return trim(r);
}

Poly mul(const Poly &x, const Poly &y)
{
    if (x.empty() || y.empty())
        return {};
    Poly r(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            r[i + j] += x[i] * y[j];
    return trim(r);
}

Poly scale(const Poly &x, const Scalar &c)
{
    Poly r;
    for (const auto &v : x)
        r.push_back(v * c);
    return trim(r);
}

TruncSeries to_series(const Poly &p, std::size_t order, char var)
{
    TruncSeries s(order, var);
    for (std::size_t i = 0; i < p.size() && i < order; ++i)
        s[i] = p[i];
    return s;
}

/// Value of a Xi-expression: a sum of coeff(b) * s^q * L^j; "pure" terms carry no monomial yet.
struct XiTerm {
    std::optional<Rational> q;
    std::optional<unsigned> j;
    Poly coeff;
};
using XiValue = std::vector<XiTerm>;

XiValue xi_add(XiValue x, const XiValue &y, const Scalar &sign)
{
    for (const auto &t : y) {
        auto it = std::find_if(x.begin(), x.end(), [&](const XiTerm &u) { return u.q == t.q && u.j == t.j; });
        if (it == x.end())
            x.push_back({t.q, t.j, scale(t.coeff, sign)});
        else
            it->coeff = add(it->coeff, t.coeff, sign);
    }
    return x;
}

} // namespace

Program::Program(Document doc) : doc_(std::move(doc))
{
    std::set<std::string> names;
    auto declare = [&](const std::string &n, const Location &l) {
        if (!names.insert(n).second)
            fail(l, "'" + n + "' declared twice");
    };
    for (const auto &st : doc_.statements) {
        std::visit(
            [&](const auto &d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, ParamDecl>) {
                    for (const auto &n : d.names) {
                        declare(n, st.loc);
                        params_.push_back(n);
                    }
                } else if constexpr (std::is_same_v<T, SeriesDecl>) {
                    eval_poly(*d.value, 'b');
                    declare(d.name, st.loc);
                    series_[d.name] = &d;
                } else if constexpr (std::is_same_v<T, GeneratorDecl>) {
                    eval_xi(*d.value);
                    declare(d.name, st.loc);
                    generators_[d.name] = &d;
                } else if constexpr (std::is_same_v<T, CovDecl>) {
                    const Poly p = eval_poly(*d.value, d.substitution ? 't' : 'a');
                    if (!p.empty() && !p[0].is_zero())
                        fail(d.value->loc, "change of variable must vanish at 0");
                    if (p.size() < 2 || !p[1].is_unit())
                        fail(d.value->loc, "change of variable needs a nonzero rational linear coefficient");
                    declare(d.name, st.loc);
                    covs_[d.name] = &d;
                } else if constexpr (std::is_same_v<T, PresentationDecl>) {
                    declare(d.name, st.loc);
                    presentations_[d.name] = &d;
                    presentation(d.name, 4);
                } else {
                    const bool known = generators_.count(d.target) || presentations_.count(d.target);
                    if (!known)
                        fail(st.loc, "undeclared generator or presentation '" + d.target + "'");
                    if (d.verb == "pushforward" && !covs_.count(d.cov))
                        fail(st.loc, "undeclared change of variable '" + d.cov + "'");
                }
            },
            st.body);
    }
}

bool Program::has_generator(const std::string &name) const { return generators_.count(name) > 0; }
bool Program::has_presentation(const std::string &name) const { return presentations_.count(name) > 0; }
bool Program::has_cov(const std::string &name) const { return covs_.count(name) > 0; }

namespace
{

template <class M> std::vector<std::string> in_order(const Document &doc, const M &map)
{
    std::vector<std::string> out;
    for (const auto &st : doc.statements)
        std::visit(
            [&](const auto &d) {
                if constexpr (requires { d.name; })
                    if (map.count(d.name))
                        out.push_back(d.name);
            },
            st.body);
    return out;
}

} // namespace

std::vector<std::string> Program::generator_names() const { return in_order(doc_, generators_); }
std::vector<std::string> Program::presentation_names() const { return in_order(doc_, presentations_); }
std::vector<std::string> Program::cov_names() const { return in_order(doc_, covs_); }

std::vector<Command> Program::commands() const
{
    std::vector<Command> out;
    for (const auto &st : doc_.statements)
        if (const auto *c = std::get_if<Command>(&st.body))
            out.push_back(*c);
    return out;
}

Poly Program::eval_poly(const Expr &e, char var) const
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::Number:
        return trim({Scalar(e.number)});
    case K::Name:
        if (e.name.size() == 1 && e.name[0] == var)
            return {Scalar(0), Scalar(1)};
        if (std::find(params_.begin(), params_.end(), e.name) != params_.end())
            return {Scalar::variable(e.name)};
        if (var == 'b' && series_.count(e.name))
            return eval_poly(*series_.at(e.name)->value, 'b');
        if (e.name == "a" || e.name == "b" || e.name == "t")
            fail(e.loc, std::string("variable '") + e.name + "' is not allowed here; expected a polynomial in " + var);
        fail(e.loc, "undeclared name '" + e.name + "'");
    case K::Neg:
        return scale(eval_poly(*e.args[0], var), Scalar(-1));
    case K::Add:
        return add(eval_poly(*e.args[0], var), eval_poly(*e.args[1], var));
    case K::Sub:
        return add(eval_poly(*e.args[0], var), eval_poly(*e.args[1], var), Scalar(-1));
    case K::Mul:
        return mul(eval_poly(*e.args[0], var), eval_poly(*e.args[1], var));
    case K::Div: {
        const Poly d = eval_poly(*e.args[1], var);
        if (d.size() != 1 || !d[0].is_unit())
            fail(e.loc, "division only by a nonzero rational constant");
        return scale(eval_poly(*e.args[0], var), Scalar(1) / d[0]);
    }
    case K::Pow: {
        const Poly base = eval_poly(*e.args[0], var);
        Poly r{Scalar(1)};
        for (unsigned i = 0; i < e.exponent; ++i)
            r = mul(r, base);
        return r;
    }
    case K::SPower:
    case K::LPower:
        fail(e.loc, "s and L monomials are only allowed in generators");
    }
    fail(e.loc, "malformed expression");
}

Scalar Program::eval_scalar(const Expr &e) const
{
    const Poly p = eval_poly(e, '\0');
    return p.empty() ? Scalar(0) : p[0];
}

std::vector<Program::Term> Program::eval_xi(const Expr &e) const
{
    using K = Expr::Kind;
    std::function<XiValue(const Expr &)> ev = [&](const Expr &x) -> XiValue {
        switch (x.kind) {
        case K::SPower:
            return {{x.number, std::nullopt, {Scalar(1)}}};
        case K::LPower:
            return {{std::nullopt, x.exponent, {Scalar(1)}}};
        case K::Add:
            return xi_add(ev(*x.args[0]), ev(*x.args[1]), Scalar(1));
        case K::Sub:
            return xi_add(ev(*x.args[0]), ev(*x.args[1]), Scalar(-1));
        case K::Neg:
            return xi_add({}, ev(*x.args[0]), Scalar(-1));
        case K::Mul: {
            const XiValue l = ev(*x.args[0]), r = ev(*x.args[1]);
            XiValue out;
            for (const auto &u : l)
                for (const auto &v : r) {
                    if (u.q && v.q)
                        fail(x.loc, "product of two s-monomials");
                    if (u.j && v.j)
                        fail(x.loc, "product of two L-monomials");
                    out = xi_add(out, {{u.q ? u.q : v.q, u.j ? u.j : v.j, mul(u.coeff, v.coeff)}}, Scalar(1));
                }
            return out;
        }
        case K::Div: {
            const Poly d = eval_poly(*x.args[1], 'b');
            if (d.size() != 1 || !d[0].is_unit())
                fail(x.loc, "division only by a nonzero rational constant");
            return xi_add({}, ev(*x.args[0]), Scalar(1) / d[0]);
        }
        case K::Pow:
            for (const auto &u : ev(*x.args[0]))
                if (u.q || u.j)
                    fail(x.loc, "powers of s- or L-monomials are written s^(q) and L^n");
            return {{std::nullopt, std::nullopt, eval_poly(x, 'b')}};
        default:
            return {{std::nullopt, std::nullopt, eval_poly(x, 'b')}};
        }
    };
    const XiValue v = ev(e);
    std::vector<Term> out;
    for (const auto &t : v) {
        if (t.coeff.empty())
            continue;
        if (!t.q)
            fail(e.loc, "term without an s^(q) monomial");
        out.push_back({*t.q, t.j.value_or(0), t.coeff});
    }
    if (out.empty())
        fail(e.loc, "generator is zero");
    const Rational qmin = std::min_element(out.begin(), out.end(), [](const Term &x, const Term &y) {
                              return x.exponent < y.exponent;
                          })->exponent;
    for (const auto &t : out) {
        const Rational d = t.exponent - qmin;
        if (d.get_den() != 1)
            fail(e.loc, "exponent class mismatch: " + t.exponent.get_str() + " and " + qmin.get_str() +
                            " are not congruent mod 1");
    }
    if (qmin + 1 <= 0)
        fail(e.loc, "base exponent lambda0 = " + Rational(qmin + 1).get_str() + " must be positive");
    return out;
}

XiElement Program::generator(const std::string &name, std::size_t order) const
{
    const auto it = generators_.find(name);
    if (it == generators_.end())
        throw InputError("undeclared generator '" + name + "'");
    const auto terms = eval_xi(*it->second->value);
    Rational qmin = terms.front().exponent;
    unsigned jmax = 0;
    for (const auto &t : terms) {
        qmin = std::min(qmin, t.exponent);
        jmax = std::max(jmax, t.log_power);
    }
    const Scalar lambda0(Rational(qmin + 1));
    const std::size_t logs = jmax + 1;
    XiElement out = XiElement::zero(lambda0, logs, order);
    for (const auto &t : terms) {
        const Rational m = t.exponent - qmin;
        const std::size_t mi = m.get_num().get_ui();
        if (mi >= order)
            continue;
        const XiElement mono = monomial_to_abstract(mi, t.log_power, lambda0, logs, order);
        out = out + mono.act_series(to_series(t.coeff, order, 'b')).truncated(order);
    }
    return out;
}

Presentation Program::presentation(const std::string &name, std::size_t order) const
{
    const auto it = presentations_.find(name);
    if (it == presentations_.end())
        throw InputError("undeclared presentation '" + name + "'");
    const PresentationDecl &d = *it->second;
    auto rational_of = [&](const ExprPtr &e) {
        const Scalar v = eval_scalar(*e);
        if (!v.is_rational())
            fail(e->loc, "expected a rational number");
        return v;
    };
    if (!d.explicit_units) {
        std::vector<std::optional<Scalar>> alphas;
        for (const auto &p : d.params)
            alphas.push_back(p ? std::optional<Scalar>(eval_scalar(*p)) : std::nullopt);
        try {
            return Presentation::from_parameters(rational_of(d.lambda1), d.gaps, alphas, order);
        } catch (const InputError &err) {
            fail(d.lambda1->loc, err.what());
        }
    }
    if (d.lambdas.empty())
        fail({}, "presentation '" + name + "' has no exponents");
    if (d.units.size() + 1 != d.lambdas.size())
        fail(d.lambdas.front()->loc, "presentation needs one unit fewer than exponents");
    Presentation p;
    for (const auto &l : d.lambdas)
        p.lambdas.push_back(rational_of(l));
    for (const auto &u : d.units) {
        const Poly s = eval_poly(*u, 'b');
        if (s.empty() || s[0] != Scalar(1))
            fail(u->loc, "units need constant term 1");
        p.units.push_back(to_series(s, order, 'b'));
    }
    return p;
}

ChangeOfVariable Program::cov(const std::string &name, std::size_t order) const
{
    const auto it = covs_.find(name);
    if (it == covs_.end())
        throw InputError("undeclared change of variable '" + name + "'");
    const CovDecl &d = *it->second;
    const char var = d.substitution ? 't' : 'a';
    const TruncSeries s = to_series(eval_poly(*d.value, var), order, var);
    return d.substitution ? ChangeOfVariable::from_substitution(s) : ChangeOfVariable(s);
}

} // namespace abtheme::dsl
