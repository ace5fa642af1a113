#ifndef ABTHEME_DSL_HPP
#define ABTHEME_DSL_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abtheme/abalg.hpp"
#include "abtheme/scalar.hpp"
#include "abtheme/theme.hpp"
#include "abtheme/ximodel.hpp"

namespace abtheme::dsl
{

struct Location {
    std::size_t line = 1, column = 1;
};

/// Expression tree. Integer literals only; "5/2" is a division node.
struct Expr {
    enum class Kind { Number, Name, Neg, Add, Sub, Mul, Div, Pow, SPower, LPower };
    Kind kind = Kind::Number;
    Rational number;      ///< Number; exponent of SPower
    std::string name;     ///< Name
    unsigned exponent = 0; ///< Pow, LPower
    std::vector<std::shared_ptr<const Expr>> args;
    Location loc;

    friend bool operator==(const Expr &x, const Expr &y);
};
using ExprPtr = std::shared_ptr<const Expr>;

struct ParamDecl {
    std::vector<std::string> names;
};
struct SeriesDecl {
    std::string name;
    ExprPtr value;
};
struct GeneratorDecl {
    std::string name;
    ExprPtr value;
};
struct CovDecl {
    std::string name;
    bool substitution = false; ///< "subst psi(t)" instead of "theta theta(a)"
    ExprPtr value;
};
/// lambda1 q gaps [..] params [..], or lambdas [..] units [..]
struct PresentationDecl {
    std::string name;
    bool explicit_units = false;
    ExprPtr lambda1;
    std::vector<unsigned> gaps;
    std::vector<ExprPtr> params; ///< nullptr for "empty"
    std::vector<ExprPtr> lambdas;
    std::vector<ExprPtr> units;
};
struct Command {
    std::string verb; ///< analyze | annihilator | pushforward
    std::string target;
    std::string cov; ///< pushforward only
};

struct Statement {
    std::variant<ParamDecl, SeriesDecl, GeneratorDecl, CovDecl, PresentationDecl, Command> body;
    Location loc;
};

struct Document {
    std::vector<Statement> statements;
    friend bool operator==(const Document &x, const Document &y);
};

/// Throws InputError with "line L, column C" on syntax errors.
Document parse(const std::string &text);
std::string print(const Document &doc);
std::string print(const Expr &e);

/// Univariate polynomial (ascending coefficients) in the given variable.
using Poly = std::vector<Scalar>;

/// Semantic layer: declarations resolved against each other.
class Program
{
public:
    explicit Program(Document doc);

    const Document &document() const { return doc_; }
    bool has_generator(const std::string &name) const;
    bool has_presentation(const std::string &name) const;
    bool has_cov(const std::string &name) const;
    std::vector<std::string> generator_names() const;
    std::vector<std::string> presentation_names() const;
    std::vector<std::string> cov_names() const;
    std::vector<Command> commands() const;

    XiElement generator(const std::string &name, std::size_t order) const;
    Presentation presentation(const std::string &name, std::size_t order) const;
    ChangeOfVariable cov(const std::string &name, std::size_t order) const;

private:
    Poly eval_poly(const Expr &e, char var) const;
    Scalar eval_scalar(const Expr &e) const;
    struct Term {
        Rational exponent;
        unsigned log_power = 0;
        Poly coeff;
    };
    std::vector<Term> eval_xi(const Expr &e) const;

    Document doc_;
    std::vector<std::string> params_;
    std::map<std::string, const SeriesDecl *> series_;
    std::map<std::string, const GeneratorDecl *> generators_;
    std::map<std::string, const CovDecl *> covs_;
    std::map<std::string, const PresentationDecl *> presentations_;
};

} // namespace abtheme::dsl

#endif
