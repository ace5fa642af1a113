#ifndef ABTHEME_SCALAR_HPP
#define ABTHEME_SCALAR_HPP

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace abtheme
{

/// Raised when a mathematical precondition fails (non-unit pivot, insufficient
/// truncation order, a generator that is not a theme, ...).
class MathError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed user input (DSL syntax, undeclared names, ...).
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

/// Product of named indeterminates; pairs (variable id, exponent) sorted by id.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Interns a parameter name; ids are process-wide and stable.
std::uint32_t variable_id(std::string_view name);
const std::string &variable_name(std::uint32_t id);

/// Exact coefficient: a rational number or a polynomial with rational
/// coefficients in named parameters.
///
/// The representation is canonical. A value whose only monomial is the
/// constant one is stored as a bare rational, so structural equality is
/// mathematical equality.
class Scalar
{
public:
    struct Term {
        Monomial mono;
        Rational coeff;
    };

    Scalar() = default;
    Scalar(long v) : c_(v) {}
    Scalar(int v) : c_(v) {}
    Scalar(const Rational &q) : c_(q) { c_.canonicalize(); }
    Scalar(long num, long den);

    static Scalar variable(std::string_view name);
    /// Parses "p", "-p" or "p/q".
    static Scalar parse_rational(std::string_view text);

    bool is_zero() const { return !poly_ && c_ == 0; }
    bool is_rational() const { return !poly_; }
    /// Nonzero rational, i.e. invertible in the coefficient ring.
    bool is_unit() const { return !poly_ && c_ != 0; }
    const Rational &rational() const;
    Scalar constant_term() const;
    /// Terms sorted by monomial; the constant term (if any) comes first.
    std::vector<Term> terms() const;
    /// Total degree; 0 for rationals (including zero).
    std::uint32_t degree() const;
    std::vector<std::string> variables() const;

    Scalar operator-() const;
    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    /// Exact division; throws MathError if the quotient is not a polynomial.
    Scalar &operator/=(const Scalar &o);

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    friend bool operator==(const Scalar &a, const Scalar &b);
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

    Scalar pow(unsigned n) const;
    /// Substitutes rational values for some variables.
    Scalar evaluate(const std::vector<std::pair<std::string, Rational>> &values) const;

    std::string to_string() const;
    friend std::ostream &operator<<(std::ostream &os, const Scalar &s) { return os << s.to_string(); }

private:
    using Poly = std::vector<Term>;
    static Scalar from_terms(Poly terms);

    Rational c_{0};
    std::shared_ptr<const Poly> poly_;
};

/// Rising factorial x (x+1) ... (x+n-1); empty product is 1.
Scalar rising_factorial(const Scalar &x, unsigned n);
Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

} // namespace abtheme

#endif
