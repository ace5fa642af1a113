#ifndef ABTHEME_SERIES_HPP
#define ABTHEME_SERIES_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "abtheme/scalar.hpp"

namespace abtheme
{

/// Truncated formal power series sum_{m < order} c_m x^m over Scalar.
///
/// The order is part of the value: binary operations truncate to the smaller
/// order, so no result ever reports a coefficient its inputs did not determine.
class TruncSeries
{
public:
    TruncSeries() = default;
    explicit TruncSeries(std::size_t order, char var = 'b') : coeffs_(order), var_(var) {}
    TruncSeries(std::vector<Scalar> coeffs, char var = 'b') : coeffs_(std::move(coeffs)), var_(var) {}
    TruncSeries(std::initializer_list<Scalar> coeffs, std::size_t order, char var = 'b');

    static TruncSeries constant(const Scalar &c, std::size_t order, char var = 'b');
    /// The series x^power (zero if power >= order).
    static TruncSeries monomial(std::size_t power, const Scalar &c, std::size_t order, char var = 'b');

    std::size_t order() const { return coeffs_.size(); }
    char var() const { return var_; }
    TruncSeries with_var(char v) const
    {
        auto r = *this;
        r.var_ = v;
        return r;
    }

    /// Coefficient of x^m; zero for m >= order is *not* implied, so this throws.
    const Scalar &operator[](std::size_t m) const;
    Scalar &operator[](std::size_t m);
    /// Coefficient of x^m or zero when m is past the truncation.
    Scalar coeff_or_zero(std::size_t m) const;
    const std::vector<Scalar> &coeffs() const { return coeffs_; }

    /// Least m with a nonzero coefficient; nullopt when every stored coefficient vanishes.
    std::optional<std::size_t> valuation() const;
    bool is_zero() const { return !valuation().has_value(); }

    TruncSeries truncated(std::size_t order) const;
    /// Multiplication by x^k; the order grows by k.
    TruncSeries shifted_up(std::size_t k) const;
    /// Division by x^k; requires the first k coefficients to vanish.
    TruncSeries shifted_down(std::size_t k) const;

    TruncSeries operator-() const;
    TruncSeries &operator+=(const TruncSeries &o);
    TruncSeries &operator-=(const TruncSeries &o);
    TruncSeries &operator*=(const Scalar &c);

    friend TruncSeries operator+(TruncSeries a, const TruncSeries &b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries &b) { return a -= b; }
    friend TruncSeries operator*(const TruncSeries &a, const TruncSeries &b);
    friend TruncSeries operator*(TruncSeries a, const Scalar &c) { return a *= c; }
    friend TruncSeries operator*(const Scalar &c, TruncSeries a) { return a *= c; }
    friend bool operator==(const TruncSeries &a, const TruncSeries &b);

    std::string to_string() const;

private:
    std::vector<Scalar> coeffs_;
    char var_ = 'b';
};

// ring and calculus
TruncSeries inverse(const TruncSeries &s);
TruncSeries derivative(const TruncSeries &s);
TruncSeries primitive(const TruncSeries &s);
TruncSeries exp(const TruncSeries &s);
/// log(s) for s(0) = 1.
TruncSeries log_unit(const TruncSeries &s);
/// s^q = exp(q log s) for s(0) = 1 and rational (or polynomial) q.
TruncSeries pow_unit(const TruncSeries &s, const Scalar &q);
/// Equality on the common truncation order.
bool agree(const TruncSeries &a, const TruncSeries &b);

// composition
/// s(t(x)); needs t(0) = 0.
TruncSeries compose(const TruncSeries &s, const TruncSeries &t);
/// eta with eta(t(x)) = x; needs t(0) = 0 and t'(0) a unit.
TruncSeries compositional_inverse(const TruncSeries &t);

// the three linear ODEs of the rank-two normalisation
enum class OdeKind { A, Aprime, B };

/// (1 + b S) U + b U' = -S
TruncSeries solve_ode_A(const TruncSeries &S);
/// Gamma + b Gamma' = rhs, i.e. (n+1) Gamma_n = rhs_n.
TruncSeries solve_ode_Aprime(const TruncSeries &rhs);
/// b V' + V = -U (1 + b T) - T
TruncSeries solve_ode_B(const TruncSeries &U, const TruncSeries &T);

} // namespace abtheme

#endif
