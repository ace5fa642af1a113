#ifndef ABTHEME_ABALG_HPP
#define ABTHEME_ABALG_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "abtheme/scalar.hpp"
#include "abtheme/series.hpp"

namespace abtheme
{

/// Element of the algebra generated by a, b with ab - ba = b^2, in the
/// normal order sum_j c_j(b) a^j (series coefficients to the left).
///
/// a and b both have weight 1 and the defining relation is homogeneous, so the
/// terms of total weight >= weight_cap form a two-sided ideal; every stored term
/// b^nu a^j has nu + j < weight_cap. Power series in a (the a-adic completion)
/// need no separate type: they are simply elements with many a-powers.
class AbElement
{
public:
    using Key = std::pair<unsigned, unsigned>; ///< (b-power, a-power)

    AbElement() = default;
    explicit AbElement(unsigned weight_cap) : cap_(weight_cap) {}

    static AbElement one(unsigned cap) { return scalar(Scalar(1), cap); }
    static AbElement scalar(const Scalar &c, unsigned cap);
    static AbElement a(unsigned cap) { return term(0, 1, Scalar(1), cap); }
    static AbElement b(unsigned cap) { return term(1, 0, Scalar(1), cap); }
    static AbElement term(unsigned b_pow, unsigned a_pow, const Scalar &c, unsigned cap);
    /// S(b), with coefficients past the cap dropped.
    static AbElement series_in_b(const TruncSeries &s, unsigned cap);
    /// T(a) = sum T_j a^j.
    static AbElement series_in_a(const TruncSeries &t, unsigned cap);
    /// a - nu b
    static AbElement linear(const Scalar &nu, unsigned cap);

    unsigned weight_cap() const { return cap_; }
    const std::map<Key, Scalar> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(unsigned b_pow, unsigned a_pow) const;
    /// Coefficient series of a^j; known to order weight_cap - j.
    TruncSeries a_coefficient(unsigned j) const;
    /// Highest a-power present (0 for zero).
    unsigned a_degree() const;
    /// Drops terms of weight >= cap.
    AbElement truncated(unsigned cap) const;

    void add_term(unsigned b_pow, unsigned a_pow, const Scalar &c);

    AbElement operator-() const;
    AbElement &operator+=(const AbElement &o);
    AbElement &operator-=(const AbElement &o);
    AbElement &operator*=(const Scalar &c);
    friend AbElement operator+(AbElement x, const AbElement &y) { return x += y; }
    friend AbElement operator-(AbElement x, const AbElement &y) { return x -= y; }
    friend AbElement operator*(AbElement x, const Scalar &c) { return x *= c; }
    friend AbElement operator*(const Scalar &c, AbElement x) { return x *= c; }
    /// Normal-ordered product (same as normal_mul).
    friend AbElement operator*(const AbElement &x, const AbElement &y);
    friend bool operator==(const AbElement &x, const AbElement &y)
    {
        return x.cap_ == y.cap_ && x.terms_ == y.terms_;
    }

    /// "b*a + b^2" style rendering of the normal form.
    std::string to_string() const;
    /// Rendering in the a-left display form sum P_nu(a) b^nu.
    std::string to_display_form() const;

private:
    unsigned cap_ = 0;
    std::map<Key, Scalar> terms_;
};

/// a * u, rewritten into normal order with a b^m -> b^m a + m b^(m+1).
AbElement left_multiply_by_a(const AbElement &u);
AbElement normal_mul(const AbElement &u, const AbElement &v);
AbElement power(const AbElement &u, unsigned n);

/// a^n b = sum_{p=1}^{n+1} n!/(n-p+1)! b^p a^(n-p+1); needs n + 2 <= cap.
AbElement anb_closed_form(unsigned n, unsigned cap);

/// A change of variable theta(a) = r a + theta_2 a^2 + ... with r a unit, and
/// its compositional inverse eta.
class ChangeOfVariable
{
public:
    ChangeOfVariable() = default;
    /// theta given as a series in a (truncated at its order).
    explicit ChangeOfVariable(TruncSeries theta);
    /// The change of variable realised by the substitution s = psi(t), i.e. theta = psi^{-1}.
    static ChangeOfVariable from_substitution(const TruncSeries &psi);
    static ChangeOfVariable identity(std::size_t order);

    const TruncSeries &theta() const { return theta_; }
    const TruncSeries &eta() const { return eta_; }
    std::size_t order() const { return theta_.order(); }
    const Scalar &r() const { return theta_[1]; }
    ChangeOfVariable inverse() const;
    /// Same theta at a different truncation (zero-padded when growing).
    ChangeOfVariable with_order(std::size_t order) const;

private:
    TruncSeries theta_, eta_;
};

/// Unital endomorphism a -> theta(a), b -> b theta'(a) of the weight-truncated algebra.
AbElement theta_endomorphism(const ChangeOfVariable &cov, const AbElement &u);

struct RightDivision {
    AbElement quotient;
    TruncSeries remainder; ///< pure series in b
};

/// P = Q (a - nu b) + R by descending a-degree elimination.
RightDivision right_divide_linear(const AbElement &p, const Scalar &nu);

/// Left-multiplies by the inverse of the top a-coefficient. The result's cap
/// drops to cap - degree unless that coefficient is exactly 1.
AbElement monic(const AbElement &p);

struct StandardForm {
    AbElement product; ///< (a - l1 b) S1^-1 (a - l2 b) ... S_{k-1}^-1 (a - lk b)
    AbElement monic;   ///< (S1 ... S_{k-1}) * product, top coefficient 1
};

/// Normal-ordered standard presentation; each unit needs constant term 1.
StandardForm standard_form_compose(const std::vector<Scalar> &lambdas, const std::vector<TruncSeries> &units,
                                   unsigned cap);

} // namespace abtheme

#endif
