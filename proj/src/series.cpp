#include "abtheme/series.hpp"

#include <algorithm>
#include <sstream>

namespace abtheme
{

TruncSeries::TruncSeries(std::initializer_list<Scalar> coeffs, std::size_t order, char var)
    : coeffs_(order), var_(var)
{
    std::size_t i = 0;
    for (const auto &c : coeffs) {
        if (i < order)
            coeffs_[i] = c;
        ++i;
    }
}

TruncSeries TruncSeries::constant(const Scalar &c, std::size_t order, char var)
{
    TruncSeries s(order, var);
    if (order > 0)
        s.coeffs_[0] = c;
    return s;
}

TruncSeries TruncSeries::monomial(std::size_t power, const Scalar &c, std::size_t order, char var)
{
    TruncSeries s(order, var);
    if (power < order)
        s.coeffs_[power] = c;
    return s;
}

const Scalar &TruncSeries::operator[](std::size_t m) const
{
    if (m >= coeffs_.size())
        throw MathError("coefficient " + std::to_string(m) + " requested beyond truncation order " +
                        std::to_string(coeffs_.size()));
    return coeffs_[m];
}

Scalar &TruncSeries::operator[](std::size_t m)
{
    if (m >= coeffs_.size())
        throw MathError("coefficient " + std::to_string(m) + " requested beyond truncation order " +
                        std::to_string(coeffs_.size()));
    return coeffs_[m];
}

Scalar TruncSeries::coeff_or_zero(std::size_t m) const
{
    return m < coeffs_.size() ? coeffs_[m] : Scalar();
}

std::optional<std::size_t> TruncSeries::valuation() const
{
    for (std::size_t m = 0; m < coeffs_.size(); ++m)
        if (!coeffs_[m].is_zero())
            return m;
    return std::nullopt;
}

TruncSeries TruncSeries::truncated(std::size_t order) const
{
    TruncSeries r(std::min(order, coeffs_.size()), var_);
    std::copy_n(coeffs_.begin(), r.order(), r.coeffs_.begin());
    return r;
}

TruncSeries TruncSeries::shifted_up(std::size_t k) const
{
    TruncSeries r(coeffs_.size() + k, var_);
    std::copy(coeffs_.begin(), coeffs_.end(), r.coeffs_.begin() + static_cast<std::ptrdiff_t>(k));
    return r;
}

TruncSeries TruncSeries::shifted_down(std::size_t k) const
{
    if (k > coeffs_.size())
        throw MathError("cannot divide by " + std::string(1, var_) + "^" + std::to_string(k) +
                        ": truncation order too small");
    for (std::size_t m = 0; m < k; ++m)
        if (!coeffs_[m].is_zero())
            throw MathError("series not divisible by " + std::string(1, var_) + "^" + std::to_string(k));
    return TruncSeries(std::vector<Scalar>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()),
                       var_);
}

TruncSeries TruncSeries::operator-() const
{
    TruncSeries r = *this;
    for (auto &c : r.coeffs_)
        c = -c;
    return r;
}

TruncSeries &TruncSeries::operator+=(const TruncSeries &o)
{
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t m = 0; m < coeffs_.size(); ++m)
        coeffs_[m] += o.coeffs_[m];
    return *this;
}

TruncSeries &TruncSeries::operator-=(const TruncSeries &o)
{
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t m = 0; m < coeffs_.size(); ++m)
        coeffs_[m] -= o.coeffs_[m];
    return *this;
}

TruncSeries &TruncSeries::operator*=(const Scalar &c)
{
    for (auto &x : coeffs_)
        x *= c;
    return *this;
}

TruncSeries operator*(const TruncSeries &a, const TruncSeries &b)
{
    const std::size_t n = std::min(a.order(), b.order());
    TruncSeries r(n, a.var_);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i].is_zero())
            continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (!b.coeffs_[j].is_zero())
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
}

bool operator==(const TruncSeries &a, const TruncSeries &b)
{
    return a.coeffs_ == b.coeffs_;
}

std::string TruncSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t m = 0; m < coeffs_.size(); ++m) {
        const Scalar &c = coeffs_[m];
        if (c.is_zero())
            continue;
        std::string cs = c.to_string();
        const bool compound = !c.is_rational() && c.terms().size() > 1;
        if (compound)
            cs = "(" + cs + ")";
        bool neg = !compound && cs.front() == '-';
        if (neg)
            cs.erase(0, 1);
        if (!first)
            os << (neg ? " - " : " + ");
        else if (neg)
            os << "-";
        first = false;
        if (m == 0) {
            os << cs;
            continue;
        }
        if (cs != "1")
            os << cs << "*";
        os << var_;
        if (m > 1)
            os << "^" << m;
    }
    if (first)
        os << "0";
    os << " + O(" << var_ << "^" << coeffs_.size() << ")";
    return os.str();
}

TruncSeries inverse(const TruncSeries &s)
{
    const std::size_t n = s.order();
    if (n == 0)
        return s;
    const Scalar &c0 = s[0];
    if (!c0.is_unit()) {
        auto v = s.valuation();
        throw MathError("series not invertible: valuation " + (v ? std::to_string(*v) : std::string("infinite")) +
                        (v && *v == 0 ? ", constant term " + c0.to_string() + " is not a unit" : ""));
    }
    TruncSeries r(n, s.var());
    const Scalar inv0 = Scalar(1) / c0;
    r[0] = inv0;
    for (std::size_t m = 1; m < n; ++m) {
        Scalar acc;
        for (std::size_t i = 1; i <= m; ++i)
            if (!s[i].is_zero())
                acc += s[i] * r[m - i];
        r[m] = -acc * inv0;
    }
    return r;
}

TruncSeries derivative(const TruncSeries &s)
{
    if (s.order() == 0)
        return s;
    TruncSeries r(s.order() - 1, s.var());
    for (std::size_t m = 1; m < s.order(); ++m)
        r[m - 1] = s[m] * Scalar(static_cast<long>(m));
    return r;
}

TruncSeries primitive(const TruncSeries &s)
{
    TruncSeries r(s.order() + 1, s.var());
    for (std::size_t m = 0; m < s.order(); ++m)
        r[m + 1] = s[m] / Scalar(static_cast<long>(m + 1));
    return r;
}

TruncSeries exp(const TruncSeries &s)
{
    const std::size_t n = s.order();
    if (n == 0)
        return s;
    if (!s[0].is_zero())
        throw MathError("exp of a series with nonzero constant term " + s[0].to_string());
    TruncSeries r(n, s.var());
    r[0] = Scalar(1);
    // m E_m = sum_{i=1}^{m} i s_i E_{m-i}
    for (std::size_t m = 1; m < n; ++m) {
        Scalar acc;
        for (std::size_t i = 1; i <= m; ++i)
            if (!s[i].is_zero())
                acc += Scalar(static_cast<long>(i)) * s[i] * r[m - i];
        r[m] = acc / Scalar(static_cast<long>(m));
    }
    return r;
}

TruncSeries log_unit(const TruncSeries &s)
{
    if (s.order() == 0)
        return s;
    if (s[0] != Scalar(1))
        throw MathError("log of a series with constant term " + s[0].to_string() + " (expected 1)");
    return primitive(derivative(s) * inverse(s.truncated(s.order() - 1)));
}

TruncSeries pow_unit(const TruncSeries &s, const Scalar &q)
{
    return exp(log_unit(s) * q);
}

bool agree(const TruncSeries &a, const TruncSeries &b)
{
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t m = 0; m < n; ++m)
        if (a[m] != b[m])
            return false;
    return true;
}

TruncSeries compose(const TruncSeries &s, const TruncSeries &t)
{
    if (t.order() > 0 && !t[0].is_zero())
        throw MathError("composition undefined: inner series has nonzero constant term");
    const std::size_t n = std::min(s.order(), t.order());
    TruncSeries r(n, t.var());
    for (std::size_t i = n; i-- > 0;) {
        r = r * t.truncated(n);
        r[0] += s[i];
    }
    return r;
}

TruncSeries compositional_inverse(const TruncSeries &t)
{
    const std::size_t n = t.order();
    if (n > 0 && !t[0].is_zero())
        throw MathError("composition undefined: series has nonzero constant term");
    if (n < 2)
        return TruncSeries(n, t.var());
    if (!t[1].is_unit())
        throw MathError("not invertible for composition: linear coefficient " + t[1].to_string() +
                        " is not a unit");
    // powers[k] = t^k
    std::vector<TruncSeries> powers{TruncSeries::constant(Scalar(1), n, t.var()), t};
    for (std::size_t k = 2; k < n; ++k)
        powers.push_back(powers.back() * t);
    TruncSeries eta(n, t.var());
    const Scalar inv1 = Scalar(1) / t[1];
    eta[1] = inv1;
    for (std::size_t m = 2; m < n; ++m) {
        Scalar acc;
        for (std::size_t k = 1; k < m; ++k)
            if (!eta[k].is_zero())
                acc += eta[k] * powers[k][m];
        eta[m] = -acc / powers[m][m];
    }
    return eta;
}

TruncSeries solve_ode_Aprime(const TruncSeries &rhs)
{
    TruncSeries g(rhs.order(), rhs.var());
    for (std::size_t m = 0; m < rhs.order(); ++m)
        g[m] = rhs[m] / Scalar(static_cast<long>(m + 1));
    return g;
}

TruncSeries solve_ode_A(const TruncSeries &S)
{
    const std::size_t n = S.order();
    const TruncSeries sigma = primitive(S).truncated(n);
    const TruncSeries gamma = solve_ode_Aprime(-(S * exp(sigma)));
    return gamma * exp(-sigma);
}

TruncSeries solve_ode_B(const TruncSeries &U, const TruncSeries &T)
{
    const std::size_t n = std::min(U.order(), T.order());
    const TruncSeries one_bt = TruncSeries::constant(Scalar(1), n, T.var()) + T.shifted_up(1).truncated(n);
    const TruncSeries rhs = -(U.truncated(n) * one_bt) - T.truncated(n);
    return solve_ode_Aprime(rhs);
}

} // namespace abtheme
