#include "abtheme/abalg.hpp"

#include <algorithm>
#include <sstream>

namespace abtheme
{

AbElement AbElement::scalar(const Scalar &c, unsigned cap)
{
    return term(0, 0, c, cap);
}

AbElement AbElement::term(unsigned b_pow, unsigned a_pow, const Scalar &c, unsigned cap)
{
    AbElement e(cap);
    e.add_term(b_pow, a_pow, c);
    return e;
}

AbElement AbElement::series_in_b(const TruncSeries &s, unsigned cap)
{
    AbElement e(cap);
    for (std::size_t m = 0; m < s.order() && m < cap; ++m)
        e.add_term(static_cast<unsigned>(m), 0, s[m]);
    return e;
}

AbElement AbElement::series_in_a(const TruncSeries &t, unsigned cap)
{
    AbElement e(cap);
    for (std::size_t m = 0; m < t.order() && m < cap; ++m)
        e.add_term(0, static_cast<unsigned>(m), t[m]);
    return e;
}

AbElement AbElement::linear(const Scalar &nu, unsigned cap)
{
    AbElement e(cap);
    e.add_term(0, 1, Scalar(1));
    e.add_term(1, 0, -nu);
    return e;
}

Scalar AbElement::coeff(unsigned b_pow, unsigned a_pow) const
{
    auto it = terms_.find({b_pow, a_pow});
    return it == terms_.end() ? Scalar() : it->second;
}

TruncSeries AbElement::a_coefficient(unsigned j) const
{
    TruncSeries s(j < cap_ ? cap_ - j : 0);
    for (const auto &[k, c] : terms_)
        if (k.second == j)
            s[k.first] = c;
    return s;
}

unsigned AbElement::a_degree() const
{
    unsigned d = 0;
    for (const auto &[k, c] : terms_)
        d = std::max(d, k.second);
    return d;
}

AbElement AbElement::truncated(unsigned cap) const
{
    AbElement e(std::min(cap, cap_));
    for (const auto &[k, c] : terms_)
        if (k.first + k.second < e.cap_)
            e.terms_.emplace(k, c);
    return e;
}

void AbElement::add_term(unsigned b_pow, unsigned a_pow, const Scalar &c)
{
    if (b_pow + a_pow >= cap_ || c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace({b_pow, a_pow}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

AbElement AbElement::operator-() const
{
    AbElement e = *this;
    for (auto &[k, c] : e.terms_)
        c = -c;
    return e;
}

AbElement &AbElement::operator+=(const AbElement &o)
{
    if (o.cap_ < cap_)
        *this = truncated(o.cap_);
    for (const auto &[k, c] : o.terms_)
        add_term(k.first, k.second, c);
    return *this;
}

AbElement &AbElement::operator-=(const AbElement &o)
{
    return *this += -o;
}

AbElement &AbElement::operator*=(const Scalar &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[k, x] : terms_)
        x *= c;
    return *this;
}

AbElement left_multiply_by_a(const AbElement &u)
{
    AbElement r(u.weight_cap());
    for (const auto &[k, c] : u.terms()) {
        r.add_term(k.first, k.second + 1, c);
        if (k.first > 0)
            r.add_term(k.first + 1, k.second, c * Scalar(static_cast<long>(k.first)));
    }
    return r;
}

AbElement normal_mul(const AbElement &u, const AbElement &v)
{
    const unsigned cap = std::min(u.weight_cap(), v.weight_cap());
    AbElement r(cap);
    // a^j v for every a-power used by u
    std::vector<AbElement> av{v.truncated(cap)};
    for (const auto &[k, c] : u.terms()) {
        while (av.size() <= k.second)
            av.push_back(left_multiply_by_a(av.back()));
        for (const auto &[kv, cv] : av[k.second].terms())
            r.add_term(k.first + kv.first, kv.second, c * cv);
    }
    return r;
}

AbElement operator*(const AbElement &x, const AbElement &y)
{
    return normal_mul(x, y);
}

AbElement power(const AbElement &u, unsigned n)
{
    AbElement r = AbElement::one(u.weight_cap());
    for (unsigned i = 0; i < n; ++i)
        r = normal_mul(u, r);
    return r;
}

AbElement anb_closed_form(unsigned n, unsigned cap)
{
    if (n + 2 > cap)
        throw MathError("a^" + std::to_string(n) + " b needs weight cap at least " + std::to_string(n + 2));
    AbElement r(cap);
    for (unsigned p = 1; p <= n + 1; ++p)
        r.add_term(p, n - p + 1, Scalar(factorial(n) / factorial(n - p + 1)));
    return r;
}

std::string AbElement::to_string() const
{
    std::ostringstream os;
    bool first = true;
    // descending a-power, then ascending b-power
    std::vector<std::pair<Key, Scalar>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y) {
        if (x.first.second != y.first.second)
            return x.first.second > y.first.second;
        return x.first.first < y.first.first;
    });
    for (const auto &[k, c] : sorted) {
        std::string cs = c.to_string();
        const bool compound = !c.is_rational() && c.terms().size() > 1;
        if (compound)
            cs = "(" + cs + ")";
        const bool neg = !compound && cs.front() == '-';
        if (neg)
            cs.erase(0, 1);
        if (!first)
            os << (neg ? " - " : " + ");
        else if (neg)
            os << "-";
        first = false;
        std::string mono;
        if (k.first > 0)
            mono += k.first == 1 ? "b" : "b^" + std::to_string(k.first);
        if (k.second > 0) {
            if (!mono.empty())
                mono += "*";
            mono += k.second == 1 ? "a" : "a^" + std::to_string(k.second);
        }
        if (mono.empty())
            os << cs;
        else if (cs == "1")
            os << mono;
        else
            os << cs << "*" << mono;
    }
    if (first)
        os << "0";
    return os.str();
}

std::string AbElement::to_display_form() const
{
    // a-left form: (a^i b^mu) a = a^(i+1) b^mu - mu a^i b^(mu+1)
    std::map<Key, Scalar> right; // key (a-power, b-power)
    auto add = [&](unsigned i, unsigned mu, const Scalar &c) {
        if (i + mu >= cap_ || c.is_zero())
            return;
        auto [it, ins] = right.try_emplace({i, mu}, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero())
                right.erase(it);
        }
    };
    for (const auto &[k, c] : terms_) {
        std::map<Key, Scalar> x{{{0u, k.first}, c}};
        for (unsigned step = 0; step < k.second; ++step) {
            std::map<Key, Scalar> y;
            auto put = [&](unsigned i, unsigned mu, const Scalar &v) {
                if (i + mu >= cap_)
                    return;
                auto [it, ins] = y.try_emplace({i, mu}, v);
                if (!ins)
                    it->second += v;
            };
            for (const auto &[kk, v] : x) {
                put(kk.first + 1, kk.second, v);
                if (kk.second > 0)
                    put(kk.first, kk.second + 1, -v * Scalar(static_cast<long>(kk.second)));
            }
            x = std::move(y);
        }
        for (const auto &[kk, v] : x)
            add(kk.first, kk.second, v);
    }
    // group by b-power: sum_nu P_nu(a) b^nu
    std::map<unsigned, TruncSeries> groups;
    for (const auto &[k, c] : right) {
        auto it = groups.try_emplace(k.second, TruncSeries(cap_ - k.second, 'a')).first;
        it->second[k.first] = c;
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[mu, p] : groups) {
        if (!first)
            os << " + ";
        first = false;
        std::string ps = p.to_string();
        ps = ps.substr(0, ps.rfind(" + O("));
        os << "(" << ps << ")";
        if (mu > 0)
            os << (mu == 1 ? "*b" : "*b^" + std::to_string(mu));
    }
    if (first)
        os << "0";
    return os.str();
}

ChangeOfVariable::ChangeOfVariable(TruncSeries theta) : theta_(theta.with_var('a'))
{
    if (theta_.order() < 2)
        throw MathError("change of variable needs at least the linear coefficient");
    if (!theta_[0].is_zero())
        throw MathError("change of variable must fix 0: constant term " + theta_[0].to_string());
    if (!theta_[1].is_unit())
        throw MathError("change of variable: linear coefficient " + theta_[1].to_string() + " is not a unit");
    eta_ = compositional_inverse(theta_);
}

ChangeOfVariable ChangeOfVariable::from_substitution(const TruncSeries &psi)
{
    ChangeOfVariable c(psi);
    return c.inverse();
}

ChangeOfVariable ChangeOfVariable::identity(std::size_t order)
{
    return ChangeOfVariable(TruncSeries::monomial(1, Scalar(1), order, 'a'));
}

ChangeOfVariable ChangeOfVariable::inverse() const
{
    return ChangeOfVariable(eta_);
}

ChangeOfVariable ChangeOfVariable::with_order(std::size_t order) const
{
    TruncSeries t(order, 'a');
    for (std::size_t m = 0; m < order && m < theta_.order(); ++m)
        t[m] = theta_[m];
    return ChangeOfVariable(t);
}

AbElement theta_endomorphism(const ChangeOfVariable &cov, const AbElement &u)
{
    const unsigned cap = u.weight_cap();
    if (cov.order() < cap)
        throw MathError("change of variable known to order " + std::to_string(cov.order()) +
                        ", weight cap " + std::to_string(cap) + " needs more");
    const AbElement ta = AbElement::series_in_a(cov.theta(), cap);
    const AbElement tb = normal_mul(AbElement::b(cap), AbElement::series_in_a(derivative(cov.theta()), cap));
    std::vector<AbElement> pa{AbElement::one(cap)}, pb{AbElement::one(cap)};
    AbElement r(cap);
    for (const auto &[k, c] : u.terms()) {
        while (pb.size() <= k.first)
            pb.push_back(normal_mul(pb.back(), tb));
        while (pa.size() <= k.second)
            pa.push_back(normal_mul(pa.back(), ta));
        r += c * normal_mul(pb[k.first], pa[k.second]);
    }
    return r;
}

RightDivision right_divide_linear(const AbElement &p, const Scalar &nu)
{
    const unsigned cap = p.weight_cap();
    const AbElement lin = AbElement::linear(nu, cap);
    AbElement rem = p;
    AbElement q(cap);
    for (unsigned d = p.a_degree(); d >= 1; --d) {
        // move the a^d coefficient c(b) into the quotient as c(b) a^(d-1)
        AbElement lead(cap);
        for (const auto &[k, c] : rem.terms())
            if (k.second == d)
                lead.add_term(k.first, d - 1, c);
        if (lead.is_zero())
            continue;
        q += lead;
        rem -= normal_mul(lead, lin);
    }
    RightDivision out{q, TruncSeries(cap)};
    for (const auto &[k, c] : rem.terms()) {
        if (k.second != 0)
            throw MathError("right division left an a-term of degree " + std::to_string(k.second));
        out.remainder[k.first] = c;
    }
    return out;
}

AbElement monic(const AbElement &p)
{
    if (p.is_zero())
        throw MathError("zero element has no monic form");
    const unsigned d = p.a_degree();
    const TruncSeries lead = p.a_coefficient(d);
    if (lead.order() == 0)
        throw MathError("top coefficient of degree " + std::to_string(d) + " lies beyond the weight cap");
    const TruncSeries exact_one = TruncSeries::constant(Scalar(1), lead.order());
    if (lead == exact_one)
        return p;
    if (!lead[0].is_unit())
        throw MathError("top coefficient " + lead.to_string() + " is not a unit");
    const unsigned cap = p.weight_cap() - d;
    return normal_mul(AbElement::series_in_b(inverse(lead), cap), p.truncated(cap));
}

StandardForm standard_form_compose(const std::vector<Scalar> &lambdas, const std::vector<TruncSeries> &units,
                                   unsigned cap)
{
    if (lambdas.empty())
        throw MathError("standard form needs at least one factor");
    if (units.size() + 1 != lambdas.size())
        throw MathError("standard form: " + std::to_string(lambdas.size()) + " factors need " +
                        std::to_string(lambdas.size() - 1) + " units");
    AbElement prod = AbElement::linear(lambdas[0], cap);
    TruncSeries unit_prod = TruncSeries::constant(Scalar(1), cap);
    for (std::size_t j = 0; j < units.size(); ++j) {
        const TruncSeries &s = units[j];
        if (s.order() < cap)
            throw MathError("unit known to order " + std::to_string(s.order()) + ", weight cap " +
                            std::to_string(cap) + " needs more");
        if (s[0] != Scalar(1))
            throw MathError("unit has constant term " + s[0].to_string() + ", expected 1");
        prod = normal_mul(prod, AbElement::series_in_b(inverse(s.truncated(cap)), cap));
        prod = normal_mul(prod, AbElement::linear(lambdas[j + 1], cap));
        unit_prod = unit_prod * s.truncated(cap);
    }
    StandardForm out{prod, normal_mul(AbElement::series_in_b(unit_prod, cap), prod)};
    const unsigned k = static_cast<unsigned>(lambdas.size());
    for (const auto &[key, c] : out.monic.terms())
        if (key.second == k && !(key.first == 0 && c == Scalar(1)))
            throw MathError("standard form: top coefficient did not normalise");
    return out;
}

} // namespace abtheme
