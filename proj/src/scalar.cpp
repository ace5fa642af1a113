#include "abtheme/scalar.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace abtheme
{

namespace
{

struct Registry {
    std::mutex mutex;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::unique_ptr<std::string>> names;
};

Registry &registry()
{
    static Registry r;
    return r;
}

std::uint32_t mono_degree(const Monomial &m)
{
    std::uint32_t d = 0;
    for (const auto &[id, e] : m)
        d += e;
    return d;
}

// Degree-lexicographic order, multiplicative, lower ids more significant.
bool mono_less(const Monomial &a, const Monomial &b)
{
    const auto da = mono_degree(a), db = mono_degree(b);
    if (da != db)
        return da < db;
    std::size_t i = 0;
    for (; i < a.size() && i < b.size(); ++i) {
        if (a[i].first != b[i].first)
            return a[i].first > b[i].first;
        if (a[i].second != b[i].second)
            return a[i].second < b[i].second;
    }
    return a.size() < b.size();
}

struct MonoLess {
    bool operator()(const Monomial &a, const Monomial &b) const { return mono_less(a, b); }
};

Monomial mono_mul(const Monomial &a, const Monomial &b)
{
    Monomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

// Returns true and sets q = a / b if b divides a.
bool mono_div(const Monomial &a, const Monomial &b, Monomial &q)
{
    q.clear();
    std::size_t i = 0;
    for (const auto &[id, e] : b) {
        while (i < a.size() && a[i].first < id)
            q.push_back(a[i++]);
        if (i == a.size() || a[i].first != id || a[i].second < e)
            return false;
        if (a[i].second > e)
            q.emplace_back(id, a[i].second - e);
        ++i;
    }
    while (i < a.size())
        q.push_back(a[i++]);
    return true;
}

using TermMap = std::map<Monomial, Rational, MonoLess>;

void accumulate(TermMap &acc, const Monomial &m, const Rational &c)
{
    if (c == 0)
        return;
    auto [it, inserted] = acc.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            acc.erase(it);
    }
}

} // namespace

std::uint32_t variable_id(std::string_view name)
{
    auto &r = registry();
    std::lock_guard lock(r.mutex);
    std::string key(name);
    if (auto it = r.ids.find(key); it != r.ids.end())
        return it->second;
    const auto id = static_cast<std::uint32_t>(r.names.size());
    r.names.push_back(std::make_unique<std::string>(key));
    r.ids.emplace(std::move(key), id);
    return id;
}

const std::string &variable_name(std::uint32_t id)
{
    auto &r = registry();
    std::lock_guard lock(r.mutex);
    if (id >= r.names.size())
        throw std::out_of_range("unknown variable id");
    return *r.names[id];
}

Scalar::Scalar(long num, long den)
{
    if (den == 0)
        throw MathError("zero denominator");
    c_ = Rational(num, den);
    c_.canonicalize();
}

Scalar Scalar::variable(std::string_view name)
{
    Poly p;
    p.push_back({Monomial{{variable_id(name), 1u}}, Rational(1)});
    return from_terms(std::move(p));
}

Scalar Scalar::parse_rational(std::string_view text)
{
    std::string s(text);
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw InputError("malformed rational '" + s + "'");
    if (q.get_den() == 0)
        throw InputError("zero denominator in '" + s + "'");
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::from_terms(Poly terms)
{
    Scalar s;
    if (terms.empty())
        return s;
    if (terms.size() == 1 && terms.front().mono.empty()) {
        s.c_ = terms.front().coeff;
        return s;
    }
    s.poly_ = std::make_shared<const Poly>(std::move(terms));
    return s;
}

const Rational &Scalar::rational() const
{
    if (poly_)
        throw MathError("scalar " + to_string() + " is not a rational number");
    return c_;
}

Scalar Scalar::constant_term() const
{
    if (!poly_)
        return *this;
    const auto &p = *poly_;
    if (!p.empty() && p.front().mono.empty())
        return Scalar(p.front().coeff);
    return Scalar();
}

std::vector<Scalar::Term> Scalar::terms() const
{
    if (poly_)
        return *poly_;
    if (c_ == 0)
        return {};
    return {Term{Monomial{}, c_}};
}

std::uint32_t Scalar::degree() const
{
    if (!poly_)
        return 0;
    return mono_degree(poly_->back().mono);
}

std::vector<std::string> Scalar::variables() const
{
    std::vector<std::uint32_t> ids;
    if (poly_)
        for (const auto &t : *poly_)
            for (const auto &[id, e] : t.mono)
                ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<std::string> out;
    for (auto id : ids)
        out.push_back(variable_name(id));
    std::sort(out.begin(), out.end());
    return out;
}

Scalar Scalar::operator-() const
{
    if (!poly_) {
        Scalar r;
        r.c_ = -c_;
        return r;
    }
    Poly p = *poly_;
    for (auto &t : p)
        t.coeff = -t.coeff;
    return from_terms(std::move(p));
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    if (!poly_ && !o.poly_) {
        c_ += o.c_;
        return *this;
    }
    TermMap acc;
    for (const auto &t : terms())
        accumulate(acc, t.mono, t.coeff);
    for (const auto &t : o.terms())
        accumulate(acc, t.mono, t.coeff);
    Poly p;
    p.reserve(acc.size());
    for (auto &[m, c] : acc)
        p.push_back({m, c});
    *this = from_terms(std::move(p));
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
    if (!poly_ && !o.poly_) {
        c_ -= o.c_;
        return *this;
    }
    return *this += -o;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
    if (!poly_ && !o.poly_) {
        c_ *= o.c_;
        return *this;
    }
    if (is_zero() || o.is_zero()) {
        *this = Scalar();
        return *this;
    }
    if (!o.poly_ || !poly_) {
        const Rational f = o.poly_ ? c_ : o.c_;
        Poly p = o.poly_ ? *o.poly_ : *poly_;
        for (auto &t : p)
            t.coeff *= f;
        *this = from_terms(std::move(p));
        return *this;
    }
    TermMap acc;
    for (const auto &x : *poly_)
        for (const auto &y : *o.poly_)
            accumulate(acc, mono_mul(x.mono, y.mono), x.coeff * y.coeff);
    Poly p;
    p.reserve(acc.size());
    for (auto &[m, c] : acc)
        p.push_back({m, c});
    *this = from_terms(std::move(p));
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
    if (o.is_zero())
        throw MathError("division by zero scalar");
    if (!o.poly_) {
        if (!poly_) {
            c_ /= o.c_;
            return *this;
        }
        Poly p = *poly_;
        for (auto &t : p)
            t.coeff /= o.c_;
        *this = from_terms(std::move(p));
        return *this;
    }
    // Exact multivariate division by the leading term in deglex order.
    const Term &lead = o.poly_->back();
    TermMap rem;
    for (const auto &t : terms())
        accumulate(rem, t.mono, t.coeff);
    TermMap quo;
    Monomial q;
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        if (!mono_div(top->first, lead.mono, q))
            throw MathError("scalar " + o.to_string() + " does not divide " + to_string());
        const Rational c = top->second / lead.coeff;
        accumulate(quo, q, c);
        for (const auto &t : *o.poly_)
            accumulate(rem, mono_mul(q, t.mono), -c * t.coeff);
    }
    Poly p;
    for (auto &[m, c] : quo)
        p.push_back({m, c});
    *this = from_terms(std::move(p));
    return *this;
}

bool operator==(const Scalar &a, const Scalar &b)
{
    if (!a.poly_ && !b.poly_)
        return a.c_ == b.c_;
    if (!a.poly_ || !b.poly_)
        return false;
    const auto &p = *a.poly_, &q = *b.poly_;
    if (p.size() != q.size())
        return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].mono != q[i].mono || p[i].coeff != q[i].coeff)
            return false;
    return true;
}

Scalar Scalar::pow(unsigned n) const
{
    Scalar r(1), base = *this;
    while (n) {
        if (n & 1u)
            r *= base;
        n >>= 1u;
        if (n)
            base *= base;
    }
    return r;
}

Scalar Scalar::evaluate(const std::vector<std::pair<std::string, Rational>> &values) const
{
    if (!poly_)
        return *this;
    std::unordered_map<std::uint32_t, Rational> v;
    for (const auto &[name, q] : values)
        v.emplace(variable_id(name), q);
    Scalar out;
    for (const auto &t : *poly_) {
        Scalar term(t.coeff);
        for (const auto &[id, e] : t.mono) {
            if (auto it = v.find(id); it != v.end())
                term *= Scalar(it->second).pow(e);
            else
                term *= Scalar::variable(variable_name(id)).pow(e);
        }
        out += term;
    }
    return out;
}

std::string Scalar::to_string() const
{
    if (!poly_)
        return c_.get_str();
    std::ostringstream os;
    bool first = true;
    // Highest degree first.
    for (auto it = poly_->rbegin(); it != poly_->rend(); ++it) {
        Rational c = it->coeff;
        const bool neg = c < 0;
        if (neg)
            c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        const bool unit_coeff = c == 1 && !it->mono.empty();
        if (!unit_coeff) {
            os << c.get_str();
            if (!it->mono.empty())
                os << "*";
        }
        bool first_var = true;
        for (const auto &[id, e] : it->mono) {
            if (!first_var)
                os << "*";
            first_var = false;
            os << variable_name(id);
            if (e > 1)
                os << "^" << e;
        }
    }
    return os.str();
}

Scalar rising_factorial(const Scalar &x, unsigned n)
{
    Scalar r(1);
    for (unsigned i = 0; i < n; ++i)
        r *= x + Scalar(static_cast<long>(i));
    return r;
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binomial(unsigned n, unsigned k)
{
    if (k > n)
        return Rational(0);
    mpz_class f;
    mpz_bin_uiui(f.get_mpz_t(), n, k);
    return Rational(f);
}

} // namespace abtheme
