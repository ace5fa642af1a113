#include "abtheme/ximodel.hpp"

#include <algorithm>
#include <sstream>

namespace abtheme
{

std::size_t coords_order(const Coords &x)
{
    if (x.empty())
        return 0;
    std::size_t n = x[0].order();
    for (const auto &s : x)
        n = std::min(n, s.order());
    return n;
}

Coords coords_zero(std::size_t rank, std::size_t order)
{
    return Coords(rank, TruncSeries(order));
}

Coords coords_basis(std::size_t rank, std::size_t i, std::size_t order)
{
    Coords x = coords_zero(rank, order);
    x[i] = TruncSeries::constant(Scalar(1), order);
    return x;
}

Coords coords_add(const Coords &x, const Coords &y)
{
    Coords r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i] + y[i];
    return r;
}

Coords coords_sub(const Coords &x, const Coords &y)
{
    Coords r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i] - y[i];
    return r;
}

Coords coords_scale(const TruncSeries &s, const Coords &x)
{
    Coords r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = s * x[i];
    return r;
}

Coords coords_truncated(const Coords &x, std::size_t order)
{
    Coords r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i].truncated(order);
    return r;
}

bool coords_is_zero(const Coords &x)
{
    return std::all_of(x.begin(), x.end(), [](const TruncSeries &s) { return s.is_zero(); });
}

bool coords_agree(const Coords &x, const Coords &y)
{
    if (x.size() != y.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!agree(x[i], y[i]))
            return false;
    return true;
}

std::optional<std::size_t> coords_valuation(const Coords &x)
{
    std::optional<std::size_t> v;
    for (const auto &s : x)
        if (auto w = s.valuation(); w && (!v || *w < *v))
            v = w;
    return v;
}

AbModule::AbModule(std::vector<std::vector<TruncSeries>> a_matrix) : a_(std::move(a_matrix))
{
    for (const auto &row : a_)
        if (row.size() != a_.size())
            throw MathError("action matrix must be square");
}

std::size_t AbModule::order() const
{
    std::size_t n = a_.empty() ? 0 : a_[0][0].order();
    for (const auto &row : a_)
        for (const auto &s : row)
            n = std::min(n, s.order());
    return n;
}

bool AbModule::is_simple_pole() const
{
    for (const auto &row : a_)
        for (const auto &s : row)
            if (s.order() > 0 && !s[0].is_zero())
                return false;
    return true;
}

Matrix AbModule::residue_matrix() const
{
    if (!is_simple_pole())
        throw MathError("residue matrix needs a simple-pole module");
    Matrix m(rank(), rank());
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j)
            m(i, j) = a_[i][j].coeff_or_zero(1);
    return m;
}

Coords AbModule::act_a(const Coords &x) const
{
    const std::size_t n = std::min(coords_order(x), order());
    Coords r = coords_zero(rank(), n);
    for (std::size_t j = 0; j < rank(); ++j) {
        const TruncSeries &s = x[j];
        if (s.is_zero())
            continue;
        for (std::size_t i = 0; i < rank(); ++i)
            if (!a_[i][j].is_zero())
                r[i] += s * a_[i][j];
        r[j] += derivative(s).shifted_up(2);
    }
    return coords_truncated(r, n);
}

Coords AbModule::act_b(const Coords &x) const
{
    Coords r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i].shifted_up(1).truncated(x[i].order());
    return r;
}

namespace
{

// sum_j c_j(b) a^j x given a callback for the a-action.
template <class ActA> Coords act_normal_ordered(const AbElement &u, const Coords &x, ActA act_a, std::size_t out_order)
{
    Coords r = coords_zero(x.size(), out_order);
    Coords aj = x;
    const unsigned deg = u.a_degree();
    for (unsigned j = 0; j <= deg; ++j) {
        if (j > 0)
            aj = act_a(aj);
        TruncSeries c = u.a_coefficient(j);
        if (c.is_zero())
            continue;
        TruncSeries cc(out_order);
        for (std::size_t m = 0; m < out_order; ++m)
            cc[m] = c.coeff_or_zero(m);
        r = coords_add(r, coords_scale(cc, coords_truncated(aj, out_order)));
    }
    return r;
}

} // namespace

Coords AbModule::act(const AbElement &u, const Coords &x) const
{
    std::size_t n = std::min(coords_order(x), order());
    if (is_simple_pole())
        n = std::min<std::size_t>(n, u.weight_cap());
    return act_normal_ordered(u, x, [this](const Coords &y) { return act_a(y); }, n);
}

AbModule AbModule::truncated(std::size_t order) const
{
    auto m = a_;
    for (auto &row : m)
        for (auto &s : row)
            s = s.truncated(order);
    return AbModule(std::move(m));
}

AbModule e_lambda_module(const Scalar &lambda, std::size_t order)
{
    return AbModule({{TruncSeries::monomial(1, lambda, order)}});
}

AbModule direct_sum(const AbModule &x, const AbModule &y)
{
    const std::size_t n = std::min(x.order(), y.order());
    const std::size_t k = x.rank() + y.rank();
    std::vector<std::vector<TruncSeries>> m(k, std::vector<TruncSeries>(k, TruncSeries(n)));
    for (std::size_t i = 0; i < x.rank(); ++i)
        for (std::size_t j = 0; j < x.rank(); ++j)
            m[i][j] = x.entry(i, j).truncated(n);
    for (std::size_t i = 0; i < y.rank(); ++i)
        for (std::size_t j = 0; j < y.rank(); ++j)
            m[x.rank() + i][x.rank() + j] = y.entry(i, j).truncated(n);
    return AbModule(std::move(m));
}

XiElement::XiElement(Scalar lambda0, Coords comps) : lambda0_(std::move(lambda0)), comps_(std::move(comps))
{
    if (!lambda0_.is_rational() || lambda0_.rational() <= 0)
        throw MathError("base exponent must be a positive rational, got " + lambda0_.to_string());
    if (comps_.empty())
        throw MathError("Xi element needs at least one log component");
    const std::size_t n = coords_order(comps_);
    for (auto &s : comps_)
        s = s.truncated(n);
}

XiElement XiElement::zero(const Scalar &lambda0, std::size_t log_bound, std::size_t order)
{
    return XiElement(lambda0, coords_zero(log_bound, order));
}

XiElement XiElement::basis(const Scalar &lambda0, std::size_t log_bound, std::size_t j, std::size_t order)
{
    return XiElement(lambda0, coords_basis(log_bound, j, order));
}

std::optional<std::size_t> XiElement::top_log() const
{
    for (std::size_t j = comps_.size(); j-- > 0;)
        if (!comps_[j].is_zero())
            return j;
    return std::nullopt;
}

XiElement XiElement::act_a() const
{
    // a (g_j x_j) = (lambda0 b g_j + b^2 g_j') x_j + b g_j x_{j-1}
    const std::size_t n = order();
    Coords r = coords_zero(comps_.size(), n);
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        const TruncSeries &g = comps_[j];
        if (g.is_zero())
            continue;
        const TruncSeries bg = g.shifted_up(1).truncated(n);
        r[j] += bg * lambda0_ + derivative(g).shifted_up(2).truncated(n);
        if (j > 0)
            r[j - 1] += bg;
    }
    return XiElement(lambda0_, std::move(r));
}

XiElement XiElement::act_series(const TruncSeries &s) const
{
    return XiElement(lambda0_, coords_scale(s, comps_));
}

XiElement XiElement::act(const AbElement &u) const
{
    const std::size_t n = std::min<std::size_t>(order(), u.weight_cap());
    Coords r = act_normal_ordered(
        u, comps_, [this](const Coords &y) { return XiElement(lambda0_, y).act_a().comps_; }, n);
    return XiElement(lambda0_, std::move(r));
}

XiElement XiElement::truncated(std::size_t order) const
{
    return XiElement(lambda0_, coords_truncated(comps_, order));
}

XiElement XiElement::with_log_bound(std::size_t log_bound) const
{
    if (log_bound < comps_.size())
        for (std::size_t j = log_bound; j < comps_.size(); ++j)
            if (!comps_[j].is_zero())
                throw MathError("cannot drop nonzero log component " + std::to_string(j));
    Coords c = comps_;
    c.resize(log_bound, TruncSeries(order()));
    return XiElement(lambda0_, std::move(c));
}

namespace
{

void check_compatible(const XiElement &x, const XiElement &y)
{
    if (x.lambda0() != y.lambda0() || x.log_bound() != y.log_bound())
        throw MathError("Xi elements over different bases");
}

} // namespace

XiElement operator+(const XiElement &x, const XiElement &y)
{
    check_compatible(x, y);
    return XiElement(x.lambda0_, coords_add(x.comps_, y.comps_));
}

XiElement operator-(const XiElement &x, const XiElement &y)
{
    check_compatible(x, y);
    return XiElement(x.lambda0_, coords_sub(x.comps_, y.comps_));
}

XiElement operator*(const Scalar &c, const XiElement &x)
{
    Coords r = x.comps_;
    for (auto &s : r)
        s *= c;
    return XiElement(x.lambda0_, std::move(r));
}

bool operator==(const XiElement &x, const XiElement &y)
{
    return x.lambda0_ == y.lambda0_ && x.comps_ == y.comps_;
}

std::string XiElement::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        if (comps_[j].is_zero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << "(" << comps_[j].to_string() << ")*x" << j;
    }
    if (first)
        os << "0";
    os << "  [lambda0 = " << lambda0_.to_string() << "]";
    return os.str();
}

AbModule xi_module(const Scalar &lambda0, std::size_t log_bound, std::size_t order)
{
    std::vector<std::vector<TruncSeries>> m(log_bound, std::vector<TruncSeries>(log_bound, TruncSeries(order)));
    for (std::size_t j = 0; j < log_bound; ++j) {
        m[j][j] = TruncSeries::monomial(1, lambda0, order);
        if (j > 0)
            m[j - 1][j] = TruncSeries::monomial(1, Scalar(1), order);
    }
    return AbModule(std::move(m));
}

XiElement monomial_to_abstract(std::size_t m, std::size_t i, const Scalar &lambda0, std::size_t log_bound,
                               std::size_t order)
{
    if (i >= log_bound)
        throw MathError("log index " + std::to_string(i) + " exceeds log bound " + std::to_string(log_bound));
    XiElement x = XiElement::basis(lambda0, log_bound, i, order);
    for (std::size_t k = 0; k < m; ++k)
        x = x.act_a();
    return x;
}

namespace
{

// mats[n](i', i): coefficient of b^n x_{i'} in a^n x_i (upper triangular).
std::vector<Matrix> power_matrices(const Scalar &lambda0, std::size_t log_bound, std::size_t order)
{
    std::vector<Matrix> mats(order, Matrix(log_bound, log_bound));
    for (std::size_t i = 0; i < log_bound; ++i) {
        XiElement x = XiElement::basis(lambda0, log_bound, i, order);
        for (std::size_t n = 0; n < order; ++n) {
            if (n > 0)
                x = x.act_a();
            for (std::size_t ip = 0; ip <= i; ++ip)
                mats[n](ip, i) = x.comp(ip)[n];
        }
    }
    return mats;
}

} // namespace

std::vector<std::vector<Scalar>> to_function_coords(const XiElement &x)
{
    const std::size_t n = x.order(), L = x.log_bound();
    const auto mats = power_matrices(x.lambda0(), L, n);
    std::vector<std::vector<Scalar>> f(L, std::vector<Scalar>(n));
    for (std::size_t d = 0; d < n; ++d) {
        // back substitution in the upper triangular system mats[d] F = G
        for (std::size_t i = L; i-- > 0;) {
            Scalar acc = x.comp(i)[d];
            for (std::size_t k = i + 1; k < L; ++k)
                acc -= mats[d](i, k) * f[k][d];
            f[i][d] = acc / mats[d](i, i);
        }
    }
    return f;
}

XiElement from_function_coords(const std::vector<std::vector<Scalar>> &f, const Scalar &lambda0,
                               std::size_t order)
{
    const std::size_t L = f.size();
    const auto mats = power_matrices(lambda0, L, order);
    Coords c = coords_zero(L, order);
    for (std::size_t d = 0; d < order; ++d)
        for (std::size_t i = 0; i < L; ++i) {
            if (d >= f[i].size() || f[i][d].is_zero())
                continue;
            for (std::size_t ip = 0; ip <= i; ++ip)
                c[ip][d] += mats[d](ip, i) * f[i][d];
        }
    return XiElement(lambda0, std::move(c));
}

SpanSolution express_in_graded_span(const Coords &x, const std::vector<std::vector<Coords>> &columns)
{
    const std::size_t L = x.size(), T = columns.size();
    std::size_t n = coords_order(x);
    for (const auto &col : columns) {
        n = std::min(n, col.size());
        for (const auto &v : col) {
            if (v.size() != L)
                throw MathError("span basis of mismatched rank");
            n = std::min(n, coords_order(v));
        }
    }
    // unknown c_{t,m} at column t*n + m; equation (component i, degree d) at row i*n + d
    Matrix a(L * n, T * n);
    std::vector<Scalar> rhs(L * n);
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t d = 0; d < n; ++d) {
            rhs[i * n + d] = x[i][d];
            for (std::size_t t = 0; t < T; ++t)
                for (std::size_t m = 0; m <= d; ++m) {
                    const Scalar &v = columns[t][m][i][d];
                    if (!v.is_zero())
                        a(i * n + d, t * n + m) = v;
                }
        }
    const LinearSolution sol = solve(a, rhs);
    if (!sol.consistent)
        throw MathError("not in span at available order " + std::to_string(n));
    std::size_t eff = n;
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t m = 0; m < n; ++m)
            if (!sol.determined[t * n + m]) {
                eff = std::min(eff, m);
                break;
            }
    if (eff == 0)
        throw MathError("effective order exhausted: no span coefficient is determined at order " +
                        std::to_string(n));
    SpanSolution out;
    out.effective_order = eff;
    out.valuation_loss = n - eff;
    for (std::size_t t = 0; t < T; ++t) {
        TruncSeries c(eff);
        for (std::size_t m = 0; m < eff; ++m)
            c[m] = sol.x[t * n + m];
        out.coeffs.push_back(std::move(c));
    }
    return out;
}

SpanSolution express_in_span(const Coords &x, const std::vector<Coords> &basis)
{
    const std::size_t n = coords_order(x);
    std::vector<std::vector<Coords>> columns;
    for (const auto &v : basis) {
        if (v.size() != x.size())
            throw MathError("span basis of mismatched rank");
        std::vector<Coords> col;
        const std::size_t nv = std::min(n, coords_order(v));
        for (std::size_t m = 0; m < nv; ++m) {
            Coords s(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                s[i] = v[i].shifted_up(m).truncated(nv);
            col.push_back(std::move(s));
        }
        columns.push_back(std::move(col));
    }
    return express_in_graded_span(x, columns);
}

SpanSolution express_in_span(const XiElement &x, const std::vector<XiElement> &basis)
{
    std::vector<Coords> b;
    for (const auto &v : basis) {
        if (v.lambda0() != x.lambda0() || v.log_bound() != x.log_bound())
            throw MathError("span basis over a different Xi model");
        b.push_back(v.comps());
    }
    return express_in_span(x.comps(), b);
}

} // namespace abtheme
