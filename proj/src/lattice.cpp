#include "abtheme/theme.hpp"

#include <algorithm>

namespace abtheme
{

namespace
{

constexpr std::size_t kWindow = 3;

TruncSeries padded(const TruncSeries &s, std::size_t order)
{
    TruncSeries r(order);
    for (std::size_t m = 0; m < order; ++m)
        r[m] = s.coeff_or_zero(m);
    return r;
}

// column m * k + i holds the coefficient of b^(m - D) e_i, so pivots favour the most polar terms
std::vector<Scalar> flatten(const Coords &x, std::size_t len)
{
    const std::size_t k = x.size();
    std::vector<Scalar> v(k * len);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t m = 0; m < len; ++m)
            v[m * k + i] = x[i].coeff_or_zero(m);
    return v;
}

Coords unflatten(const std::vector<Scalar> &v, std::size_t k, std::size_t len)
{
    Coords x(k, TruncSeries(len));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t m = 0; m < len; ++m)
            x[i][m] = v[m * k + i];
    return x;
}

Coords shift_window(const Coords &x, std::size_t by, std::size_t len)
{
    Coords r;
    for (const auto &s : x)
        r.push_back(padded(s.shifted_up(by), len));
    return r;
}

class IncrementalEchelon
{
public:
    /// Reduces v in place; true when it was already in the span.
    bool reduce(std::vector<Scalar> &v) const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Scalar c = v[pivots_[r]];
            if (c.is_zero())
                continue;
            for (std::size_t j = pivots_[r]; j < v.size(); ++j)
                if (!rows_[r][j].is_zero())
                    v[j] -= c * rows_[r][j];
        }
        return std::all_of(v.begin(), v.end(), [](const Scalar &s) { return s.is_zero(); });
    }
    bool insert(std::vector<Scalar> v)
    {
        if (reduce(v))
            return false;
        std::size_t p = 0;
        while (v[p].is_zero())
            ++p;
        const Scalar inv = Scalar(1) / v[p];
        for (auto &s : v)
            s = s * inv;
        const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + at, p);
        rows_.insert(rows_.begin() + at, std::move(v));
        return true;
    }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<Scalar>> &rows() const { return rows_; }

private:
    std::vector<std::vector<Scalar>> rows_;
    std::vector<std::size_t> pivots_;
};

Matrix canonical_rows(const std::vector<Coords> &vs, std::size_t k, std::size_t len)
{
    Matrix m(vs.size(), k * len);
    for (std::size_t r = 0; r < vs.size(); ++r) {
        const auto v = flatten(vs[r], len);
        for (std::size_t c = 0; c < v.size(); ++c)
            m(r, c) = v[c];
    }
    return rref(m).reduced;
}

} // namespace

Coords offset_act_a(const AbModule &m, const Coords &x, std::size_t offset)
{
    const std::size_t len = coords_order(x);
    if (m.order() < len)
        throw MathError("order insufficient: module known to b^" + std::to_string(m.order()) +
                        ", lattice window needs " + std::to_string(len));
    const std::size_t k = m.rank();
    Coords r(k, TruncSeries(len));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            r[i] += (m.entry(i, j).truncated(len) * x[j]).truncated(len);
        r[i] += padded(derivative(x[i]).shifted_up(2), len);
        r[i] -= padded(x[i].shifted_up(1), len) * Scalar(static_cast<long>(offset));
    }
    return r;
}

LatticeOperator b_inverse_a(const AbModule &m)
{
    return [m](const Coords &x, std::size_t offset) -> std::optional<Coords> {
        const std::size_t len = coords_order(x);
        const Coords y = offset_act_a(m, x, offset);
        Coords r;
        for (const auto &s : y) {
            if (!s[0].is_zero())
                return std::nullopt;
            r.push_back(padded(s.shifted_down(1), len));
        }
        return r;
    };
}

namespace
{

struct Attempt {
    bool fits = false;
    std::vector<Coords> spanning;
    IncrementalEchelon lattice;
};

Attempt try_saturate(const AbModule &m, const LatticeOperator &op, std::size_t d)
{
    const std::size_t k = m.rank(), len = d + kWindow;
    Attempt at;
    std::vector<Coords> queue;
    auto add = [&](Coords v) {
        // v together with its b-multiples inside the window
        while (!coords_is_zero(v)) {
            if (at.lattice.insert(flatten(v, len))) {
                at.spanning.push_back(v);
                queue.push_back(v);
            }
            v = shift_window(v, 1, len);
        }
    };
    for (std::size_t i = 0; i < k; ++i) {
        Coords e = coords_zero(k, len);
        e[i][d] = Scalar(1);
        add(e);
    }
    const std::size_t budget = k * len * (len + 1);
    std::size_t steps = 0;
    while (!queue.empty()) {
        if (++steps > budget)
            throw MathError("input not regular at this order: saturation did not stabilise");
        const Coords v = queue.back();
        queue.pop_back();
        const auto img = op(v, d);
        if (!img)
            return at;
        add(*img);
    }
    at.fits = true;
    return at;
}

} // namespace

Saturation saturate(const AbModule &m, const LatticeOperator &op)
{
    const std::size_t k = m.rank();
    for (std::size_t d = 0; d + kWindow <= m.order(); ++d) {
        Attempt at = try_saturate(m, op, d);
        if (!at.fits)
            continue;
        const std::size_t len = d + kWindow;
        Saturation out;
        out.pole_bound = d;
        out.window = kWindow;
        for (const auto &row : at.lattice.rows())
            out.lattice.push_back(unflatten(row, k, len));
        out.index = at.lattice.rank() - k * kWindow;

        // a complement of b E# inside E#, then the op on that complement modulo b E#
        IncrementalEchelon bl;
        for (const auto &v : out.lattice)
            bl.insert(flatten(shift_window(v, 1, len), len));
        IncrementalEchelon grow = bl;
        std::vector<Coords> comp;
        for (const auto &v : out.lattice)
            if (grow.insert(flatten(v, len)))
                comp.push_back(v);
        if (comp.size() != k)
            throw MathError("saturated lattice has rank " + std::to_string(comp.size()) + ", expected " +
                            std::to_string(k));
        const std::size_t nb = bl.rank();
        Matrix sys(k * len, k + nb);
        for (std::size_t c = 0; c < k; ++c) {
            const auto v = flatten(comp[c], len);
            for (std::size_t r = 0; r < v.size(); ++r)
                sys(r, c) = v[r];
        }
        for (std::size_t c = 0; c < nb; ++c)
            for (std::size_t r = 0; r < k * len; ++r)
                sys(r, k + c) = bl.rows()[c][r];
        out.residue = Matrix(k, k);
        for (std::size_t c = 0; c < k; ++c) {
            const auto img = op(comp[c], d);
            if (!img)
                throw MathError("saturated lattice is not stable under the operator");
            const LinearSolution sol = solve(sys, flatten(*img, len));
            if (!sol.consistent)
                throw MathError("saturated lattice is not stable under the operator");
            for (std::size_t r = 0; r < k; ++r)
                out.residue(r, c) = sol.x[r];
        }
        return out;
    }
    throw MathError("input not regular at this order: pole order exceeds the available window");
}

Saturation saturate(const AbModule &m)
{
    return saturate(m, b_inverse_a(m));
}

bool same_lattice(const Saturation &x, const Saturation &y)
{
    if (x.window != y.window || x.lattice.empty() || y.lattice.empty())
        return false;
    const std::size_t k = x.lattice.front().size();
    if (y.lattice.front().size() != k)
        return false;
    const std::size_t d = std::max(x.pole_bound, y.pole_bound), len = d + x.window;
    auto lift = [&](const Saturation &s) {
        std::vector<Coords> r;
        for (const auto &v : s.lattice)
            r.push_back(shift_window(v, d - s.pole_bound, len));
        return canonical_rows(r, k, len);
    };
    return x.lattice.size() == y.lattice.size() && lift(x) == lift(y);
}

std::vector<Scalar> bernstein_from_saturation(const Saturation &s)
{
    Matrix neg = s.residue;
    for (std::size_t i = 0; i < neg.rows(); ++i)
        for (std::size_t j = 0; j < neg.cols(); ++j)
            neg(i, j) = -neg(i, j);
    return characteristic_polynomial(neg);
}

std::vector<Scalar> bernstein_polynomial(const AbModule &m)
{
    return bernstein_from_saturation(saturate(m));
}

std::string polynomial_to_string(const std::vector<Scalar> &ascending, char var)
{
    std::string out;
    for (std::size_t i = ascending.size(); i-- > 0;) {
        const Scalar &c = ascending[i];
        if (c.is_zero())
            continue;
        std::string cs = c.to_string();
        const bool compound = cs.find(' ') != std::string::npos;
        bool negative = !compound && cs.front() == '-';
        if (negative)
            cs.erase(0, 1);
        if (compound)
            cs = "(" + cs + ")";
        if (out.empty())
            out = negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(i));
        if (mono.empty())
            out += cs;
        else if (cs == "1")
            out += mono;
        else
            out += cs + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

} // namespace abtheme
