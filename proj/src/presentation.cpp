#include "abtheme/theme.hpp"

namespace abtheme
{

Presentation Presentation::from_parameters(const Scalar &lambda1, const std::vector<unsigned> &gaps,
                                           const std::vector<std::optional<Scalar>> &alphas, std::size_t order)
{
    if (gaps.size() != alphas.size())
        throw InputError("presentation needs one parameter per gap");
    Presentation p;
    p.lambdas.push_back(lambda1);
    for (std::size_t j = 0; j < gaps.size(); ++j) {
        const unsigned g = gaps[j];
        p.lambdas.push_back(p.lambdas.back() + Scalar(static_cast<long>(g)) - Scalar(1));
        TruncSeries s = TruncSeries::constant(Scalar(1), order);
        if (g == 0) {
            if (alphas[j])
                throw InputError("gap 0 carries the empty parameter, got " + alphas[j]->to_string());
        } else {
            if (!alphas[j] || alphas[j]->is_zero())
                throw InputError("gap " + std::to_string(g) + " needs a nonzero parameter");
            if (g < order)
                s[g] = *alphas[j];
        }
        p.units.push_back(s);
    }
    return p;
}

StandardForm Presentation::compose(unsigned cap) const
{
    std::vector<TruncSeries> u;
    for (const auto &s : units)
        u.push_back(s.truncated(cap));
    return standard_form_compose(lambdas, u, cap);
}

PresentedModule companion_module(const AbElement &monic_relation)
{
    const unsigned k = monic_relation.a_degree();
    if (k == 0)
        throw MathError("companion module of a relation of a-degree 0");
    const TruncSeries lead = monic_relation.a_coefficient(k);
    if (!(lead == TruncSeries::constant(Scalar(1), lead.order())))
        throw MathError("relation is not monic");
    const std::size_t n = monic_relation.weight_cap() - k;
    std::vector<std::vector<TruncSeries>> m(k, std::vector<TruncSeries>(k, TruncSeries(n)));
    for (unsigned i = 0; i + 1 < k; ++i)
        m[i + 1][i] = TruncSeries::constant(Scalar(1), n);
    for (unsigned j = 0; j < k; ++j)
        m[j][k - 1] = -monic_relation.a_coefficient(j).truncated(n);
    return {AbModule(std::move(m)), coords_basis(k, 0, n)};
}

PresentedModule theme_from_presentation(const Presentation &p, std::size_t order)
{
    const unsigned cap = static_cast<unsigned>(order + p.lambdas.size());
    return companion_module(p.compose(cap).monic);
}

namespace
{

std::optional<XiElement> embed_at(const AbElement &rel, const Scalar &lambda0, std::size_t order)
{
    const std::size_t k = rel.a_degree();
    if (order <= 2 * k)
        throw MathError("order insufficient to embed a relation of degree " + std::to_string(k));
    const std::size_t free_n = order - k;
    const std::size_t cols = k * free_n;
    Matrix eq(k * order, cols);
    // columns: top log component first, then descending log index, b-power ascending
    for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t j = k - 1 - c / free_n, n = c % free_n;
        Coords x = coords_zero(k, order);
        x[j][n] = Scalar(1);
        const XiElement img = XiElement(lambda0, x).act(rel);
        if (img.order() < order)
            throw MathError("relation weight cap below the embedding order");
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t m = 0; m < order; ++m)
                eq(i * order + m, c) = img.comp(i)[m];
    }
    // solve with b-powers descending so the pivots come from the indicial blocks
    auto solve_pos = [&](std::size_t c) {
        const std::size_t j = k - 1 - c / free_n, n = c % free_n;
        return (free_n - 1 - n) * k + (k - 1 - j);
    };
    Matrix eqp(k * order, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < k * order; ++r)
            eqp(r, solve_pos(c)) = eq(r, c);
    const auto null = nullspace(eqp);
    if (null.empty())
        return std::nullopt;
    Matrix basis(null.size(), cols);
    for (std::size_t r = 0; r < null.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            basis(r, c) = null[r][solve_pos(c)];
    const Echelon e = rref(basis);
    if (e.pivots.empty() || e.pivots.front() >= free_n)
        return std::nullopt;
    Coords g = coords_zero(k, free_n);
    for (std::size_t c = 0; c < cols; ++c)
        g[k - 1 - c / free_n][c % free_n] = e.reduced(0, c);
    return XiElement(lambda0, std::move(g));
}

} // namespace

XiElement embed_relation(const AbElement &monic_relation, const Scalar &lambda0_hint, std::size_t order)
{
    if (!lambda0_hint.is_rational() || lambda0_hint.rational() <= 0)
        throw MathError("embedding needs a positive rational base exponent, got " + lambda0_hint.to_string());
    const std::size_t n = std::min<std::size_t>(order, monic_relation.weight_cap());
    for (Scalar l = lambda0_hint; l.rational() > 0; l = l - Scalar(1)) {
        if (auto phi = embed_at(monic_relation, l, n))
            return *phi;
    }
    throw MathError("relation has no rank-" + std::to_string(monic_relation.a_degree()) +
                    " solution in Xi over any positive base congruent to " + lambda0_hint.to_string());
}

Monogenicity is_monogenic(const AbModule &m)
{
    const std::size_t k = m.rank();
    Matrix a0(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            a0(i, j) = m.entry(i, j).coeff_or_zero(0);
    const std::size_t r = rref(a0).rank();
    Monogenicity out;
    out.quotient_dim = k - r;
    out.monogenic = out.quotient_dim == 1;
    // a basis vector outside the image of a mod b
    for (std::size_t i = 0; i < k; ++i) {
        Matrix aug(k, k + 1);
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = 0; q < k; ++q)
                aug(p, q) = a0(p, q);
            aug(p, k) = Scalar(p == i ? 1 : 0);
        }
        if (rref(aug).rank() > r) {
            out.witness = i;
            break;
        }
    }
    return out;
}

} // namespace abtheme
