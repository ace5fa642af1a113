#include "abtheme/changevar.hpp"

#include <algorithm>

namespace abtheme
{

namespace
{

TruncSeries padded(const TruncSeries &s, std::size_t order)
{
    TruncSeries r(order, s.var());
    for (std::size_t m = 0; m < order; ++m)
        r[m] = s.coeff_or_zero(m);
    return r;
}

// sum_j c_j(b) a^j x through a callback action.
Coords act_element(const AbElement &u, const LinearAction &act, const Coords &x, std::size_t out_order)
{
    Coords r = coords_zero(x.size(), out_order);
    Coords aj = coords_truncated(x, std::min(coords_order(x), out_order));
    for (unsigned j = 0; j <= u.a_degree(); ++j) {
        if (j > 0)
            aj = act.a(aj);
        const TruncSeries c = u.a_coefficient(j);
        if (!c.is_zero())
            r = coords_add(r, coords_truncated(coords_scale(padded(c, out_order), aj), out_order));
    }
    return r;
}

// b^m y for m < n, each truncated to n.
std::vector<Coords> beta_tower(const ChangeOfVariable &cov, const LinearAction &act, const Coords &y, std::size_t n)
{
    std::vector<Coords> col{coords_truncated(y, n)};
    for (std::size_t m = 1; m < n; ++m)
        col.push_back(coords_truncated(apply_beta(cov, act, col.back()), n));
    return col;
}

} // namespace

LinearAction action_of(const AbModule &m)
{
    return {[m](const Coords &x) { return m.act_a(x); }, [m](const Coords &x) { return m.act_b(x); }};
}

LinearAction action_of_xi(const Scalar &lambda0, std::size_t log_bound)
{
    (void)log_bound;
    return {[lambda0](const Coords &x) { return XiElement(lambda0, x).act_a().comps(); },
            [lambda0](const Coords &x) { return XiElement(lambda0, x).act_b().comps(); }};
}

Coords apply_series_in_a(const TruncSeries &t, const LinearAction &act, const Coords &x)
{
    const std::size_t n = coords_order(x);
    Coords r = coords_zero(x.size(), n);
    Coords aj = x;
    for (std::size_t j = 0; j < t.order(); ++j) {
        if (j > 0)
            aj = coords_truncated(act.a(aj), n);
        if (coords_is_zero(aj))
            break;
        if (!t[j].is_zero())
            r = coords_add(r, coords_scale(TruncSeries::constant(t[j], n), aj));
    }
    return r;
}

Coords apply_alpha(const ChangeOfVariable &cov, const LinearAction &act, const Coords &x)
{
    return apply_series_in_a(cov.theta(), act, x);
}

Coords apply_beta(const ChangeOfVariable &cov, const LinearAction &act, const Coords &x)
{
    const std::size_t n = coords_order(x);
    return coords_truncated(act.b(apply_series_in_a(derivative(cov.theta()), act, x)), n);
}

PushedRelation pushforward_generator(const LinearAction &act, const Coords &x, std::size_t k,
                                     const ChangeOfVariable &cov)
{
    const std::size_t n = coords_order(x);
    std::vector<Coords> alphas{x};
    for (std::size_t t = 1; t <= k; ++t)
        alphas.push_back(apply_alpha(cov, act, alphas.back()));
    std::vector<std::vector<Coords>> columns;
    for (std::size_t t = 0; t < k; ++t)
        columns.push_back(beta_tower(cov, act, alphas[t], n));
    SpanSolution sol;
    try {
        sol = express_in_graded_span(alphas[k], columns);
    } catch (const MathError &e) {
        throw MathError(std::string("pushed generator is not thematic of rank ") + std::to_string(k) + " (" +
                        e.what() + ")");
    }
    const unsigned cap = static_cast<unsigned>(sol.effective_order);
    if (cap <= k)
        throw MathError("order insufficient: pushed relation known to weight " + std::to_string(cap));
    AbElement p = AbElement::term(0, static_cast<unsigned>(k), Scalar(1), cap);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t m = 0; m < sol.coeffs[t].order(); ++m)
            p.add_term(static_cast<unsigned>(m), static_cast<unsigned>(t), -sol.coeffs[t][m]);

    // Theta_theta(P') must kill x for the original action
    const AbElement back = theta_endomorphism(cov.with_order(cap), p);
    const std::size_t check = std::max<std::size_t>(1, cap / k);
    if (!coords_is_zero(act_element(back, act, x, std::min<std::size_t>(check, n))))
        throw MathError("pushed relation does not annihilate the generator under Theta_theta");
    return {p, sol.effective_order};
}

PushedRelation pushforward_presentation(const AbElement &monic_relation, const ChangeOfVariable &cov)
{
    const PresentedModule pm = companion_module(monic_relation);
    return pushforward_generator(action_of(pm.module), pm.generator, pm.module.rank(), cov);
}

PushedRelation pushforward_annihilator(const XiElement &phi, const ChangeOfVariable &cov)
{
    return pushforward_generator(action_of_xi(phi.lambda0(), phi.log_bound()), phi.comps(), rank_of(phi), cov);
}

AbModule pushforward_simple_pole(const AbModule &m, const ChangeOfVariable &cov)
{
    if (!m.is_simple_pole())
        throw MathError("pushforward_simple_pole needs a simple-pole module");
    const std::size_t k = m.rank(), n = m.order();
    const LinearAction act = action_of(m);
    std::vector<std::vector<Coords>> columns;
    for (std::size_t t = 0; t < k; ++t)
        columns.push_back(beta_tower(cov, act, coords_basis(k, t, n), n));
    std::vector<std::vector<TruncSeries>> a(k, std::vector<TruncSeries>(k));
    std::size_t eff = n;
    std::vector<SpanSolution> sols;
    for (std::size_t j = 0; j < k; ++j) {
        sols.push_back(express_in_graded_span(apply_alpha(cov, act, coords_basis(k, j, n)), columns));
        eff = std::min(eff, sols.back().effective_order);
    }
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i)
            a[i][j] = sols[j].coeffs[i].truncated(eff);
    return AbModule(std::move(a));
}

XiElement pushforward_xi_substitution(const XiElement &phi, const TruncSeries &psi)
{
    const std::size_t n = phi.order(), L = phi.log_bound();
    if (psi.order() < n + 1)
        throw MathError("substitution known to order " + std::to_string(psi.order()) + ", need " +
                        std::to_string(n + 1));
    if (!psi[0].is_zero())
        throw MathError("composition undefined: substitution has a constant term");
    const Scalar r = psi[1];
    if (!r.is_unit())
        throw MathError("not invertible for composition: psi'(0) = " + r.to_string());
    // psi(t) = r t chi(t) with chi(0) = 1
    const TruncSeries chi = psi.shifted_down(1).truncated(n) * (Scalar(1) / r);
    const TruncSeries ell = log_unit(chi);
    std::vector<TruncSeries> ell_pow{TruncSeries::constant(Scalar(1), n)};
    for (std::size_t q = 1; q < L; ++q)
        ell_pow.push_back(ell_pow.back() * ell * (Scalar(1) / Scalar(static_cast<long>(q))));

    const auto f = to_function_coords(phi);
    std::vector<std::vector<Scalar>> g(L, std::vector<Scalar>(n));
    Scalar rn(1);
    for (std::size_t d = 0; d < n; ++d, rn = rn * r) {
        bool any = false;
        for (std::size_t j = 0; j < L; ++j)
            any = any || !f[j][d].is_zero();
        if (!any)
            continue;
        const Scalar mu = phi.lambda0() - Scalar(1) + Scalar(static_cast<long>(d));
        const TruncSeries pw = pow_unit(chi, mu).truncated(n - d) * rn;
        for (std::size_t j = 0; j < L; ++j) {
            if (f[j][d].is_zero())
                continue;
            // s^mu L^j/j! -> t^mu chi^mu sum_i L^i/i! ell^{j-i}/(j-i)!
            for (std::size_t i = 0; i <= j; ++i) {
                const TruncSeries term = pw * ell_pow[j - i].truncated(n - d) * f[j][d];
                for (std::size_t m = 0; m + d < n; ++m)
                    g[i][m + d] += term[m];
            }
        }
    }
    return from_function_coords(g, phi.lambda0(), n);
}

TruncSeries rebase_b_powers(const Scalar &lambda, const ChangeOfVariable &cov, std::size_t n, std::size_t order)
{
    if (n >= order)
        throw MathError("rebase_b_powers needs n < order");
    const LinearAction act = action_of(e_lambda_module(lambda, order));
    const std::vector<std::vector<Coords>> columns{beta_tower(cov, act, coords_basis(1, 0, order), order)};
    Coords x{TruncSeries::monomial(n, Scalar(1), order)};
    const SpanSolution sol = express_in_graded_span(x, columns);
    const TruncSeries &c = sol.coeffs[0];
    if (c.order() <= n)
        throw MathError("order insufficient for chi_" + std::to_string(n));
    return c.shifted_down(n).with_var('B');
}

Eigenvector eigenvector_after_cov(const Scalar &lambda, const ChangeOfVariable &cov, std::size_t order)
{
    const LinearAction act = action_of(e_lambda_module(lambda, order));
    const Coords e = coords_basis(1, 0, order);
    const auto tower = beta_tower(cov, act, e, order);
    const SpanSolution sol = express_in_graded_span(apply_alpha(cov, act, e), {tower});
    const TruncSeries &c = sol.coeffs[0];
    if (c.order() < 3)
        throw MathError("order insufficient for R_theta");
    if (!c[0].is_zero() || c[1] != lambda)
        throw MathError("alpha e_lambda is not lambda beta e_lambda modulo beta^2");
    TruncSeries lin = c;
    lin[1] = Scalar();
    Eigenvector out;
    out.r_theta = lin.shifted_down(2).with_var('B');
    out.s_theta = exp(-primitive(out.r_theta));

    // alpha (S(beta) e) - lambda beta (S(beta) e) = 0
    const std::size_t n = out.s_theta.order();
    Coords y = coords_zero(1, order);
    for (std::size_t m = 0; m < n; ++m)
        y = coords_add(y, coords_scale(TruncSeries::constant(out.s_theta[m], order), tower[m]));
    const Coords lhs = coords_sub(apply_alpha(cov, act, y),
                                  coords_scale(TruncSeries::constant(lambda, order), apply_beta(cov, act, y)));
    out.verified = coords_is_zero(coords_truncated(lhs, n));
    return out;
}

std::vector<TruncSeries> rebase_series(const TruncSeries &s, const ChangeOfVariable &cov, unsigned cap)
{
    const ChangeOfVariable c = cov.with_order(cap);
    const AbElement target = AbElement::series_in_b(s, cap);
    const AbElement u = theta_endomorphism(c.inverse().with_order(cap), target);
    if (!(theta_endomorphism(c, u) == target))
        throw MathError("rebased series does not reconstruct S(b)");
    std::vector<TruncSeries> out;
    for (unsigned l = 0; l < cap; ++l)
        out.push_back(u.a_coefficient(l).with_var('B'));
    while (!out.empty() && out.back().is_zero())
        out.pop_back();
    return out;
}

ThematicBasis verify_thematic_basis(const XiElement &phi, std::size_t k, const ChangeOfVariable &cov)
{
    const LinearAction act = action_of_xi(phi.lambda0(), phi.log_bound());
    std::vector<XiElement> basis{phi};
    for (std::size_t i = 1; i < k; ++i)
        basis.push_back(basis.back().act_a());
    try {
        express_in_span(basis.back().act_a(), basis);
    } catch (const MathError &) {
        throw MathError("not " + std::to_string(k) + "-thematic");
    }
    ThematicBasis out;
    out.transition = Matrix(k, k);
    Coords y = phi.comps();
    for (std::size_t j = 0; j < k; ++j) {
        if (j > 0)
            y = apply_alpha(cov, act, y);
        const SpanSolution sol = express_in_span(XiElement(phi.lambda0(), y), basis);
        for (std::size_t i = 0; i < k; ++i)
            out.transition(i, j) = sol.coeffs[i][0];
    }
    out.triangular = true;
    out.unit_diagonal = true;
    for (std::size_t i = 0; i < k; ++i) {
        out.unit_diagonal = out.unit_diagonal && out.transition(i, i) == Scalar(1);
        for (std::size_t j = i + 1; j < k; ++j)
            out.triangular = out.triangular && out.transition(i, j).is_zero();
    }
    return out;
}

LatticeOperator beta_inverse_alpha(const AbModule &m, const ChangeOfVariable &cov)
{
    return [m, cov](const Coords &x, std::size_t offset) -> std::optional<Coords> {
        const std::size_t len = coords_order(x);
        const std::size_t terms = m.rank() * (len + 1) + 1;
        LinearAction act{[&](const Coords &y) { return offset_act_a(m, y, offset); }, nullptr};
        const TruncSeries theta = padded(cov.theta(), std::max(terms, cov.order()));
        const Coords y = apply_series_in_a(theta, act, x);
        Coords z;
        for (const auto &s : y) {
            if (!s[0].is_zero())
                return std::nullopt;
            z.push_back(padded(s.shifted_down(1), len));
        }
        const TruncSeries dinv = inverse(padded(derivative(theta), terms));
        return apply_series_in_a(dinv, act, z);
    };
}

bool PushforwardReport::ok() const
{
    return invariants_equal && routes_agree && std::all_of(matches.begin(), matches.end(), [](bool b) { return b; });
}

PushforwardReport verify_parameter_transform(const XiElement &phi, const ChangeOfVariable &cov)
{
    PushforwardReport rep;
    rep.original = analyze_theme(phi);
    rep.r = cov.r();
    const ChangeOfVariable c = cov.with_order(std::max(cov.order(), phi.order() + 2));

    const PushedRelation pr = pushforward_annihilator(phi, c);
    rep.relation = pr.relation;
    const XiElement embedded = embed_relation(pr.relation, phi.lambda0(), pr.effective_order);
    rep.pushed = analyze_theme(embedded);

    const XiElement substituted = pushforward_xi_substitution(phi, c.eta());
    rep.pushed_substitution = analyze_theme(substituted);
    rep.routes_agree = same_emitted_data(rep.pushed, rep.pushed_substitution, &rep.route_diff);

    rep.invariants_equal = rep.original.lambdas == rep.pushed.lambdas && rep.original.gaps == rep.pushed.gaps;
    for (std::size_t j = 0; j < rep.original.alphas.size(); ++j) {
        std::optional<Scalar> e, st;
        if (const auto &z = rep.original.alphas[j]) {
            const Scalar rp = rep.r.pow(rep.original.gaps[j]);
            e = *z / rp;
            st = rp * *z;
        }
        rep.expected.push_back(e);
        rep.stated.push_back(st);
        rep.matches.push_back(j < rep.pushed.alphas.size() && rep.pushed.alphas[j] == e);
    }
    return rep;
}

bool is_constant(const Scalar &s)
{
    return s.is_rational();
}

} // namespace abtheme
