#include "abtheme/theme.hpp"

namespace abtheme
{

XiElement rank3_generator(const Rank3FamilySpec &spec, std::size_t order)
{
    const Scalar lambda0 = spec.lambda - Scalar(2);
    if (!spec.lambda.is_rational() || lambda0.rational() <= 0)
        throw MathError("rank-three family needs lambda in 2 + Q+*, got " + spec.lambda.to_string());
    if (spec.eta0.is_zero())
        throw MathError("rank-three family needs eta0 != 0");
    auto pad = [order](const TruncSeries &s) {
        TruncSeries r(order);
        for (std::size_t m = 0; m < order; ++m)
            r[m] = s.coeff_or_zero(m);
        return r;
    };
    const XiElement top = monomial_to_abstract(2, 2, lambda0, 3, order);
    const XiElement log1 = monomial_to_abstract(2, 1, lambda0, 3, order).act_series(pad(spec.xi));
    const XiElement log0 = monomial_to_abstract(2, 0, lambda0, 3, order).act_series(pad(spec.zeta));
    TruncSeries eta(order);
    eta[0] = spec.eta0;
    if (order > 1)
        eta[1] = spec.eta1;
    const XiElement low = XiElement::basis(lambda0, 3, 0, order).act_series(eta);
    return top + log1 + low + log0;
}

Rank3FamilySpec rank3_family_coordinates(const XiElement &phi)
{
    if (phi.log_bound() != 3 || rank_of(phi) != 3)
        throw MathError("family coordinates need a rank-three generator");
    const Scalar &l0 = phi.lambda0();
    const std::size_t n = phi.order();
    const TruncSeries &g2 = phi.comp(2);
    if (g2.valuation() != 2)
        throw MathError("top component of valuation " + std::to_string(g2.valuation().value_or(0)) +
                        ", the family needs 2");
    const Scalar c = rising_factorial(l0, 2);
    const XiElement psi = phi.act_series(inverse(g2.shifted_down(2) * (Scalar(1) / c))).truncated(n - 2);
    const std::size_t m = psi.order();
    const XiElement r1 = psi - monomial_to_abstract(2, 2, l0, 3, m);
    if (!r1.comp(2).is_zero())
        throw MathError("family coordinates: top component not removed");
    const TruncSeries &g1 = r1.comp(1);
    if (!g1.is_zero() && *g1.valuation() < 2)
        throw MathError("family coordinates: log component has valuation below 2");
    Rank3FamilySpec spec;
    spec.lambda = l0 + Scalar(2);
    spec.xi = g1.shifted_down(2) * (Scalar(1) / c);
    const XiElement r2 = r1 - monomial_to_abstract(2, 1, l0, 3, m).act_series(spec.xi);
    if (!r2.comp(1).is_zero() || !r2.comp(2).is_zero())
        throw MathError("family coordinates: log component not removed");
    const TruncSeries &g0 = r2.comp(0);
    spec.eta0 = g0[0];
    spec.eta1 = g0[1];
    TruncSeries z = g0;
    z[0] = Scalar();
    z[1] = Scalar();
    spec.zeta = z.shifted_down(2) * (Scalar(1) / c);
    if (spec.eta0.is_zero())
        throw MathError("family coordinates: eta0 vanishes");
    return spec;
}

Rank3NormalForm rank3_normal_form(const XiElement &phi)
{
    const auto stages = jh_filtration(phi);
    if (stages.size() != 3)
        throw MathError("rank-three normal form needs rank 3, got " + std::to_string(stages.size()));
    const Scalar &l1 = stages[0].exponent, &l2 = stages[1].exponent, &l3 = stages[2].exponent;
    if (l3 != l2 - Scalar(1))
        throw MathError("rank-three normal form needs p2 = 0");
    const Scalar p1 = l2 - l1 + Scalar(1);
    const TruncSeries &h1 = stages[1].link, &h2 = stages[2].link;

    // eps3 = phi3 + U phi2 with U + b U' = (h2(0) - h2) / b, so (a - l3 b) eps3 = h2(0) (phi2 + W phi1)
    const std::size_t n = std::min(h1.order(), h2.order());
    TruncSeries rhs = TruncSeries::constant(h2[0], h2.order()) - h2;
    const TruncSeries u_series = solve_ode_Aprime(rhs.shifted_down(1)).truncated(n);
    const TruncSeries w = u_series * h1.truncated(n) * (Scalar(1) / h2[0]);
    // (a - l2 b)(phi2 + W phi1) = (h1 + (l1 - l2) b W + b^2 W') phi1
    TruncSeries h1n = h1.truncated(n) + w.shifted_up(1).truncated(n) * (Scalar(1) - p1) +
                      derivative(w).shifted_up(2).truncated(n);
    h1n = h1n.truncated(std::min(n, h1n.order()));
    Rank3NormalForm out;
    out.lambda1 = l1;
    out.unit = h1n * (Scalar(1) / h1n[0]);
    out.effective_order = out.unit.order();
    if (out.unit.order() < 3)
        throw MathError("order insufficient for the rank-three normal form");
    out.u = out.unit[1];
    out.alpha = out.unit[2];

    // the normalised generator must be killed by (a - l1 b) S1^-1 (a - l2 b)(a - l3 b)
    const XiElement eps3 = stages[2].generator + stages[1].generator.with_log_bound(3).act_series(u_series);
    const unsigned cap = static_cast<unsigned>(std::min(out.unit.order(), eps3.order()));
    const StandardForm sf = standard_form_compose({l1, l2, l3},
                                                  {out.unit.truncated(cap), TruncSeries::constant(Scalar(1), cap)}, cap);
    if (!eps3.act(sf.product).is_zero())
        throw MathError("rank-three normal form does not annihilate the normalised generator");
    return out;
}

Rank3Analysis rank3_family_analysis(const Rank3FamilySpec &spec, std::size_t order)
{
    const XiElement e = rank3_generator(spec, order);
    Rank3Analysis out;
    out.pipeline = rank3_normal_form(e);
    const Scalar &l = spec.lambda;
    const Scalar xi1 = spec.xi.coeff_or_zero(1);
    out.u_closed = (spec.eta1 + Scalar(2) * spec.eta0 * xi1) / (Scalar(4) * spec.eta0);
    out.u_xi_free = spec.eta1 / (Scalar(4) * spec.eta0);
    out.alpha_closed = (l - Scalar(1)) * (l - Scalar(2)) / (Scalar(4) * spec.eta0);

    // f = (a - (l+1) b)(1 + b xi')^-1 (a - l b) e lies in C[[s]] s^{l-1}
    TruncSeries xi(order);
    for (std::size_t m = 0; m < order; ++m)
        xi[m] = spec.xi.coeff_or_zero(m);
    const TruncSeries unit = TruncSeries::constant(Scalar(1), order) + derivative(xi).shifted_up(1).truncated(order);
    const XiElement step = e.act_a() - l * e.act_b();
    const XiElement mid = step.act_series(inverse(unit));
    const XiElement f = mid.act_a() - (l + Scalar(1)) * mid.act_b();
    if (!f.comp(1).is_zero() || !f.comp(2).is_zero())
        throw MathError("rank-three image is not free of logarithms");
    const auto coeffs = to_function_coords(f);
    // base exponent l - 2: index n carries s^{l - 3 + n}
    out.lead = coeffs[0][2];
    out.w = coeffs[0][4];
    out.lead_expected = Scalar(4) * spec.eta0 / ((l - Scalar(2)) * (l - Scalar(1)));
    out.w_expected = Scalar(1) / (l * (l + Scalar(1)));
    out.agrees = out.pipeline.u == out.u_closed && out.pipeline.alpha == out.alpha_closed && out.w == out.w_expected &&
                 out.lead == out.lead_expected;
    return out;
}

} // namespace abtheme
