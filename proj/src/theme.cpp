#include "abtheme/theme.hpp"

#include <algorithm>

namespace abtheme
{

namespace
{

struct Normalised {
    XiElement element;
    std::size_t valuation = 0;
    TruncSeries factor; ///< element = factor^-1 * input
};

// Divides by the unit part of the top log component, so that component becomes b^m.
Normalised normalise_top(const XiElement &x)
{
    const auto top = x.top_log();
    if (!top)
        throw MathError("order insufficient: generator vanishes at truncation order " + std::to_string(x.order()));
    const TruncSeries &g = x.comp(*top);
    const std::size_t m = *g.valuation();
    const TruncSeries h = g.shifted_down(m);
    if (h.order() == 0)
        throw MathError("order insufficient: no unit part left after valuation " + std::to_string(m));
    return {x.act_series(inverse(h)), m, h};
}

unsigned gap_between(const Scalar &lower, const Scalar &upper)
{
    // p = upper - lower + 1
    const Scalar p = upper - lower + Scalar(1);
    if (!p.is_rational() || p.rational().get_den() != 1 || p.rational() < 0)
        throw MathError("not a theme: gap " + p.to_string() + " between exponents " + lower.to_string() + " and " +
                        upper.to_string() + " is not a natural number");
    return static_cast<unsigned>(p.rational().get_num().get_ui());
}

std::optional<Scalar> parameter_of(const TruncSeries &unit, unsigned p)
{
    if (p == 0)
        return std::nullopt;
    if (p >= unit.order())
        throw MathError("order insufficient: parameter sits at b^" + std::to_string(p) +
                        " but the unit is known only to order " + std::to_string(unit.order()));
    const Scalar &a = unit[p];
    if (a.is_zero())
        throw MathError("not a theme: parameter at b^" + std::to_string(p) + " vanishes");
    return a;
}

} // namespace

std::size_t rank_of(const XiElement &phi)
{
    const auto top = phi.top_log();
    if (!top)
        throw MathError("zero generator");
    return *top + 1;
}

Annihilator annihilator_of(const XiElement &phi, std::size_t k)
{
    std::vector<XiElement> basis{phi};
    for (std::size_t j = 1; j < k; ++j)
        basis.push_back(basis.back().act_a());
    const XiElement target = basis.back().act_a();
    SpanSolution sol;
    try {
        sol = express_in_span(target, basis);
    } catch (const MathError &e) {
        throw MathError(std::string("generator does not have rank ") + std::to_string(k) + " at this order (" +
                        e.what() + ")");
    }
    const unsigned cap = static_cast<unsigned>(sol.effective_order);
    if (cap <= k)
        throw MathError("order insufficient: annihilator known to weight " + std::to_string(cap) +
                        ", degree " + std::to_string(k));
    AbElement p = AbElement::term(0, static_cast<unsigned>(k), Scalar(1), cap);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t m = 0; m < sol.coeffs[j].order(); ++m)
            p.add_term(static_cast<unsigned>(m), static_cast<unsigned>(j), -sol.coeffs[j][m]);
    if (!phi.act(p).is_zero())
        throw MathError("annihilator check failed: P phi != 0 at order " + std::to_string(cap));
    return {p, sol.effective_order};
}

std::vector<FiltrationStage> jh_filtration(const XiElement &phi)
{
    const std::size_t k = rank_of(phi);
    std::vector<FiltrationStage> stages(k);
    XiElement cur = phi.with_log_bound(k);
    for (std::size_t j = k; j >= 1; --j) {
        Normalised n = normalise_top(cur);
        if (j < k)
            stages[j].link = n.factor; // (a - lambda_{j+1} b) phi_{j+1} = h_j phi_j
        const Scalar lambda = phi.lambda0() + Scalar(static_cast<long>(n.valuation));
        const XiElement &g = n.element;
        XiElement next = g.act_a() - lambda * g.act_b();
        if (!next.comp(j - 1).is_zero())
            throw MathError("filtration step failed to lower the log degree at stage " + std::to_string(j));
        stages[j - 1] = FiltrationStage{g, lambda, TruncSeries()};
        if (j == 1) {
            if (!next.is_zero())
                throw MathError("bottom stage is not an eigenvector of a at order " + std::to_string(g.order()));
            break;
        }
        cur = XiElement(next.lambda0(), Coords(next.comps().begin(), next.comps().begin() + static_cast<long>(j - 1)));
    }
    for (std::size_t j = 0; j + 1 < k; ++j)
        gap_between(stages[j].exponent, stages[j + 1].exponent);
    return stages;
}

FundamentalInvariants fundamental_invariants(const XiElement &phi)
{
    const auto stages = jh_filtration(phi);
    FundamentalInvariants inv{stages[0].exponent, {}};
    for (std::size_t j = 0; j + 1 < stages.size(); ++j)
        inv.gaps.push_back(gap_between(stages[j].exponent, stages[j + 1].exponent));
    return inv;
}

Rank2Parameter extract_rank2_parameter(const XiElement &psi)
{
    if (rank_of(psi) != 2)
        throw MathError("rank-two parameter requested for a generator of rank " + std::to_string(rank_of(psi)));
    const Normalised n = normalise_top(psi.with_log_bound(2));
    const Scalar lambda2 = psi.lambda0() + Scalar(static_cast<long>(n.valuation));
    const Annihilator ann = annihilator_of(n.element, 2);
    const RightDivision div = right_divide_linear(ann.op, lambda2);
    if (!div.remainder.is_zero())
        throw MathError("not a theme / truncation insufficient: remainder " + div.remainder.to_string());
    const TruncSeries q1 = div.quotient.a_coefficient(1);
    if (!(q1 == TruncSeries::constant(Scalar(1), q1.order())))
        throw MathError("rank-two quotient is not monic");
    const TruncSeries q0 = div.quotient.a_coefficient(0);
    if (q0.order() < 3)
        throw MathError("order insufficient for the rank-two parameter");
    if (!q0[0].is_zero())
        throw MathError("rank-two quotient has a constant term");
    Rank2Parameter out;
    out.lambda2 = lambda2;
    out.lambda1 = -q0[1];
    TruncSeries lin = q0;
    lin[1] = Scalar();
    const TruncSeries h = -lin.shifted_down(2);
    out.unit = exp(primitive(h));
    out.p = gap_between(out.lambda1, out.lambda2);
    out.alpha = parameter_of(out.unit, out.p);
    out.annihilator = ann.op;
    out.effective_order = std::min<std::size_t>(ann.effective_order, out.unit.order());
    // S (a - l1 b) S^-1 (a - l2 b) must reproduce the annihilator
    const unsigned cap = static_cast<unsigned>(out.effective_order);
    const AbElement s = AbElement::series_in_b(out.unit, cap);
    const AbElement rebuilt = normal_mul(
        normal_mul(normal_mul(s, AbElement::linear(out.lambda1, cap)), AbElement::series_in_b(inverse(out.unit), cap)),
        AbElement::linear(lambda2, cap));
    if (!(rebuilt == ann.op.truncated(cap)))
        throw MathError("rank-two standard form does not reproduce the annihilator");
    return out;
}

std::vector<PrincipalParameter> principal_parameters(const XiElement &phi)
{
    const auto stages = jh_filtration(phi);
    std::vector<PrincipalParameter> out;
    for (std::size_t j = 1; j < stages.size(); ++j) {
        // image of the F_{j+1} generator in Xi^{(j)} / Xi^{(j-2)}
        const XiElement &g = stages[j].generator;
        const XiElement quotient(g.lambda0(), Coords{g.comp(j - 1), g.comp(j)});
        const Rank2Parameter r = extract_rank2_parameter(quotient);
        out.push_back({r.p, r.alpha});
    }
    return out;
}

ThemeReport analyze_theme(const XiElement &phi)
{
    ThemeReport rep;
    rep.rank = rank_of(phi);
    rep.lambda0 = phi.lambda0();
    const auto stages = jh_filtration(phi);
    std::size_t eff = phi.order();
    for (const auto &s : stages)
        rep.lambdas.push_back(s.exponent);
    for (std::size_t j = 0; j + 1 < rep.rank; ++j) {
        const unsigned p = gap_between(rep.lambdas[j], rep.lambdas[j + 1]);
        const TruncSeries &h = stages[j + 1].link;
        const TruncSeries unit = h * inverse(TruncSeries::constant(h[0], h.order()));
        rep.gaps.push_back(p);
        rep.units.push_back(unit);
        rep.alphas.push_back(parameter_of(unit, p));
        eff = std::min(eff, unit.order());
    }
    const Annihilator ann = annihilator_of(phi, rep.rank);
    rep.annihilator = ann.op;
    eff = std::min(eff, ann.effective_order);

    // the peeled standard form must annihilate the normalised top generator
    const unsigned cap = static_cast<unsigned>(eff);
    std::vector<TruncSeries> units;
    for (const auto &u : rep.units)
        units.push_back(u.truncated(cap));
    const StandardForm sf = standard_form_compose(rep.lambdas, units, cap);
    if (!stages.back().generator.act(sf.product).is_zero())
        throw MathError("peeled presentation does not annihilate the generator");

    // principal parameters by the quotient route must match the peeled units
    const auto principal = principal_parameters(phi);
    for (std::size_t j = 0; j < principal.size(); ++j) {
        if (principal[j].p != rep.gaps[j] || principal[j].alpha != rep.alphas[j])
            throw MathError("principal parameter " + std::to_string(j + 1) +
                            " differs between the filtration and the rank-two quotient");
    }
    rep.effective_order = eff;
    rep.assumptions.push_back("primitive theme over base exponent lambda0 = " + rep.lambda0.to_string() +
                              " > 0");
    if (rep.rank >= 2)
        rep.assumptions.push_back("rank-two exponent in the classifying presentation read as lambda1");
    if (rep.lambda1().rational() <= 1)
        rep.assumptions.push_back("lambda1 = " + rep.lambda1().to_string() +
                                  " <= 1: outside the lambda1 > 1 hypothesis of the rank-two classification "
                                  "(reported, not rejected)");
    return rep;
}

bool same_emitted_data(const ThemeReport &x, const ThemeReport &y, std::string *diff)
{
    auto fail = [&](const std::string &what) {
        if (diff)
            *diff = what;
        return false;
    };
    if (x.rank != y.rank)
        return fail("rank " + std::to_string(x.rank) + " vs " + std::to_string(y.rank));
    if (x.lambdas != y.lambdas)
        return fail("exponents differ");
    if (x.gaps != y.gaps)
        return fail("gaps differ");
    if (x.alphas != y.alphas)
        return fail("principal parameters differ");
    const unsigned cap = std::min(x.annihilator.weight_cap(), y.annihilator.weight_cap());
    if (!(x.annihilator.truncated(cap) == y.annihilator.truncated(cap)))
        return fail("annihilators differ at weight " + std::to_string(cap));
    return true;
}

ThemeReport analyze_robust(const std::function<XiElement(std::size_t)> &build, std::size_t order,
                           std::size_t margin)
{
    ThemeReport r1 = analyze_theme(build(order));
    if (margin == 0)
        return r1;
    const ThemeReport r2 = analyze_theme(build(order + margin));
    std::string diff;
    if (!same_emitted_data(r1, r2, &diff))
        throw MathError("order insufficient: analysis at order " + std::to_string(order) + " and " +
                        std::to_string(order + margin) + " disagree (" + diff + ")");
    return r1;
}

bool isomorphism_test_rank2(const XiElement &x, const XiElement &y)
{
    const Rank2Parameter px = extract_rank2_parameter(x);
    const Rank2Parameter py = extract_rank2_parameter(y);
    return px.lambda1 == py.lambda1 && px.p == py.p && px.alpha == py.alpha;
}

} // namespace abtheme
