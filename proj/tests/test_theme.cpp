#include <random>

#include <gtest/gtest.h>

#include "abtheme/theme.hpp"

using namespace abtheme;

namespace
{

/// s^{l+p-2} Log s + S(b) s^{l-2}
XiElement example(const Scalar &l, unsigned p, const TruncSeries &S, std::size_t order)
{
    const Scalar l0 = l - Scalar(1);
    return monomial_to_abstract(p, 1, l0, 2, order) +
           monomial_to_abstract(0, 0, l0, 2, order).act_series(S.truncated(order));
}

/// Gamma(l + p - 1) / Gamma(l - 1) by the functional equation.
Scalar gamma_ratio(const Scalar &l, unsigned p)
{
    Scalar r(1);
    Scalar x = l - Scalar(1);
    for (unsigned i = 0; i < p; ++i, x += Scalar(1))
        r *= x;
    return r;
}

} // namespace

TEST(Theme, RankOfBasicElements)
{
    EXPECT_EQ(rank_of(XiElement::basis(Scalar(5, 2), 1, 0, 12)), 1u);
    EXPECT_EQ(rank_of(example(Scalar(5, 2), 2, TruncSeries({Scalar(1), Scalar(1)}, 16), 16)), 2u);
}

TEST(Theme, RankOneIsELambda)
{
    const ThemeReport r = analyze_theme(XiElement::basis(Scalar(7, 3), 1, 0, 16));
    EXPECT_EQ(r.rank, 1u);
    EXPECT_EQ(r.lambda1(), Scalar(7, 3));
    EXPECT_TRUE(r.gaps.empty());
}

TEST(Theme, ExampleParameterMatchesClosedFormula)
{
    struct Case {
        Scalar l;
        unsigned p;
        TruncSeries S;
    };
    const std::size_t n = 24;
    const std::vector<Case> cases = {
        {Scalar(5, 2), 2, TruncSeries({Scalar(1), Scalar(1)}, n)},
        {Scalar(7, 3), 3, TruncSeries({Scalar(2), Scalar(-1)}, n)},
        {Scalar(9, 4), 1, TruncSeries({Scalar(1), Scalar(0), Scalar(1)}, n)},
        {Scalar(11, 2), 2, TruncSeries({Scalar(-3), Scalar(1, 2)}, n)},
    };
    for (const auto &c : cases) {
        const ThemeReport r = analyze_theme(example(c.l, c.p, c.S, n));
        ASSERT_EQ(r.rank, 2u);
        EXPECT_EQ(r.lambdas, (std::vector<Scalar>{c.l, c.l + Scalar(static_cast<long>(c.p)) - Scalar(1)}));
        EXPECT_EQ(r.gaps, std::vector<unsigned>{c.p});
        const Scalar alpha = -gamma_ratio(c.l, c.p) / (Scalar(static_cast<long>(c.p)) * c.S[0]);
        ASSERT_TRUE(r.alphas[0].has_value());
        EXPECT_EQ(*r.alphas[0], alpha) << c.l << " p=" << c.p;
    }
}

TEST(Theme, LogGeneratorHasEmptyParameter)
{
    const ThemeReport r = analyze_theme(XiElement::basis(Scalar(3, 2), 2, 1, 20));
    EXPECT_EQ(r.rank, 2u);
    EXPECT_EQ(r.gaps, std::vector<unsigned>{0});
    EXPECT_FALSE(r.alphas[0].has_value());
}

TEST(Theme, PresentationRoundTrip)
{
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    std::uniform_int_distribution<unsigned> gap(0, 3), rank(2, 3);
    const std::size_t n = 24;
    int checked = 0;
    for (int i = 0; i < 8; ++i) {
        const unsigned k = rank(rng);
        std::vector<unsigned> gaps;
        std::vector<std::optional<Scalar>> alphas;
        for (unsigned j = 0; j + 1 < k; ++j) {
            const unsigned g = gap(rng);
            gaps.push_back(g);
            long a = num(rng);
            if (a == 0)
                a = 1;
            alphas.push_back(g == 0 ? std::nullopt : std::optional<Scalar>(Scalar(a, den(rng))));
        }
        const Scalar l1(static_cast<long>(5 + 2 * (i % 3)), 2);
        const Presentation p = Presentation::from_parameters(l1, gaps, alphas, n + 8);
        Scalar hint = l1;
        for (const auto &l : p.lambdas)
            if (l.rational() < hint.rational())
                hint = l;
        const XiElement phi = embed_relation(p.compose(static_cast<unsigned>(n + 8)).monic, hint, n);
        const ThemeReport r = analyze_theme(phi);
        EXPECT_EQ(r.lambdas, p.lambdas) << i;
        EXPECT_EQ(r.gaps, gaps) << i;
        EXPECT_EQ(r.alphas, alphas) << i;
        ++checked;
    }
    EXPECT_EQ(checked, 8);
}

TEST(Theme, CompanionOfThemeIsMonogenic)
{
    const Presentation p = Presentation::from_parameters(Scalar(5, 2), {2}, {Scalar(-15, 8)}, 20);
    const PresentedModule pm = theme_from_presentation(p, 16);
    const Monogenicity m = is_monogenic(pm.module);
    EXPECT_TRUE(m.monogenic);
    EXPECT_EQ(m.quotient_dim, 1u);
    EXPECT_EQ(m.witness, std::optional<std::size_t>(0));
    EXPECT_FALSE(is_monogenic(direct_sum(e_lambda_module(Scalar(1), 8), e_lambda_module(Scalar(2), 8))).monogenic);
}

TEST(Theme, BernsteinOfSimplePoleIsResidueDeterminant)
{
    // a = b R on a constant basis: E# = E and the polynomial is det(x + R)
    const std::size_t n = 8;
    const Scalar r00(3, 2), r01(1), r10(2), r11(-1, 3);
    auto entry = [&](const Scalar &c) { return TruncSeries::monomial(1, c, n); };
    const AbModule m({{entry(r00), entry(r01)}, {entry(r10), entry(r11)}});
    const auto poly = bernstein_polynomial(m);
    ASSERT_EQ(poly.size(), 3u);
    EXPECT_EQ(poly[2], Scalar(1));
    EXPECT_EQ(poly[1], r00 + r11);
    EXPECT_EQ(poly[0], r00 * r11 - r01 * r10);
    EXPECT_EQ(polynomial_to_string(bernstein_polynomial(e_lambda_module(Scalar(5, 2), n))), "x + 5/2");
}

TEST(Theme, SaturationGrowsForThemes)
{
    const Presentation p = Presentation::from_parameters(Scalar(5, 2), {2}, {Scalar(-15, 8)}, 20);
    const Saturation s = saturate(theme_from_presentation(p, 16).module);
    EXPECT_GT(s.index, 0u);
    const Saturation e = saturate(e_lambda_module(Scalar(5, 2), 10));
    EXPECT_EQ(e.index, 0u);
}

TEST(Theme, RankThreeClosedForms)
{
    const std::size_t n = 24;
    std::mt19937 rng(10);
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
    for (int i = 0; i < 4; ++i) {
        Rank3FamilySpec sp{Scalar(7, 2), TruncSeries(n), TruncSeries(n), Scalar(1 + i), Scalar(num(rng), den(rng))};
        for (std::size_t m = 1; m < 4; ++m) {
            sp.xi[m] = Scalar(num(rng), den(rng));
            sp.zeta[m] = Scalar(num(rng), den(rng));
        }
        const Rank3Analysis an = rank3_family_analysis(sp, n);
        EXPECT_TRUE(an.agrees) << i;
        // oracle: 4 eta0 u = eta1 + 2 eta0 xi'(0), 4 eta0 alpha = (l - 1)(l - 2)
        EXPECT_EQ(Scalar(4) * sp.eta0 * an.pipeline.u, sp.eta1 + Scalar(2) * sp.eta0 * sp.xi[1]);
        EXPECT_EQ(Scalar(4) * sp.eta0 * an.pipeline.alpha, Scalar(5, 2) * Scalar(3, 2));
        EXPECT_EQ(an.w, Scalar(1) / (Scalar(7, 2) * Scalar(9, 2)));
    }
}

TEST(Theme, RobustAnalysisDetectsShortOrder)
{
    const Rank3FamilySpec sp{Scalar(7, 2), TruncSeries(30), TruncSeries(30), Scalar(1), Scalar(2)};
    EXPECT_THROW(analyze_robust([&](std::size_t n) { return rank3_generator(sp, n); }, 6, 6), MathError);
    EXPECT_NO_THROW(analyze_robust([&](std::size_t n) { return rank3_generator(sp, n); }, 24, 6));
}
