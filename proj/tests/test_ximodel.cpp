#include <random>

#include <gtest/gtest.h>

#include "abtheme/ximodel.hpp"
#include "oracle.hpp"

using namespace abtheme;

namespace
{

oracle::Fn to_fn(const XiElement &x, unsigned below)
{
    const auto f = to_function_coords(x);
    oracle::Fn r{x.lambda0(), {}};
    for (unsigned j = 0; j < f.size(); ++j)
        for (unsigned n = 0; n < f[j].size() && n < below; ++n)
            if (!f[j][n].is_zero())
                r.add(n, j, f[j][n]);
    return r;
}

XiElement random_xi(std::mt19937 &rng, const Scalar &lambda0, std::size_t logs, std::size_t order)
{
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    Coords c(logs, TruncSeries(order));
    for (auto &s : c)
        for (std::size_t m = 0; m < order; ++m)
            s[m] = Scalar(num(rng), den(rng));
    return XiElement(lambda0, c);
}

} // namespace

TEST(XiModel, MonomialsAreFunctionMonomials)
{
    const Scalar l0(3, 2);
    for (unsigned m = 0; m < 4; ++m)
        for (unsigned i = 0; i < 3; ++i) {
            oracle::Fn want{l0, {}};
            want.add(m, i, Scalar(1));
            EXPECT_EQ(to_fn(monomial_to_abstract(m, i, l0, 3, 10), 10), want);
        }
}

TEST(XiModel, BPowerOfBaseMonomial)
{
    // a^p x0 = (l0)_p b^p x0
    const Scalar l0(3, 2);
    for (unsigned p = 0; p < 5; ++p) {
        const XiElement lhs = monomial_to_abstract(p, 0, l0, 1, 12);
        Scalar poch(1);
        for (unsigned i = 0; i < p; ++i)
            poch *= l0 + Scalar(static_cast<long>(i));
        const XiElement rhs = poch * XiElement::basis(l0, 1, 0, 12).act_series(TruncSeries::monomial(p, Scalar(1), 12));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(XiModel, ActionsMatchFunctionModel)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 10; ++i) {
        const Scalar l0(static_cast<long>(1 + i % 4), 3);
        const XiElement x = random_xi(rng, l0, 3, 8);
        EXPECT_EQ(to_fn(x.act_b(), 8), oracle::below(oracle::integrate(to_fn(x, 8)), 8));
        EXPECT_EQ(to_fn(x.act_a(), 8), oracle::below(oracle::times_s(to_fn(x, 8)), 8));
    }
}

TEST(XiModel, FunctionCoordinatesRoundTrip)
{
    std::mt19937 rng(8);
    const XiElement x = random_xi(rng, Scalar(5, 2), 2, 9);
    EXPECT_EQ(from_function_coords(to_function_coords(x), x.lambda0(), x.order()), x);
}

TEST(XiModel, SpanSolve)
{
    const Scalar l0(5, 2);
    const XiElement e = XiElement::basis(l0, 2, 1, 10);
    const XiElement target = Scalar(2) * e.act_a() + Scalar(3) * e.act_b();
    const SpanSolution sol = express_in_span(target, {e, e.act_a()});
    ASSERT_GE(sol.effective_order, 2u);
    EXPECT_EQ(sol.coeffs[0][0], Scalar(0));
    EXPECT_EQ(sol.coeffs[0][1], Scalar(3));
    EXPECT_EQ(sol.coeffs[1][0], Scalar(2));
    EXPECT_EQ(sol.coeffs[1][1], Scalar(0));
}

TEST(XiModel, XiModuleHasSimplePole)
{
    const AbModule m = xi_module(Scalar(5, 2), 2, 8);
    EXPECT_EQ(m.rank(), 2u);
    EXPECT_TRUE(m.is_simple_pole());
}
