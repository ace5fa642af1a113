#include <random>

#include <gtest/gtest.h>

#include "abtheme/series.hpp"

using namespace abtheme;

namespace
{

TruncSeries random_series(std::mt19937 &rng, std::size_t n, bool unit_constant)
{
    std::uniform_int_distribution<long> num(-6, 6), den(1, 5);
    TruncSeries s(n);
    for (std::size_t m = 0; m < n; ++m)
        s[m] = Scalar(num(rng), den(rng));
    if (unit_constant)
        s[0] = Scalar(1);
    return s;
}

TruncSeries b_times(const TruncSeries &s)
{
    return s.shifted_up(1).truncated(s.order());
}

} // namespace

TEST(Scalar, CanonicalForm)
{
    const Scalar x = Scalar::variable("x");
    const Scalar v = (x + Scalar(1)).pow(2) - x * x - Scalar(2) * x;
    EXPECT_TRUE(v.is_rational());
    EXPECT_EQ(v, Scalar(1));
    EXPECT_EQ(Scalar(6, 8).to_string(), "3/4");
    EXPECT_EQ(Scalar::parse_rational("-15/8"), Scalar(-15, 8));
}

TEST(Scalar, ExactDivision)
{
    const Scalar x = Scalar::variable("x");
    EXPECT_EQ((x * x - Scalar(1)) / (x - Scalar(1)), x + Scalar(1));
    EXPECT_THROW(x / (x + Scalar(1)), MathError);
    EXPECT_THROW(Scalar(1) / Scalar(0), MathError);
}

TEST(Scalar, RisingFactorial)
{
    EXPECT_EQ(rising_factorial(Scalar(3, 2), 2), Scalar(15, 4));
    EXPECT_EQ(rising_factorial(Scalar(7), 0), Scalar(1));
    EXPECT_EQ(binomial(6, 2), Rational(15));
}

TEST(Series, OrderIsPartOfTheValue)
{
    const TruncSeries a({Scalar(1), Scalar(2)}, 5), b({Scalar(1)}, 3);
    EXPECT_EQ((a + b).order(), 3u);
    EXPECT_THROW(b[3], MathError);
}

TEST(Series, InverseExpLogRoundTrips)
{
    std::mt19937 rng(1);
    for (int i = 0; i < 10; ++i) {
        const TruncSeries s = random_series(rng, 9, true);
        EXPECT_EQ(s * inverse(s), TruncSeries::constant(Scalar(1), 9));
        EXPECT_EQ(exp(log_unit(s)), s);
        const TruncSeries h = pow_unit(s, Scalar(1, 2));
        EXPECT_EQ(h * h, s);
    }
}

TEST(Series, CompositionalInverse)
{
    std::mt19937 rng(2);
    for (int i = 0; i < 10; ++i) {
        TruncSeries t = random_series(rng, 8, false);
        t[0] = Scalar(0);
        if (t[1].is_zero())
            t[1] = Scalar(3);
        const TruncSeries x = TruncSeries::monomial(1, Scalar(1), 8);
        EXPECT_EQ(compose(t, compositional_inverse(t)), x);
        EXPECT_EQ(compose(compositional_inverse(t), t), x);
    }
}

TEST(Series, OdesSubstitutedBack)
{
    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = 10;
        const TruncSeries S = random_series(rng, n, false), T = random_series(rng, n, false);
        const TruncSeries one = TruncSeries::constant(Scalar(1), n);
        const TruncSeries U = solve_ode_A(S);
        EXPECT_EQ(((one + b_times(S)) * U + b_times(derivative(U))).truncated(n - 1), (-S).truncated(n - 1));
        const TruncSeries G = solve_ode_Aprime(S);
        EXPECT_EQ((G + b_times(derivative(G))).truncated(n - 1), S.truncated(n - 1));
        const TruncSeries V = solve_ode_B(U, T);
        EXPECT_EQ((b_times(derivative(V)) + V).truncated(n - 1), (-(U * (one + b_times(T))) - T).truncated(n - 1));
    }
}
