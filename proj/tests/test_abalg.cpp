#include <random>

#include <gtest/gtest.h>

#include "abtheme/abalg.hpp"
#include "oracle.hpp"

using namespace abtheme;

namespace
{

AbElement random_element(std::mt19937 &rng, unsigned cap)
{
    std::uniform_int_distribution<unsigned> deg(0, 3);
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
    AbElement u(cap);
    for (int i = 0; i < 4; ++i) {
        const unsigned p = deg(rng), q = deg(rng);
        if (p + q < cap)
            u.add_term(p, q, Scalar(num(rng), den(rng)));
    }
    return u;
}

oracle::Fn test_function(const Scalar &base)
{
    oracle::Fn f{base, {}};
    f.add(0, 0, Scalar(1));
    f.add(0, 1, Scalar(2));
    f.add(1, 2, Scalar(-1, 3));
    return f;
}

} // namespace

TEST(AbAlgebra, Commutator)
{
    const unsigned cap = 6;
    const AbElement a = AbElement::a(cap), b = AbElement::b(cap);
    EXPECT_EQ(a * b - b * a, b * b);
}

TEST(AbAlgebra, ProductMatchesFunctionModel)
{
    std::mt19937 rng(5);
    const unsigned cap = 9;
    const oracle::Fn f = test_function(Scalar(7, 3));
    for (int i = 0; i < 25; ++i) {
        const AbElement x = random_element(rng, cap), y = random_element(rng, cap);
        const oracle::Fn lhs = oracle::below(oracle::apply(x * y, f), cap);
        const oracle::Fn rhs = oracle::below(oracle::apply(x, oracle::apply(y, f)), cap);
        EXPECT_EQ(lhs, rhs) << x.to_string() << " * " << y.to_string();
    }
}

TEST(AbAlgebra, ClosedFormOfAnB)
{
    const unsigned cap = 14;
    const oracle::Fn f = test_function(Scalar(5, 2));
    for (unsigned n = 0; n <= 10; ++n) {
        const AbElement closed = anb_closed_form(n, cap);
        EXPECT_EQ(closed, normal_mul(power(AbElement::a(cap), n), AbElement::b(cap)));
        oracle::Fn g = oracle::integrate(f);
        for (unsigned k = 0; k < n; ++k)
            g = oracle::times_s(g);
        EXPECT_EQ(oracle::below(oracle::apply(closed, f), cap), oracle::below(g, cap)) << n;
    }
}

TEST(AbAlgebra, ThetaSendsAToTheta)
{
    const unsigned cap = 8;
    const ChangeOfVariable cov(TruncSeries({Scalar(0), Scalar(2), Scalar(0), Scalar(1)}, cap, 'a'));
    const AbElement img = theta_endomorphism(cov, AbElement::a(cap));
    EXPECT_EQ(img, AbElement::series_in_a(cov.theta(), cap));
    EXPECT_EQ(cov.r(), Scalar(2));
    EXPECT_EQ(cov.inverse().r(), Scalar(1, 2));
}

TEST(AbAlgebra, RightDivisionReconstructs)
{
    std::mt19937 rng(6);
    const unsigned cap = 10;
    for (int i = 0; i < 10; ++i) {
        const AbElement p = random_element(rng, cap);
        const Scalar nu(5, 2);
        const RightDivision d = right_divide_linear(p, nu);
        const AbElement linear = AbElement::a(cap) - AbElement::b(cap) * nu;
        EXPECT_EQ(d.quotient * linear + AbElement::series_in_b(d.remainder, cap), p);
    }
}

TEST(AbAlgebra, StandardFormIsMonic)
{
    const unsigned cap = 10;
    const TruncSeries s({Scalar(1), Scalar(0), Scalar(-15, 8)}, cap);
    const StandardForm sf = standard_form_compose({Scalar(5, 2), Scalar(7, 2)}, {s}, cap);
    EXPECT_EQ(sf.monic.a_degree(), 2u);
    EXPECT_EQ(sf.monic.a_coefficient(2), TruncSeries::constant(Scalar(1), sf.monic.a_coefficient(2).order()));
}
