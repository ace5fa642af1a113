#include <random>

#include <gtest/gtest.h>

#include "abtheme/changevar.hpp"
#include "abtheme/report.hpp"

using namespace abtheme;

namespace
{

XiElement rank2(const Scalar &l1, unsigned p, const Scalar &z, std::size_t n)
{
    const Presentation pr = Presentation::from_parameters(l1, {p}, {z}, n + 8);
    return embed_relation(pr.compose(static_cast<unsigned>(n + 8)).monic, l1, n);
}

ChangeOfVariable theta_of(std::initializer_list<Scalar> c, std::size_t n)
{
    return ChangeOfVariable(TruncSeries(c, n, 'a'));
}

} // namespace

TEST(ChangeOfVariable, ELambdaIsInvariant)
{
    const XiElement e = XiElement::basis(Scalar(3, 2), 1, 0, 20);
    const PushforwardReport rep = verify_parameter_transform(e, theta_of({Scalar(0), Scalar(2), Scalar(0), Scalar(1)}, 22));
    EXPECT_TRUE(isomorphic_to_e_lambda(rep));
    EXPECT_TRUE(rep.ok());
}

TEST(ChangeOfVariable, HomothetyRescalesParameter)
{
    // theta = r a: new (a, b) = (r a, r b), so (1 + z b^p)^-1 becomes (1 + z r^-p (rb)^p)^-1
    const std::size_t n = 28;
    for (const Scalar r : {Scalar(2), Scalar(-1, 3), Scalar(5, 2)}) {
        for (unsigned p : {1u, 2u, 3u}) {
            const Scalar z(-7, 4);
            PushforwardReport rep;
            try {
                rep = verify_parameter_transform(rank2(Scalar(5, 2), p, z, n), theta_of({Scalar(0), r}, n + 2));
            } catch (const std::exception &e) {
                FAIL() << r << " p=" << p << ": " << e.what();
            }
            ASSERT_EQ(rep.pushed.alphas.size(), 1u);
            EXPECT_EQ(rep.pushed.alphas[0], std::optional<Scalar>(z / r.pow(p))) << r << " p=" << p;
            EXPECT_TRUE(rep.routes_agree) << rep.route_diff;
        }
    }
}

TEST(ChangeOfVariable, RoutesAgreeOnRandomTheta)
{
    std::mt19937 rng(12);
    std::uniform_int_distribution<long> num(-3, 3), den(1, 2);
    const std::size_t n = 20;
    const XiElement phi = rank2(Scalar(5, 2), 2, Scalar(-15, 8), n);
    for (int i = 0; i < 4; ++i) {
        long r = num(rng);
        if (r == 0)
            r = 1;
        const auto cov = theta_of({Scalar(0), Scalar(r), Scalar(num(rng), den(rng)), Scalar(num(rng), den(rng))}, n + 2);
        const PushforwardReport rep = verify_parameter_transform(phi, cov);
        EXPECT_TRUE(rep.ok()) << rep.route_diff;
    }
}

TEST(ChangeOfVariable, ChiForHomothety)
{
    // b^n e = beta^n chi_n e with beta = r b
    const Scalar r(3);
    const TruncSeries chi = rebase_b_powers(Scalar(5, 2), theta_of({Scalar(0), r}, 12), 3, 12);
    EXPECT_EQ(chi[0], Scalar(1) / r.pow(3));
    for (std::size_t m = 1; m < chi.order(); ++m)
        EXPECT_TRUE(chi[m].is_zero());
}

TEST(ChangeOfVariable, EigenvectorVerified)
{
    const auto cov = theta_of({Scalar(0), Scalar(1), Scalar(2), Scalar(-1)}, 16);
    const Eigenvector ev = eigenvector_after_cov(Scalar(7, 3), cov, 14);
    EXPECT_TRUE(ev.verified);
    EXPECT_EQ(ev.s_theta[0], Scalar(1));
}

TEST(ChangeOfVariable, RebasedSeriesReconstruct)
{
    const auto cov = theta_of({Scalar(0), Scalar(2), Scalar(1)}, 10);
    const TruncSeries s({Scalar(1), Scalar(1), Scalar(-1, 2)}, 10);
    EXPECT_NO_THROW(rebase_series(s, cov, 8));
}

TEST(ChangeOfVariable, CounterexampleShiftsU)
{
    const std::size_t n = 24;
    const Rank3FamilySpec sp{Scalar(7, 2), TruncSeries(n), TruncSeries(n), Scalar(1), Scalar(0)};
    const XiElement e = rank3_generator(sp, n);
    const Scalar u = rank3_normal_form(e).u;
    for (const Scalar sigma : {Scalar(1), Scalar(-2, 3), Scalar(3)}) {
        const TruncSeries psi({Scalar(0), Scalar(1), sigma}, n + 2, 't');
        const Rank3NormalForm nf = rank3_normal_form(pushforward_xi_substitution(e, psi));
        EXPECT_EQ(nf.u, u + sigma);
        EXPECT_EQ(nf.alpha, Scalar(15, 16));
    }
}

TEST(ChangeOfVariable, SubstitutionExpansionOfCounterexample)
{
    // t^{l-1}(1 + sigma t)^{l-1} Log(1 + sigma t) starts with sigma t^l
    const std::size_t n = 24;
    const Rank3FamilySpec sp{Scalar(7, 2), TruncSeries(n), TruncSeries(n), Scalar(1), Scalar(0)};
    const TruncSeries psi({Scalar(0), Scalar(1), Scalar(2)}, n + 2, 't');
    const auto f = to_function_coords(pushforward_xi_substitution(rank3_generator(sp, n), psi));
    EXPECT_EQ(f[1][3], Scalar(2));
    EXPECT_EQ(f[2][2], Scalar(1));
    EXPECT_EQ(f[2][3], Scalar(2) * Scalar(5, 2));
}

TEST(ChangeOfVariable, SimplePolePushforward)
{
    const std::size_t n = 8;
    const AbModule m = e_lambda_module(Scalar(5, 2), n);
    const AbModule pm = pushforward_simple_pole(m, theta_of({Scalar(0), Scalar(3), Scalar(1)}, n + 2));
    EXPECT_TRUE(pm.is_simple_pole());
    EXPECT_EQ(pm.residue_matrix(), m.residue_matrix());
}
