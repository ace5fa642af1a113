#include <gtest/gtest.h>

#include "abtheme/battery.hpp"
#include "abtheme/dsl.hpp"
#include "abtheme/report.hpp"

using namespace abtheme;

namespace
{

std::string error_of(const std::string &text)
{
    try {
        dsl::Program p(dsl::parse(text));
    } catch (const InputError &e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Dsl, GeneratorExampleIsRankThreeFamily)
{
    const dsl::Program p(dsl::parse("generator e = s^(5/2)*L^2 + (1 + 2*b)*s^(1/2);"));
    const XiElement e = p.generator("e", 24);
    EXPECT_EQ(e.lambda0(), Scalar(3, 2));
    const Rank3FamilySpec fam{Scalar(7, 2), TruncSeries(24), TruncSeries(24), Scalar(1), Scalar(2)};
    EXPECT_EQ(e, rank3_generator(fam, 24));
}

TEST(Dsl, SubstitutionCov)
{
    const dsl::Program p(dsl::parse("param sigma;\ncov c = subst t*(1+sigma*t);"));
    const ChangeOfVariable c = p.cov("c", 6);
    const Scalar sigma = Scalar::variable("sigma");
    // theta = psi^-1 = t - sigma t^2 + 2 sigma^2 t^3 - ...
    EXPECT_EQ(c.theta()[1], Scalar(1));
    EXPECT_EQ(c.theta()[2], -sigma);
    EXPECT_EQ(c.theta()[3], Scalar(2) * sigma * sigma);
}

TEST(Dsl, IdentityCov)
{
    const dsl::Program p(dsl::parse("cov c = theta a;"));
    EXPECT_EQ(p.cov("c", 8).theta(), ChangeOfVariable::identity(8).theta());
}

TEST(Dsl, ImplicitProductAndLogDefault)
{
    const dsl::Document x = dsl::parse("generator g = (1 + b)s^(1/2) L;");
    const dsl::Document y = dsl::parse("generator g = (1 + b)*s^(1/2)*L^1;");
    EXPECT_EQ(x, y);
}

TEST(Dsl, PresentationForms)
{
    const dsl::Program p(dsl::parse("presentation P = lambda1 5/2 gaps [2, 0] params [-15/8, empty];\n"
                                    "presentation Q = lambdas [7/2, 9/2] units [1 + 1/2*b];"));
    const Presentation pp = p.presentation("P", 8);
    EXPECT_EQ(pp.lambdas, (std::vector<Scalar>{Scalar(5, 2), Scalar(7, 2), Scalar(5, 2)}));
    EXPECT_EQ(pp.units[0][2], Scalar(-15, 8));
    EXPECT_EQ(p.presentation("Q", 8).units[0][1], Scalar(1, 2));
}

TEST(Dsl, ErrorsCarryLocation)
{
    EXPECT_EQ(error_of("generator g = s^(1/2) *;"), "line 1, column 24: expected an expression, found ';'");
    EXPECT_EQ(error_of("param x;\nseries S = 1 + y;"), "line 2, column 16: undeclared name 'y'");
    EXPECT_NE(error_of("generator g = s^(1/2) + s^(1/3);").find("exponent class mismatch"), std::string::npos);
    EXPECT_NE(error_of("generator g = s^(-1);").find("must be positive"), std::string::npos);
    EXPECT_NE(error_of("generator g = s^(-3/2) + s^(1/2);").find("lambda0 = -1/2"), std::string::npos);
    EXPECT_NE(error_of("generator g = 1 + b;").find("without an s^(q) monomial"), std::string::npos);
    EXPECT_NE(error_of("cov c = theta 3*a^2;").find("linear coefficient"), std::string::npos);
    EXPECT_NE(error_of("analyze g;").find("undeclared generator"), std::string::npos);
    EXPECT_NE(error_of("generator g = s^(1/2);\nanalyze g;\nparam x;").find("line 3, column 1"), std::string::npos);
    EXPECT_NE(error_of("generator g = s^(1/2) $;").find("unexpected character"), std::string::npos);
    EXPECT_NE(error_of("presentation P = lambda1 5/2 gaps [2] params [empty];").find("nonzero parameter"),
              std::string::npos);
}

TEST(Dsl, CorpusRoundTrips)
{
    const auto corpus = parser_corpus();
    ASSERT_GE(corpus.size(), 30u);
    for (const auto &text : corpus) {
        const dsl::Document d = dsl::parse(text);
        EXPECT_EQ(dsl::parse(dsl::print(d)), d) << text;
        EXPECT_NO_THROW(dsl::Program{d}) << text;
    }
}

TEST(Dsl, PrinterKeepsTreeShape)
{
    for (const char *src : {"series S = 1 - (b - b^2);", "series S = (1 - b) - b^2;", "series S = -(1 + b)^2;",
                            "series S = 2/(3*4);", "series S = (2/3)/4;", "series S = (b^2)^3;"}) {
        const dsl::Document d = dsl::parse(src);
        EXPECT_EQ(dsl::parse(dsl::print(d)), d) << src << " -> " << dsl::print(d);
    }
}

TEST(Report, JsonSchema)
{
    const dsl::Program p(dsl::parse("generator phi = s^(5/2)*L + (1 + b)*s^(1/2);"));
    const ThemeReport r = analyze_theme(p.generator("phi", 24));
    const auto j = theme_json(r);
    EXPECT_EQ(j["rank"], 2);
    EXPECT_EQ(j["lambda1"], "5/2");
    EXPECT_EQ(j["p"], nlohmann::json::array({2}));
    EXPECT_EQ(j["principal_params"], nlohmann::json::array({"-15/8"}));
    EXPECT_TRUE(j.contains("effective_order"));
    EXPECT_TRUE(j["assumptions"].is_array());

    const ThemeReport q = analyze_theme(XiElement::basis(Scalar(3, 2), 2, 1, 20));
    EXPECT_TRUE(theme_json(q)["principal_params"][0].is_null());
}
