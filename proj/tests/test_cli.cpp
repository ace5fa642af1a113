#include <array>
#include <cstdio>
#include <memory>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include <json.hpp>

namespace
{

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun run(const std::string &args)
{
    const std::string cmd = std::string(ABTHEME_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), pipe))
        r.out += buf.data();
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string data(const std::string &name)
{
    return std::string(ABTHEME_DATA) + "/" + name;
}

} // namespace

TEST(Cli, AnalyzeJson)
{
    const CliRun r = run("analyze " + data("example_rank2.ab") + " --format json");
    ASSERT_EQ(r.status, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["rank"], 2);
    EXPECT_EQ(j["lambda1"], "5/2");
    EXPECT_EQ(j["p"], nlohmann::json::array({2}));
    EXPECT_EQ(j["principal_params"], nlohmann::json::array({"-15/8"}));
}

TEST(Cli, PushforwardOfELambda)
{
    const CliRun r = run("pushforward " + data("e_lambda.ab"));
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("isomorphic to E_lambda: true"), std::string::npos) << r.out;
}

TEST(Cli, PushforwardCounterexample)
{
    const CliRun r = run("pushforward " + data("counterexample.ab") + " --format json");
    ASSERT_EQ(r.status, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["pushed"]["principal_params"], j["original"]["principal_params"]);
    EXPECT_TRUE(j["routes_agree"].get<bool>());
}

TEST(Cli, Annihilator)
{
    const CliRun r = run("annihilator " + data("example_rank2.ab"));
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("a^2"), std::string::npos) << r.out;
}

TEST(Cli, InputErrorsExitTwo)
{
    EXPECT_EQ(run("analyze " + data("bad_syntax.ab")).status, 2);
    EXPECT_EQ(run("analyze " + data("bad_exponents.ab")).status, 2);
    EXPECT_EQ(run("analyze " + data("missing.ab")).status, 2);
    EXPECT_EQ(run("analyze").status, 2);
    EXPECT_EQ(run("analyze " + data("example_rank2.ab") + " --format yaml").status, 2);
}

TEST(Cli, InsufficientOrderExitsOne)
{
    EXPECT_EQ(run("analyze " + data("rank3.ab") + " --order 6").status, 1);
}
