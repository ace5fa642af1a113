// abtheme: analysis of (a,b)-module themes and their pushforward under a change of variable.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "abtheme/battery.hpp"
#include "abtheme/changevar.hpp"
#include "abtheme/dsl.hpp"
#include "abtheme/report.hpp"
#include "abtheme/theme.hpp"

using namespace abtheme;

namespace
{

struct Options {
    std::string file;
    std::size_t order = 24;
    std::size_t margin = 6;
    std::string format = "text";
};

dsl::Program load(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return dsl::Program(dsl::parse(ss.str()));
}

std::function<XiElement(std::size_t)> builder(const dsl::Program &prog, const std::string &name)
{
    if (prog.has_generator(name))
        return [&prog, name](std::size_t n) { return prog.generator(name, n); };
    return [&prog, name](std::size_t n) {
        const Presentation p = prog.presentation(name, n + 8);
        const unsigned cap = static_cast<unsigned>(n + 8);
        Scalar hint = p.lambdas.front();
        for (const auto &l : p.lambdas)
            if (l.rational() < hint.rational())
                hint = l;
        return embed_relation(p.compose(cap).monic, hint, n);
    };
}

std::vector<std::string> targets(const dsl::Program &prog, const std::string &verb)
{
    std::vector<std::string> out;
    for (const auto &c : prog.commands())
        if (c.verb == verb)
            out.push_back(c.target);
    if (out.empty()) {
        out = prog.generator_names();
        for (const auto &p : prog.presentation_names())
            out.push_back(p);
    }
    if (out.empty())
        throw InputError("no generator or presentation declared");
    return out;
}

void emit(const Options &opt, const nlohmann::json &j, const std::string &text)
{
    if (opt.format == "json")
        std::cout << j.dump() << "\n";
    else
        std::cout << text;
}

int analyze(const Options &opt, bool annihilator_only)
{
    const dsl::Program prog = load(opt.file);
    for (const auto &name : targets(prog, annihilator_only ? "annihilator" : "analyze")) {
        const ThemeReport r = analyze_robust(builder(prog, name), opt.order, opt.margin);
        nlohmann::json j = annihilator_only ? annihilator_json(r) : theme_json(r);
        j["name"] = name;
        emit(opt, j, annihilator_only ? annihilator_text(name, r) : theme_text(name, r));
    }
    return 0;
}

int pushforward(const Options &opt)
{
    const dsl::Program prog = load(opt.file);
    std::vector<dsl::Command> jobs;
    for (const auto &c : prog.commands())
        if (c.verb == "pushforward")
            jobs.push_back(c);
    if (jobs.empty()) {
        const auto covs = prog.cov_names();
        if (covs.empty())
            throw InputError("pushforward needs a 'cov' declaration");
        for (const auto &t : targets(prog, "pushforward"))
            for (const auto &c : covs)
                jobs.push_back({"pushforward", t, c});
    }
    int status = 0;
    for (const auto &job : jobs) {
        const auto build = builder(prog, job.target);
        auto run = [&](std::size_t n) { return verify_parameter_transform(build(n), prog.cov(job.cov, n + 2)); };
        const PushforwardReport rep = run(opt.order);
        std::string drift;
        if (opt.margin > 0) {
            const PushforwardReport hi = run(opt.order + opt.margin);
            std::string diff;
            if (!same_emitted_data(rep.pushed, hi.pushed, &diff))
                drift = "orders " + std::to_string(opt.order) + " and " + std::to_string(opt.order + opt.margin) +
                        " disagree (" + diff + ")";
        }
        nlohmann::json j = pushforward_json(rep);
        j["name"] = job.target;
        j["cov"] = job.cov;
        std::string text = pushforward_text(job.target, job.cov, rep);
        if (!drift.empty()) {
            j["order_drift"] = drift;
            text += "  order drift        " + drift + "\n";
        }
        emit(opt, j, text);
        if (!rep.ok() || !drift.empty())
            status = 1;
    }
    return status;
}

int verify_suite(const Options &opt)
{
    if (!opt.file.empty())
        load(opt.file);
    BatteryOptions bo;
    bo.order = opt.order;
    bo.margin = opt.margin;
    const auto results = run_battery(bo);
    bool all = true;
    nlohmann::json arr = nlohmann::json::array();
    std::string text;
    for (const auto &r : results) {
        all = all && r.pass;
        arr.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
        text += result_line(r) + "\n";
    }
    emit(opt, arr, text);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"abtheme: themes of (a,b)-modules under a change of variable"};
    app.require_subcommand(1);
    Options opt;
    auto common = [&](CLI::App *sub, bool file_required) {
        auto *f = sub->add_option("file", opt.file, "input document");
        if (file_required)
            f->required();
        sub->add_option("--order", opt.order, "truncation order in b")->check(CLI::Range(4, 400));
        sub->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--check-order-margin", opt.margin, "re-run at order + M and compare");
    };
    auto *an = app.add_subcommand("analyze", "fundamental invariants and principal parameters");
    auto *pf = app.add_subcommand("pushforward", "theta_* of each generator, checked by two routes");
    auto *ann = app.add_subcommand("annihilator", "monic annihilator of each generator");
    auto *vs = app.add_subcommand("verify-suite", "run the acceptance battery");
    common(an, true);
    common(pf, true);
    common(ann, true);
    common(vs, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*an)
            return analyze(opt, false);
        if (*ann)
            return analyze(opt, true);
        if (*pf)
            return pushforward(opt);
        return verify_suite(opt);
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MathError &e) {
        std::cerr << "math failure: " << e.what() << "\n";
        return 1;
    }
}
