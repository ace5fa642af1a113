#include "abtheme/report.hpp"

#include <sstream>

namespace abtheme
{

using nlohmann::json;

std::string scalar_text(const Scalar &s)
{
    return s.to_string();
}

namespace
{

std::string short_display(const AbElement &x)
{
    const unsigned cap = x.a_degree() + 6;
    if (cap >= x.weight_cap())
        return x.to_display_form();
    return x.truncated(cap).to_display_form() + " + (terms of weight >= " + std::to_string(cap) + ")";
}

json scalars(const std::vector<Scalar> &xs)
{
    json out = json::array();
    for (const auto &x : xs)
        out.push_back(scalar_text(x));
    return out;
}

json params(const std::vector<std::optional<Scalar>> &xs)
{
    json out = json::array();
    for (const auto &x : xs)
        out.push_back(x ? json(scalar_text(*x)) : json(nullptr));
    return out;
}

std::string param_list(const std::vector<std::optional<Scalar>> &xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? ", " : "") + (xs[i] ? scalar_text(*xs[i]) : std::string("empty"));
    return "[" + out + "]";
}

template <class T> std::string list(const std::vector<T> &xs)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < xs.size(); ++i)
        os << (i ? ", " : "") << xs[i];
    os << "]";
    return os.str();
}

} // namespace

json theme_json(const ThemeReport &r)
{
    json j;
    j["rank"] = r.rank;
    j["lambda0"] = scalar_text(r.lambda0);
    j["lambda1"] = scalar_text(r.lambda1());
    j["lambdas"] = scalars(r.lambdas);
    j["p"] = r.gaps;
    j["principal_params"] = params(r.alphas);
    j["annihilator"] = r.annihilator.to_display_form();
    j["effective_order"] = r.effective_order;
    j["assumptions"] = r.assumptions;
    return j;
}

std::string theme_text(const std::string &name, const ThemeReport &r)
{
    std::ostringstream os;
    os << name << ": rank " << r.rank << " theme\n"
       << "  lambda0          " << scalar_text(r.lambda0) << "\n"
       << "  lambda1          " << scalar_text(r.lambda1()) << "\n"
       << "  lambdas          " << list(r.lambdas) << "\n"
       << "  p                " << list(r.gaps) << "\n"
       << "  principal params " << param_list(r.alphas) << "\n"
       << "  annihilator      " << short_display(r.annihilator) << "\n"
       << "  effective order  " << r.effective_order << "\n";
    for (const auto &a : r.assumptions)
        os << "  assumption       " << a << "\n";
    return os.str();
}

json annihilator_json(const ThemeReport &r)
{
    return {{"rank", r.rank},
            {"lambda0", scalar_text(r.lambda0)},
            {"annihilator", r.annihilator.to_display_form()},
            {"normal_form", r.annihilator.to_string()},
            {"effective_order", r.effective_order}};
}

std::string annihilator_text(const std::string &name, const ThemeReport &r)
{
    return name + ": " + r.annihilator.to_display_form() + "\n  normal form     " + r.annihilator.to_string() +
           "\n  effective order " + std::to_string(r.effective_order) + "\n";
}

bool isomorphic_to_e_lambda(const PushforwardReport &p)
{
    return p.original.rank == 1 && p.pushed.rank == 1 && p.pushed.lambda1() == p.original.lambda1();
}

json pushforward_json(const PushforwardReport &p)
{
    json j;
    j["original"] = theme_json(p.original);
    j["pushed"] = theme_json(p.pushed);
    j["pushed_by_substitution"] = theme_json(p.pushed_substitution);
    j["relation"] = p.relation.to_display_form();
    j["r"] = scalar_text(p.r);
    j["expected_params"] = params(p.expected);
    j["params_times_r_to_p"] = params(p.stated);
    j["invariants_equal"] = p.invariants_equal;
    j["routes_agree"] = p.routes_agree;
    if (!p.routes_agree)
        j["route_diff"] = p.route_diff;
    bool all = true;
    for (bool m : p.matches)
        all = all && m;
    j["params_match_expected"] = all;
    if (p.original.rank == 1)
        j["isomorphic_to_E_lambda"] = isomorphic_to_e_lambda(p);
    j["ok"] = p.ok();
    return j;
}

std::string pushforward_text(const std::string &name, const std::string &cov, const PushforwardReport &p)
{
    std::ostringstream os;
    os << "pushforward of " << name << " by " << cov << " (r = " << scalar_text(p.r) << ")\n"
       << "  relation           " << short_display(p.relation) << "\n"
       << "  lambda1            " << scalar_text(p.original.lambda1()) << " -> " << scalar_text(p.pushed.lambda1())
       << "\n"
       << "  p                  " << list(p.original.gaps) << " -> " << list(p.pushed.gaps) << "\n"
       << "  principal params   " << param_list(p.original.alphas) << " -> " << param_list(p.pushed.alphas) << "\n"
       << "  r^-p * params      " << param_list(p.expected) << "\n"
       << "  r^p * params       " << param_list(p.stated) << "\n"
       << "  invariants equal   " << (p.invariants_equal ? "true" : "false") << "\n"
       << "  routes agree       " << (p.routes_agree ? "true" : "false") << "\n";
    if (!p.routes_agree)
        os << "  route diff         " << p.route_diff << "\n";
    if (p.original.rank == 1)
        os << "  isomorphic to E_lambda: " << (isomorphic_to_e_lambda(p) ? "true" : "false") << "\n";
    return os.str();
}

} // namespace abtheme
