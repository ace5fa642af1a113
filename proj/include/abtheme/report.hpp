#ifndef ABTHEME_REPORT_HPP
#define ABTHEME_REPORT_HPP

#include <string>

#include <json.hpp>

#include "abtheme/changevar.hpp"
#include "abtheme/theme.hpp"

namespace abtheme
{

enum class Format { Text, Json };

/// Exact text: "p/q", integers bare, polynomials in parameter names.
std::string scalar_text(const Scalar &s);

nlohmann::json theme_json(const ThemeReport &r);
std::string theme_text(const std::string &name, const ThemeReport &r);

nlohmann::json annihilator_json(const ThemeReport &r);
std::string annihilator_text(const std::string &name, const ThemeReport &r);

/// True when theta_* of a rank-one theme is again E_lambda for the same lambda.
bool isomorphic_to_e_lambda(const PushforwardReport &p);

nlohmann::json pushforward_json(const PushforwardReport &p);
std::string pushforward_text(const std::string &name, const std::string &cov, const PushforwardReport &p);

} // namespace abtheme

#endif
