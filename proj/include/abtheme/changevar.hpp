#ifndef ABTHEME_CHANGEVAR_HPP
#define ABTHEME_CHANGEVAR_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abtheme/abalg.hpp"
#include "abtheme/series.hpp"
#include "abtheme/theme.hpp"
#include "abtheme/ximodel.hpp"

namespace abtheme
{

/// The a- and b-actions on a coordinate space.
struct LinearAction {
    std::function<Coords(const Coords &)> a, b;
};

LinearAction action_of(const AbModule &m);
LinearAction action_of_xi(const Scalar &lambda0, std::size_t log_bound);

/// T(a) x = sum_j T_j a^j x, with T read as a polynomial jet.
Coords apply_series_in_a(const TruncSeries &t, const LinearAction &act, const Coords &x);
/// alpha = theta(a) and beta = b theta'(a).
Coords apply_alpha(const ChangeOfVariable &cov, const LinearAction &act, const Coords &x);
Coords apply_beta(const ChangeOfVariable &cov, const LinearAction &act, const Coords &x);

struct PushedRelation {
    AbElement relation; ///< monic in the new variables
    std::size_t effective_order = 0;
};

/// Annihilator of the generator x inside theta_*(module): alpha^k x = sum c_j(beta) alpha^j x.
PushedRelation pushforward_generator(const LinearAction &act, const Coords &x, std::size_t k,
                                     const ChangeOfVariable &cov);
/// Monic annihilator of the class of 1 in theta_*(A / A P).
PushedRelation pushforward_presentation(const AbElement &monic_relation, const ChangeOfVariable &cov);
PushedRelation pushforward_annihilator(const XiElement &phi, const ChangeOfVariable &cov);

/// Matrix of alpha in the C[[beta]]-basis e_1..e_k of theta_*(E), E simple pole.
AbModule pushforward_simple_pole(const AbModule &m, const ChangeOfVariable &cov);

/// theta_* for theta = psi^-1, realised by the substitution s = psi(t) in the
/// function model. The global factor r^{lambda0 - 1} and the constant log r are
/// dropped; both are automorphisms of Xi commuting with a and b.
XiElement pushforward_xi_substitution(const XiElement &phi, const TruncSeries &psi);

/// chi_n with b^n e_lambda = beta^n chi_n(beta) e_lambda.
TruncSeries rebase_b_powers(const Scalar &lambda, const ChangeOfVariable &cov, std::size_t n, std::size_t order);

struct Eigenvector {
    TruncSeries r_theta; ///< alpha e = lambda beta e + beta^2 R(beta) e
    TruncSeries s_theta; ///< exp(-primitive(R))
    bool verified = false;
};
/// S_theta with alpha (S_theta(beta) e) = lambda beta (S_theta(beta) e) in E_lambda.
Eigenvector eigenvector_after_cov(const Scalar &lambda, const ChangeOfVariable &cov, std::size_t order);

/// S(b) = sum_l S_l(beta) alpha^l; S_l is the a^l coefficient of Theta_eta(S(b)).
std::vector<TruncSeries> rebase_series(const TruncSeries &s, const ChangeOfVariable &cov, unsigned cap);

struct ThematicBasis {
    Matrix transition; ///< column j: alpha^j phi mod beta in the basis a^i phi
    bool triangular = false;
    bool unit_diagonal = false;
};
ThematicBasis verify_thematic_basis(const XiElement &phi, std::size_t k, const ChangeOfVariable &cov);

/// beta^-1 alpha on offset coordinates of a regular module.
LatticeOperator beta_inverse_alpha(const AbModule &m, const ChangeOfVariable &cov);

struct PushforwardReport {
    ThemeReport original;
    ThemeReport pushed;              ///< through the pushed relation, re-embedded in Xi
    ThemeReport pushed_substitution; ///< through the substitution s = eta(t)
    AbElement relation;              ///< pushed monic annihilator
    Scalar r;
    std::vector<std::optional<Scalar>> expected; ///< r^{-p_j} alpha_j, the law forced by a -> theta(a), b -> b theta'(a)
    std::vector<std::optional<Scalar>> stated;   ///< r^{p_j} alpha_j
    std::vector<bool> matches;                   ///< pushed alpha_j == expected_j
    bool invariants_equal = false;
    bool routes_agree = false;
    std::string route_diff;

    bool ok() const;
};

PushforwardReport verify_parameter_transform(const XiElement &phi, const ChangeOfVariable &cov);

/// True when every coefficient of s is a rational constant.
bool is_constant(const Scalar &s);

} // namespace abtheme

#endif
