#ifndef ABTHEME_THEME_HPP
#define ABTHEME_THEME_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abtheme/abalg.hpp"
#include "abtheme/linalg.hpp"
#include "abtheme/series.hpp"
#include "abtheme/ximodel.hpp"

namespace abtheme
{

/// Analysis result of a [lambda]-primitive theme.
struct ThemeReport {
    std::size_t rank = 0;
    Scalar lambda0;
    std::vector<Scalar> lambdas;                ///< lambda_1 .. lambda_k
    std::vector<unsigned> gaps;                 ///< p_1 .. p_{k-1}
    std::vector<std::optional<Scalar>> alphas;  ///< principal parameters, nullopt for the empty parameter
    AbElement annihilator;                      ///< monic, a-degree k
    std::vector<TruncSeries> units;             ///< S_1 .. S_{k-1} of the peeled presentation
    std::size_t effective_order = 0;
    std::vector<std::string> assumptions;

    const Scalar &lambda1() const { return lambdas.front(); }
};

/// Equality of every invariant a report emits (rank, exponents, gaps,
/// parameters, and the annihilator on the common truncation).
bool same_emitted_data(const ThemeReport &x, const ThemeReport &y, std::string *diff = nullptr);

std::size_t rank_of(const XiElement &phi);

struct Annihilator {
    AbElement op; ///< a^k + sum_{j<k} p_j(b) a^j, weight cap = effective order
    std::size_t effective_order = 0;
};

/// Monic annihilator of degree k; checked by applying it back to phi.
Annihilator annihilator_of(const XiElement &phi, std::size_t k);

struct FiltrationStage {
    XiElement generator; ///< generator of F_j with top component exactly b^{m_j}
    Scalar exponent;     ///< lambda_j = lambda0 + m_j
    /// h_{j-1}: (a - lambda_j b) generator_j = h_{j-1} generator_{j-1}; empty for j = 1
    TruncSeries link;
};

/// Stages j = 1..k (index 0 is F_1). Each normal submodule F_{j-1} is generated
/// by (a - lambda_j b) applied to the normalised generator of F_j.
std::vector<FiltrationStage> jh_filtration(const XiElement &phi);

struct FundamentalInvariants {
    Scalar lambda1;
    std::vector<unsigned> gaps;
};
FundamentalInvariants fundamental_invariants(const XiElement &phi);

struct Rank2Parameter {
    Scalar lambda1, lambda2;
    unsigned p = 0;
    std::optional<Scalar> alpha;
    TruncSeries unit;     ///< S with monic annihilator S (a - l1 b) S^-1 (a - l2 b)
    AbElement annihilator;
    std::size_t effective_order = 0;
};

/// Parameter of a rank-two theme by division of its annihilator.
Rank2Parameter extract_rank2_parameter(const XiElement &psi);

struct PrincipalParameter {
    unsigned p = 0;
    std::optional<Scalar> alpha;
};
std::vector<PrincipalParameter> principal_parameters(const XiElement &phi);

/// Full analysis: filtration, annihilator, cross-checked principal parameters.
ThemeReport analyze_theme(const XiElement &phi);

/// Runs `analyze_theme(build(N))` at N and N + margin and requires identical emitted data.
ThemeReport analyze_robust(const std::function<XiElement(std::size_t)> &build, std::size_t order,
                           std::size_t margin);

// ---- rank three family -----------------------------------------------------

struct Rank3FamilySpec {
    Scalar lambda;
    TruncSeries xi, zeta;
    Scalar eta0, eta1;
};

/// s^{l-1} (Log s)^2/2 + xi(b) s^{l-1} Log s + (eta0 + eta1 b) s^{l-3} + zeta(b) s^{l-1}, over base l - 2.
XiElement rank3_generator(const Rank3FamilySpec &spec, std::size_t order);

/// Family coordinates of phi up to a unit: divides by the unit part of the top
/// component and peels a^2 x2, xi a^2 x1, then reads eta0 + eta1 b + zeta b^2 off x0.
Rank3FamilySpec rank3_family_coordinates(const XiElement &phi);

/// (u, alpha) of (a - l1 b)(1 + u b + alpha b^2)^-1 (a - l2 b)(a - l3 b) for a
/// rank-three theme with gaps (2, 0).
struct Rank3NormalForm {
    Scalar lambda1;
    Scalar u, alpha;
    TruncSeries unit; ///< S_1 after normalising S_2 to 1
    std::size_t effective_order = 0;
};
Rank3NormalForm rank3_normal_form(const XiElement &phi);

struct Rank3Analysis {
    Rank3NormalForm pipeline;
    Scalar u_closed;      ///< (eta1 + 2 eta0 xi'(0)) / (4 eta0)
    Scalar u_xi_free;     ///< eta1 / (4 eta0), the value when xi'(0) = 0
    Scalar alpha_closed;
    Scalar w;             ///< s^{l+1} coefficient of the rank-one image
    Scalar w_expected;    ///< 1 / (l (l + 1))
    Scalar lead;          ///< s^{l-1} coefficient of the rank-one image
    Scalar lead_expected;
    bool agrees = false;
};
Rank3Analysis rank3_family_analysis(const Rank3FamilySpec &spec, std::size_t order);

// ---- presentations ---------------------------------------------------------

struct Presentation {
    std::vector<Scalar> lambdas;
    std::vector<TruncSeries> units;

    /// (a - l1 b)(1 + alpha_1 b^{p_1})^-1 ... with lambdas from the gaps.
    static Presentation from_parameters(const Scalar &lambda1, const std::vector<unsigned> &gaps,
                                        const std::vector<std::optional<Scalar>> &alphas, std::size_t order);
    StandardForm compose(unsigned cap) const;
};

/// The quotient by a monic relation on the basis of classes 1, a, ..., a^{k-1}.
struct PresentedModule {
    AbModule module;
    Coords generator;
};
PresentedModule companion_module(const AbElement &monic_relation);
PresentedModule theme_from_presentation(const Presentation &p, std::size_t order);

/// A generator phi in Xi^{(k-1)} annihilated by the monic relation, with top
/// log component of least valuation. lambda0_hint is tried first, then smaller
/// positive representatives of its class.
XiElement embed_relation(const AbElement &monic_relation, const Scalar &lambda0_hint, std::size_t order);

// ---- lattices --------------------------------------------------------------

/// Operator on offset coordinates (exponents shifted by `offset`), used for b^-1 a
/// and its transported versions. Returns nullopt when the result leaves the window.
using LatticeOperator = std::function<std::optional<Coords>(const Coords &x, std::size_t offset)>;

LatticeOperator b_inverse_a(const AbModule &m);
/// a on offset coordinates: b^-D x maps to b^-D (A x + b^2 x' - D b x).
Coords offset_act_a(const AbModule &m, const Coords &x, std::size_t offset);

struct Saturation {
    std::size_t pole_bound = 0;    ///< D with E# inside b^-D E
    std::size_t window = 0;        ///< T: everything is modulo b^T E
    std::vector<Coords> lattice;   ///< echelon C-basis of E# / b^T E in offset coordinates
    std::size_t index = 0;         ///< dim_C E# / E
    Matrix residue;                ///< b^-1 a on E# / b E#
};

/// E# = sum_n (b^-1 a)^n E by lattice iteration.
Saturation saturate(const AbModule &m, const LatticeOperator &op);
Saturation saturate(const AbModule &m);
/// Same lattice (as subspaces at common window).
bool same_lattice(const Saturation &x, const Saturation &y);

/// det(x I + M) on E# / b E#, ascending coefficients.
std::vector<Scalar> bernstein_polynomial(const AbModule &m);
std::vector<Scalar> bernstein_from_saturation(const Saturation &s);
std::string polynomial_to_string(const std::vector<Scalar> &ascending, char var = 'x');

struct Monogenicity {
    bool monogenic = false;
    std::size_t quotient_dim = 0;
    std::optional<std::size_t> witness; ///< basis index with nonzero class
};
Monogenicity is_monogenic(const AbModule &m);

bool isomorphism_test_rank2(const XiElement &x, const XiElement &y);

} // namespace abtheme

#endif
