#ifndef ABTHEME_XIMODEL_HPP
#define ABTHEME_XIMODEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "abtheme/abalg.hpp"
#include "abtheme/linalg.hpp"
#include "abtheme/series.hpp"

namespace abtheme
{

/// Coordinates of an element of a free C[[b]]-module over a fixed basis.
using Coords = std::vector<TruncSeries>;

std::size_t coords_order(const Coords &x);
Coords coords_zero(std::size_t rank, std::size_t order);
Coords coords_basis(std::size_t rank, std::size_t i, std::size_t order);
Coords coords_add(const Coords &x, const Coords &y);
Coords coords_sub(const Coords &x, const Coords &y);
Coords coords_scale(const TruncSeries &s, const Coords &x);
Coords coords_truncated(const Coords &x, std::size_t order);
bool coords_is_zero(const Coords &x);
/// Equality on the common truncation order.
bool coords_agree(const Coords &x, const Coords &y);
/// Least b-valuation over all coordinates (nullopt for zero).
std::optional<std::size_t> coords_valuation(const Coords &x);

/// An (a,b)-module, free of rank k over C[[b]], given by the matrix A of the
/// a-action on its basis: a e_j = sum_i A[i][j] e_i. On combinations the
/// action is a (S e) = S (a e) + b^2 S' e.
class AbModule
{
public:
    AbModule() = default;
    explicit AbModule(std::vector<std::vector<TruncSeries>> a_matrix);

    std::size_t rank() const { return a_.size(); }
    std::size_t order() const;
    const TruncSeries &entry(std::size_t i, std::size_t j) const { return a_[i][j]; }
    const std::vector<std::vector<TruncSeries>> &matrix() const { return a_; }

    /// a E inside b E.
    bool is_simple_pole() const;
    /// Matrix of b^{-1} a on E / b E (simple pole only).
    Matrix residue_matrix() const;

    Coords act_a(const Coords &x) const;
    Coords act_b(const Coords &x) const;
    /// Action of a normal-ordered element; on a simple-pole module the result
    /// is exact to min(order, weight cap).
    Coords act(const AbElement &u, const Coords &x) const;

    AbModule truncated(std::size_t order) const;

private:
    std::vector<std::vector<TruncSeries>> a_;
};

/// E_lambda: rank one, a e = lambda b e.
AbModule e_lambda_module(const Scalar &lambda, std::size_t order);
/// Direct sum (block diagonal action).
AbModule direct_sum(const AbModule &x, const AbModule &y);

/// sum_j g_j(b) x_j in Xi_{lambda0}^{(L-1)}, with x_j = s^{lambda0 - 1} (Log s)^j / j!.
class XiElement
{
public:
    XiElement() = default;
    XiElement(Scalar lambda0, Coords comps);

    static XiElement zero(const Scalar &lambda0, std::size_t log_bound, std::size_t order);
    static XiElement basis(const Scalar &lambda0, std::size_t log_bound, std::size_t j, std::size_t order);

    const Scalar &lambda0() const { return lambda0_; }
    std::size_t log_bound() const { return comps_.size(); }
    std::size_t order() const { return coords_order(comps_); }
    const Coords &comps() const { return comps_; }
    const TruncSeries &comp(std::size_t j) const { return comps_[j]; }
    bool is_zero() const { return coords_is_zero(comps_); }
    /// Largest j with g_j != 0.
    std::optional<std::size_t> top_log() const;

    XiElement act_a() const;
    XiElement act_b() const { return act_series(TruncSeries::monomial(1, Scalar(1), order() + 1)); }
    XiElement act_series(const TruncSeries &s) const;
    XiElement act(const AbElement &u) const;

    XiElement truncated(std::size_t order) const;
    /// Same element viewed with more (zero) log components.
    XiElement with_log_bound(std::size_t log_bound) const;

    friend XiElement operator+(const XiElement &x, const XiElement &y);
    friend XiElement operator-(const XiElement &x, const XiElement &y);
    friend XiElement operator*(const Scalar &c, const XiElement &x);
    friend bool operator==(const XiElement &x, const XiElement &y);

    std::string to_string() const;

private:
    Scalar lambda0_;
    Coords comps_;
};

/// The a-action matrix of Xi_{lambda0}^{(L-1)}.
AbModule xi_module(const Scalar &lambda0, std::size_t log_bound, std::size_t order);

/// a^m x_i = s^{lambda0 + m - 1} (Log s)^i / i!.
XiElement monomial_to_abstract(std::size_t m, std::size_t i, const Scalar &lambda0, std::size_t log_bound,
                               std::size_t order);

/// Function coordinates: f[i][n] is the coefficient of s^{lambda0 - 1 + n} (Log s)^i / i!.
std::vector<std::vector<Scalar>> to_function_coords(const XiElement &x);
XiElement from_function_coords(const std::vector<std::vector<Scalar>> &f, const Scalar &lambda0,
                               std::size_t order);

struct SpanSolution {
    std::vector<TruncSeries> coeffs; ///< one per basis element, at the effective order
    std::size_t effective_order = 0;
    std::size_t valuation_loss = 0; ///< input order minus effective order
};

/// Solves x = sum_t c_t(b) basis_t in coordinates. Throws MathError when x is
/// not in the span or when no coefficient is determined.
SpanSolution express_in_span(const Coords &x, const std::vector<Coords> &basis);
SpanSolution express_in_span(const XiElement &x, const std::vector<XiElement> &basis);

/// Generalised span solve: x = sum_{t,n} c_{t,n} columns[t][n], where
/// columns[t][n] is the image of basis element t under the n-th power of a
/// series variable (b^n v_t, or beta^n v_t after a change of variable).
/// columns[t][n] must have valuation >= n.
SpanSolution express_in_graded_span(const Coords &x, const std::vector<std::vector<Coords>> &columns);

} // namespace abtheme

#endif
