#ifndef ABTHEME_LINALG_HPP
#define ABTHEME_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "abtheme/scalar.hpp"

namespace abtheme
{

/// Dense row-major matrix of exact scalars.
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix &a, const Matrix &b);
    friend bool operator==(const Matrix &a, const Matrix &b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form. Pivots are searched only in the first `pivot_cols`
/// columns (the rest is an augmented block). Unit pivots are preferred; a
/// polynomial pivot is used only if it divides its row exactly.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots; ///< pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

Echelon rref(Matrix m, std::optional<std::size_t> pivot_cols = std::nullopt);

/// Solution of A x = rhs with the free variables set to zero.
struct LinearSolution {
    bool consistent = false;
    std::vector<Scalar> x;
    /// determined[j]: x_j is independent of the free variables.
    std::vector<bool> determined;
    std::vector<std::size_t> free_vars;
    /// Row residual of the first inconsistent equation (when !consistent).
    std::optional<std::size_t> failing_row;
};

LinearSolution solve(const Matrix &a, const std::vector<Scalar> &rhs);

/// Basis of {x : A x = 0}; the basis vector for free variable f has x_f = 1.
std::vector<std::vector<Scalar>> nullspace(const Matrix &a);

/// Coefficients c_0..c_n of det(x I - M), ascending, monic.
std::vector<Scalar> characteristic_polynomial(const Matrix &m);

} // namespace abtheme

#endif
