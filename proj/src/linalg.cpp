#include "abtheme/linalg.hpp"

#include <algorithm>

namespace abtheme
{

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Scalar(1);
    return m;
}

Matrix operator*(const Matrix &a, const Matrix &b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar &x = a(i, k);
            if (x.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero())
                    r(i, j) += x * b(k, j);
        }
    return r;
}

bool operator==(const Matrix &a, const Matrix &b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Echelon rref(Matrix m, std::optional<std::size_t> pivot_cols)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t pc = std::min(pivot_cols.value_or(cols), cols);
    Echelon out;
    std::size_t r = 0;
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < pc && r < rows; ++c) {
        std::optional<std::size_t> best;
        for (std::size_t i = r; i < rows; ++i) {
            const Scalar &x = m(i, c);
            if (x.is_zero())
                continue;
            if (x.is_unit()) {
                best = i;
                break;
            }
            if (!best)
                best = i;
        }
        if (!best)
            continue;
        if (*best != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(r, j), m(*best, j));
        const Scalar piv = m(r, c);
        nz.clear();
        for (std::size_t j = c; j < cols; ++j) {
            if (m(r, j).is_zero())
                continue;
            if (piv.is_unit())
                m(r, j) /= piv;
            else {
                try {
                    m(r, j) /= piv;
                } catch (const MathError &) {
                    throw MathError("non-unit pivot " + piv.to_string() + " in exact elimination");
                }
            }
            nz.push_back(j);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            const Scalar f = m(i, c);
            for (auto j : nz)
                m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

LinearSolution solve(const Matrix &a, const std::vector<Scalar> &rhs)
{
    if (rhs.size() != a.rows())
        throw std::invalid_argument("rhs size mismatch");
    const std::size_t n = a.cols();
    Matrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n) = rhs[i];
    }
    const Echelon e = rref(std::move(aug), n);
    LinearSolution sol;
    sol.x.assign(n, Scalar());
    sol.determined.assign(n, false);
    for (std::size_t i = e.rank(); i < a.rows(); ++i)
        if (!e.reduced(i, n).is_zero()) {
            sol.failing_row = i;
            return sol;
        }
    sol.consistent = true;
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j])
            sol.free_vars.push_back(j);
    for (std::size_t i = 0; i < e.rank(); ++i) {
        const std::size_t c = e.pivots[i];
        sol.x[c] = e.reduced(i, n);
        bool det = true;
        for (auto f : sol.free_vars)
            if (!e.reduced(i, f).is_zero()) {
                det = false;
                break;
            }
        sol.determined[c] = det;
    }
    return sol;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix &a)
{
    const std::size_t n = a.cols();
    const Echelon e = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Scalar> v(n);
        v[f] = Scalar(1);
        for (std::size_t i = 0; i < e.rank(); ++i)
            v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Scalar> characteristic_polynomial(const Matrix &m)
{
    // Faddeev-LeVerrier: M_k = M M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M M_k)/k.
    const std::size_t n = m.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = Scalar(1);
    Matrix mk(n, n); // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i)
            next(i, i) += c[n - k + 1];
        mk = std::move(next);
        Matrix prod = m * mk;
        Scalar tr;
        for (std::size_t i = 0; i < n; ++i)
            tr += prod(i, i);
        c[n - k] = -tr / Scalar(static_cast<long>(k));
    }
    return c;
}

} // namespace abtheme
