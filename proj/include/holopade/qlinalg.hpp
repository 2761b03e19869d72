#pragma once

#include <vector>

#include "holopade/poly.hpp"
#include "holopade/rational.hpp"

namespace holopade {

template <class T>
class DenseMat {
  public:
    DenseMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const T& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(size_t i, size_t j) {
        for (size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

  private:
    size_t rows_, cols_;
    std::vector<T> data_;
};

namespace detail {
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
inline Poly exact_div(const Poly& a, const Poly& b) { return divide_exact(a, b); }
}  // namespace detail

// Fraction-free (Bareiss) determinant over an integral domain with exact
// division; works for Rational and for Poly entries. Every division in the
// elimination is exact by the Sylvester identity.
template <class T>
T det_bareiss(DenseMat<T> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_bareiss: non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return T(Rational(1));
    int sign = 1;
    T prev(Rational(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            size_t p = k + 1;
            while (p < n && m.at(p, k).is_zero()) ++p;
            if (p == n) return T(Rational(0));
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m.at(i, j) = detail::exact_div(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
            m.at(i, k) = T(Rational(0));
        }
        prev = m.at(k, k);
    }
    T d = m.at(n - 1, n - 1);
    return sign < 0 ? T(Rational(0)) - d : d;
}

struct NullspaceResult {
    std::vector<Rational> vec;  // one kernel vector, deterministic choice
    int kernel_dim = 0;
};

// Reduced row echelon nullspace over Q with leftmost pivots. The returned
// vector sets the highest-index free variable to 1 and the other free
// variables to 0. Throws if the kernel is trivial.
inline NullspaceResult nullspace_vector(DenseMat<Rational> m) {
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<long> pivot_col_of_row;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m.at(p, c).is_zero()) ++p;
        if (p == rows) continue;
        m.swap_rows(r, p);
        Rational inv = m.at(r, c).inverse();
        for (size_t j = c; j < cols; ++j) m.at(r, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c);
            for (size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivot_col_of_row.push_back(static_cast<long>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (long c : pivot_col_of_row) is_pivot[static_cast<size_t>(c)] = true;
    int free_count = static_cast<int>(cols) - static_cast<int>(pivot_col_of_row.size());
    if (free_count == 0)
        throw std::runtime_error("nullspace_vector: trivial kernel");
    long free_var = -1;
    for (long c = static_cast<long>(cols) - 1; c >= 0; --c)
        if (!is_pivot[static_cast<size_t>(c)]) { free_var = c; break; }
    std::vector<Rational> x(cols, Rational(0));
    x[static_cast<size_t>(free_var)] = 1;
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
        x[static_cast<size_t>(pivot_col_of_row[i])] = -m.at(i, static_cast<size_t>(free_var));
    return {std::move(x), free_count};
}

// True iff a and b are proportional as vectors over Q (cross-multiplication;
// neither normalization is assumed). Zero vectors are proportional to all.
inline bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    const size_t n = std::max(a.size(), b.size());
    auto get = [](const std::vector<Rational>& v, size_t i) {
        return i < v.size() ? v[i] : Rational(0);
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (get(a, i) * get(b, j) != get(a, j) * get(b, i)) return false;
    return true;
}

}  // namespace holopade
