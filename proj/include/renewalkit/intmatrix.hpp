#pragma once

#include "renewalkit/rational.hpp"

#include <vector>

namespace renewalkit {

// Dense matrices over exact scalars. Sizes here are tiny (d <= 8), so the
// representation is a flat row-major vector with no cleverness.
template <class T>
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols, T fill = T(0))
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(int i, int j) {
        for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(int i, int j) {
        for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rational>;

template <class T, class U>
auto matmul(const Mat<T>& a, const Mat<U>& b) {
    using R = decltype(T(0) * U(0));
    Mat<R> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += R(a(i, k)) * R(b(k, j));
        }
    return c;
}

template <class T>
std::vector<T> matvec(const Mat<T>& a, const std::vector<T>& x) {
    std::vector<T> y(static_cast<size_t>(a.rows()), T(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) y[static_cast<size_t>(i)] += a(i, j) * x[static_cast<size_t>(j)];
    return y;
}

// Exact determinant by fraction-free (Bareiss) elimination.
Int det(const IntMat& m);
Rational det(const RatMat& m);

// Inverse of a square rational matrix; throws on singular input.
RatMat inverse(const RatMat& m);

// Integer inverse of a unimodular matrix (det +-1), via det * adjugate.
IntMat unimodular_inverse(const IntMat& k);

IntMat to_int(const RatMat& m);  // throws unless all entries integral
RatMat to_rat(const IntMat& m);

// Smith normal form: U*M*V = S with U, V unimodular and S diagonal with
// nonnegative invariant factors in a divisibility chain n1 | n2 | ...
struct SmithResult {
    IntMat u, s, v;
};
SmithResult smith_normal_form(const IntMat& m);

// Basis of the lattice generated by the columns of a (dim x m), as the
// nonzero columns of a column-Hermite form. Entries stay size-reduced, unlike
// the transform matrices of smith_normal_form on wide inputs.
IntMat column_lattice_basis(const IntMat& a);

}  // namespace renewalkit
