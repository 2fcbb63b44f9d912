#ifndef RESIDUA_LINALG_HPP
#define RESIDUA_LINALG_HPP

#include "residua/rational.hpp"

#include <optional>
#include <vector>

namespace residua {

/// Dense matrix over an exact field (GaussianRational or RationalFunction).
template <class F>
class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, F()) {}
    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t k = 0; k < n; ++k) m(k, k) = F(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    F& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const F& operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat out(x.rows_, x.cols_);
        for (size_t k = 0; k < x.a_.size(); ++k) out.a_[k] = x.a_[k] + y.a_[k];
        return out;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat out(x.rows_, x.cols_);
        for (size_t k = 0; k < x.a_.size(); ++k) out.a_[k] = x.a_[k] - y.a_[k];
        return out;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat out(x.rows_, y.cols_);
        for (size_t r = 0; r < x.rows_; ++r)
            for (size_t c = 0; c < y.cols_; ++c) {
                F acc{};
                for (size_t k = 0; k < x.cols_; ++k) acc += x(r, k) * y(k, c);
                out(r, c) = acc;
            }
        return out;
    }
    Mat scaled(const F& s) const {
        Mat out = *this;
        for (auto& v : out.a_) v = v * s;
        return out;
    }
    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    F det() const {
        if (rows_ != cols_) throw Error("det of non-square matrix");
        Mat m = *this;
        F out{1};
        for (size_t c = 0; c < cols_; ++c) {
            size_t piv = c;
            while (piv < rows_ && m(piv, c).is_zero()) ++piv;
            if (piv == rows_) return F{};
            if (piv != c) {
                for (size_t k = 0; k < cols_; ++k) std::swap(m(piv, k), m(c, k));
                out = -out;
            }
            out = out * m(c, c);
            F inv = F(1) / m(c, c);
            for (size_t r = c + 1; r < rows_; ++r) {
                if (m(r, c).is_zero()) continue;
                F f = m(r, c) * inv;
                for (size_t k = c; k < cols_; ++k) m(r, k) -= f * m(c, k);
            }
        }
        return out;
    }

    std::optional<Mat> inverse() const {
        if (rows_ != cols_) throw Error("inverse of non-square matrix");
        Mat m = *this, inv = identity(rows_);
        for (size_t c = 0; c < cols_; ++c) {
            size_t piv = c;
            while (piv < rows_ && m(piv, c).is_zero()) ++piv;
            if (piv == rows_) return std::nullopt;
            if (piv != c)
                for (size_t k = 0; k < cols_; ++k) {
                    std::swap(m(piv, k), m(c, k));
                    std::swap(inv(piv, k), inv(c, k));
                }
            F d = F(1) / m(c, c);
            for (size_t k = 0; k < cols_; ++k) {
                m(c, k) = m(c, k) * d;
                inv(c, k) = inv(c, k) * d;
            }
            for (size_t r = 0; r < rows_; ++r) {
                if (r == c || m(r, c).is_zero()) continue;
                F f = m(r, c);
                for (size_t k = 0; k < cols_; ++k) {
                    m(r, k) -= f * m(c, k);
                    inv(r, k) -= f * inv(c, k);
                }
            }
        }
        return inv;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<F> a_;
};

/// One solution of A x = b, or nullopt when inconsistent. Free variables
/// are set to zero; column echelon choices are deterministic.
template <class F>
std::optional<std::vector<F>> solve_linear(Mat<F> a, std::vector<F> b) {
    size_t rows = a.rows(), cols = a.cols();
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && a(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank) {
            for (size_t k = 0; k < cols; ++k) std::swap(a(piv, k), a(rank, k));
            std::swap(b[piv], b[rank]);
        }
        F d = F(1) / a(rank, c);
        for (size_t k = 0; k < cols; ++k) a(rank, k) = a(rank, k) * d;
        b[rank] = b[rank] * d;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a(r, c).is_zero()) continue;
            F f = a(r, c);
            for (size_t k = 0; k < cols; ++k) a(r, k) -= f * a(rank, k);
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (!b[r].is_zero()) return std::nullopt;
    std::vector<F> x(cols, F{});
    for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
    return x;
}

template <class F>
size_t matrix_rank(Mat<F> a) {
    size_t rows = a.rows(), cols = a.cols(), rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && a(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (size_t k = 0; k < cols; ++k) std::swap(a(piv, k), a(rank, k));
        F d = F(1) / a(rank, c);
        for (size_t k = 0; k < cols; ++k) a(rank, k) = a(rank, k) * d;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a(r, c).is_zero()) continue;
            F f = a(r, c);
            for (size_t k = 0; k < cols; ++k) a(r, k) -= f * a(rank, k);
        }
        ++rank;
    }
    return rank;
}

} // namespace residua

#endif
