#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>

#include "dsm/errors.hpp"

namespace dsm {

inline constexpr int kMaxDim = 8;

// Fixed-capacity column vector, dimension 1..8. Value type, no allocation.
template <typename T>
class Vector {
public:
    Vector() : n_(0) {}
    explicit Vector(int n, T fill = T{}) : n_(n) {
        check_dim(n, 1);
        for (int i = 0; i < n_; ++i) a_[i] = fill;
    }
    Vector(std::initializer_list<T> xs) : n_(static_cast<int>(xs.size())) {
        check_dim(n_, 1);
        int i = 0;
        for (const T& x : xs) a_[i++] = x;
    }

    int size() const { return n_; }
    T& operator[](int i) { return a_[i]; }
    const T& operator[](int i) const { return a_[i]; }

    double norm() const {
        double s = 0;
        for (int i = 0; i < n_; ++i) s += std::norm(std::complex<double>(a_[i]));
        return std::sqrt(s);
    }

    Vector& operator*=(T c) {
        for (int i = 0; i < n_; ++i) a_[i] *= c;
        return *this;
    }
    Vector& operator-=(const Vector& o) {
        for (int i = 0; i < n_; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Vector& operator+=(const Vector& o) {
        for (int i = 0; i < n_; ++i) a_[i] += o.a_[i];
        return *this;
    }

    static void check_dim(int n, int lo) {
        if (n < lo || n > kMaxDim)
            throw DimOutOfRange("vector dimension " + std::to_string(n) +
                                " outside [" + std::to_string(lo) + ", 8]");
    }

private:
    int n_;
    std::array<T, kMaxDim> a_{};
};

// Dense rectangular matrix with capacity 8x8. Row-major, value type.
template <typename T>
class Matrix {
public:
    Matrix() : r_(0), c_(0) {}
    Matrix(int rows, int cols, T fill = T{}) : r_(rows), c_(cols) {
        check_shape(rows, cols);
        for (int i = 0; i < r_ * c_; ++i) a_[i] = fill;
    }
    Matrix(int rows, int cols, std::initializer_list<T> xs) : Matrix(rows, cols) {
        int i = 0;
        for (const T& x : xs) {
            if (i >= r_ * c_) break;
            a_[i++] = x;
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    static Matrix diagonal(const Vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (int i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    T& operator()(int i, int j) { return a_[i * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[i * c_ + j]; }

    Vector<T> column(int j) const {
        Vector<T> v(r_);
        for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_column(int j, const Vector<T>& v) {
        for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
    }

    Matrix operator*(const Matrix& b) const {
        Matrix out(r_, b.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                T aik = (*this)(i, k);
                for (int j = 0; j < b.c_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    Vector<T> operator*(const Vector<T>& v) const {
        Vector<T> out(r_);
        for (int i = 0; i < r_; ++i) {
            T s{};
            for (int j = 0; j < c_; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    Matrix operator+(const Matrix& b) const {
        Matrix out = *this;
        for (int i = 0; i < r_ * c_; ++i) out.a_[i] += b.a_[i];
        return out;
    }
    Matrix operator-(const Matrix& b) const {
        Matrix out = *this;
        for (int i = 0; i < r_ * c_; ++i) out.a_[i] -= b.a_[i];
        return out;
    }
    Matrix operator*(T s) const {
        Matrix out = *this;
        for (int i = 0; i < r_ * c_; ++i) out.a_[i] *= s;
        return out;
    }

    Matrix transpose() const {
        Matrix out(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    double frobenius_norm() const {
        double s = 0;
        for (int i = 0; i < r_ * c_; ++i) s += std::norm(std::complex<double>(a_[i]));
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0;
        for (int i = 0; i < r_ * c_; ++i)
            m = std::max(m, std::abs(std::complex<double>(a_[i])));
        return m;
    }

    bool finite() const {
        for (int i = 0; i < r_ * c_; ++i) {
            std::complex<double> z(a_[i]);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

    static void check_shape(int rows, int cols) {
        if (rows < 1 || rows > kMaxDim || cols < 1 || cols > kMaxDim)
            throw DimOutOfRange("matrix shape " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " outside capacity 8x8");
    }

private:
    int r_, c_;
    std::array<T, kMaxDim * kMaxDim> a_{};
};

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;
using ComplexVector = Vector<Complex>;
using RealVector = Vector<double>;

inline ComplexMatrix to_complex(const RealMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = Complex(a(i, j), 0.0);
    return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline Complex inner(const ComplexVector& x, const ComplexVector& y) {
    Complex s{};
    for (int i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double inner(const RealVector& x, const RealVector& y) {
    double s = 0;
    for (int i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace dsm
