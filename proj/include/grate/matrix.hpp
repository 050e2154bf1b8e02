#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace grate {

/// Dense row-major matrix of doubles. Just enough surface for the
/// factor blocks used here; nothing clever.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

    double* row(std::size_t r) { return v_.data() + r * cols_; }
    const double* row(std::size_t r) const { return v_.data() + r * cols_; }

    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }

    double frobenius_sq() const {
        double s = 0.0;
        for (double x : v_) s += x * x;
        return s;
    }

    void scale(double a) {
        for (double& x : v_) x *= a;
    }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.v_ == b.v_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> v_;
};

} // namespace grate
