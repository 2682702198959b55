#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace skewspec
{
//! Square row-major dense matrix of doubles.
class DenseMatrix
{
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
    std::span<double const> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    double* data() { return data_.data(); }
    double const* data() const { return data_.data(); }

    friend bool operator==(DenseMatrix const&, DenseMatrix const&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace skewspec
