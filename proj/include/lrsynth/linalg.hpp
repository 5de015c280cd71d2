#pragma once

#include "lrsynth/rational.hpp"

#include <optional>
#include <vector>

namespace lrsynth {

/// Dense row-major rational matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rational& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Solves the square system A·x = b exactly. Returns nullopt if A is singular.
std::optional<std::vector<Rational>> solve_linear(Matrix a, std::vector<Rational> b);

}  // namespace lrsynth
