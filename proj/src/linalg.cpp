#include "lrsynth/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace lrsynth {

std::optional<std::vector<Rational>> solve_linear(Matrix a, std::vector<Rational> b) {
    const size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_linear: shape mismatch");

    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (size_t c = col; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            std::swap(b[pivot], b[col]);
        }
        const Rational inv = 1 / a(col, col);
        for (size_t c = col; c < n; ++c) a(col, c) *= inv;
        b[col] *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a(r, col)) == 0) continue;
            const Rational factor = a(r, col);
            for (size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
        }
    }
    return b;
}

}  // namespace lrsynth
