#include "folia/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace folia {

namespace {

int ncols(const Matrix& m) { return m.empty() ? 0 : static_cast<int>(m[0].size()); }

template <bool Parallel>
std::vector<int> rref_impl(Matrix& m) {
    std::vector<int> pivots;
    int rows = static_cast<int>(m.size()), cols = ncols(m);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        GaussianRational inv = m[r][c].inverse();
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        const std::vector<GaussianRational>& prow = m[r];
        if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
            for (int i = 0; i < rows; ++i) {
                if (i == r || m[i][c].is_zero()) continue;
                GaussianRational f = m[i][c];
                for (int j = c; j < cols; ++j)
                    if (!prow[j].is_zero()) m[i][j] -= f * prow[j];
            }
        } else {
            for (int i = 0; i < rows; ++i) {
                if (i == r || m[i][c].is_zero()) continue;
                GaussianRational f = m[i][c];
                for (int j = c; j < cols; ++j)
                    if (!prow[j].is_zero()) m[i][j] -= f * prow[j];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::vector<int> rref_serial(Matrix& m) { return rref_impl<false>(m); }
std::vector<int> rref_parallel(Matrix& m) { return rref_impl<true>(m); }

int rank(Matrix m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<GaussianRational>> nullspace(Matrix m) {
    int cols = ncols(m);
    std::vector<int> piv = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<std::vector<GaussianRational>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<GaussianRational> v(cols);
        v[f] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

GaussianRational determinant(Matrix m) {
    int n = static_cast<int>(m.size());
    for (auto& row : m)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("determinant of a non-square matrix");
    GaussianRational det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!m[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        GaussianRational inv = m[c][c].inverse();
        for (int i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            GaussianRational f = m[i][c] * inv;
            for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

} // namespace folia
