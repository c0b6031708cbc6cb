#pragma once

#include <vector>

#include "folia/gaussian_rational.hpp"

namespace folia {

using Matrix = std::vector<std::vector<GaussianRational>>;

/// In-place reduced row echelon form. Returns the pivot columns.
/// The serial version is the reference; the parallel one eliminates rows
/// concurrently and produces the identical matrix.
std::vector<int> rref_serial(Matrix& m);
std::vector<int> rref_parallel(Matrix& m);
inline std::vector<int> rref(Matrix& m) { return rref_parallel(m); }

int rank(Matrix m);

/// Basis of {x : m x = 0}, one vector per free column, in RREF-derived order
/// (free variable set to 1, the others to 0).
std::vector<std::vector<GaussianRational>> nullspace(Matrix m);

/// Determinant of a square matrix (exact, small sizes).
GaussianRational determinant(Matrix m);

} // namespace folia
