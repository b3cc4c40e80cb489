#pragma once

#include "linrel/relation.hpp"

#include <initializer_list>
#include <random>

namespace linrel::test {

// Row-major literal to complex matrix.
inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// Column vectors given as lists.
inline Matrix cols(std::initializer_list<std::initializer_list<double>> columns) {
  return mat(columns).transpose();
}

inline Subspace span(std::initializer_list<std::initializer_list<double>> columns) {
  return orthonormal_basis(cols(columns));
}

// Test-only randomness, deliberately separate from linrel::generate.
struct TestRng {
  std::mt19937_64 engine;
  explicit TestRng(std::uint64_t seed) : engine(seed) {}
  double normal() { return std::normal_distribution<double>()(engine); }
  Matrix gaussian(Index r, Index c, bool complex_field) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j)
        m(i, j) = Scalar(normal(), complex_field ? normal() : 0.0);
    return m;
  }
  Index uniform(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(engine);
  }
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace linrel::test
