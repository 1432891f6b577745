#include "dkz/matrix.hpp"

#include <utility>

namespace dkz {

Matrix<UnramifiedElement> matrix_inverse(const Matrix<UnramifiedElement>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InvalidArgument("inverse needs a nonempty square matrix");
  const std::size_t n = a.rows();
  Matrix<UnramifiedElement> work = a;
  Matrix<UnramifiedElement> inv = Matrix<UnramifiedElement>::identity(n, a(0, 0));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (work(r, col).is_unit()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) throw SingularModP("no unit pivot in column " + std::to_string(col));
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const UnramifiedElement scale = work(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) = work(col, j) * scale;
      inv(col, j) = inv(col, j) * scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const UnramifiedElement f = work(r, col);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) = work(r, j) - f * work(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace dkz
