#include "quota/homology_oracle.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace quota {

ExplicitComplex ExplicitComplex::from_faces(std::vector<Face> faces, int vertex_count) {
  if (vertex_count <= 0) throw ComplexValidationError("ExplicitComplex: vertex_count must be positive");
  int top = -1;
  for (const Face& f : faces) {
    if (f.vertices().back() >= vertex_count)
      throw ComplexValidationError("ExplicitComplex: vertex index out of range");
    top = std::max(top, f.dim());
  }
  std::vector<std::vector<Face>> by_dim(static_cast<std::size_t>(top + 1));
  for (Face& f : faces) by_dim[static_cast<std::size_t>(f.dim())].push_back(std::move(f));
  for (auto& level : by_dim) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
  // Downward closure: every facet of every face must be present one level down.
  for (int m = 1; m <= top; ++m) {
    const auto& lower = by_dim[static_cast<std::size_t>(m - 1)];
    for (const Face& f : by_dim[static_cast<std::size_t>(m)]) {
      std::vector<int> facet(f.vertices().begin(), f.vertices().end());
      for (std::size_t k = 0; k < f.vertices().size(); ++k) {
        facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(k));
        if (!std::binary_search(lower.begin(), lower.end(), Face(facet)))
          throw ComplexValidationError("ExplicitComplex: not downward-closed");
        facet.insert(facet.begin() + static_cast<std::ptrdiff_t>(k), f.vertices()[k]);
      }
    }
  }
  return ExplicitComplex(std::move(by_dim), vertex_count);
}

ExplicitComplex build_complex(const QuotaSystem& system, std::optional<int> max_dim) {
  std::vector<Face> faces = enumerate_faces(system, max_dim);
  if (faces.empty()) throw EmptyComplexError("quota complex is empty: no vertex weight below quota");
  return ExplicitComplex::from_faces(std::move(faces), system.vertex_count());
}

BoundaryMatrix boundary_matrix(const ExplicitComplex& complex, int m) {
  if (m < 0 || m > complex.top_dim())
    throw std::invalid_argument("boundary_matrix: dimension " + std::to_string(m) + " out of range");
  BoundaryMatrix matrix;
  if (m == 0) {
    matrix.rows = 1;
    matrix.cols = static_cast<std::size_t>(complex.chain_dim(0));
    matrix.entries.assign(matrix.cols, 1);  // augmentation onto the empty face
    return matrix;
  }
  const auto& lower = complex.faces(m - 1);
  const auto& upper = complex.faces(m);
  matrix.rows = lower.size();
  matrix.cols = upper.size();
  matrix.entries.assign(matrix.rows * matrix.cols, 0);
  for (std::size_t j = 0; j < upper.size(); ++j) {
    const auto& verts = upper[j].vertices();
    std::vector<int> facet(verts.begin(), verts.end());
    int sign = 1;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(k));
      const auto it = std::lower_bound(lower.begin(), lower.end(), Face(facet));
      matrix.at(static_cast<std::size_t>(it - lower.begin()), j) = sign;
      facet.insert(facet.begin() + static_cast<std::ptrdiff_t>(k), verts[k]);
      sign = -sign;
    }
  }
  return matrix;
}

std::int64_t matrix_rank_exact(const BoundaryMatrix& matrix) {
  const std::size_t rows = matrix.rows, cols = matrix.cols;
  if (rows == 0 || cols == 0) return 0;
  std::vector<BigInt> a(matrix.entries.begin(), matrix.entries.end());
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return a[r * cols + c]; };

  BigInt prev_pivot = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    // Smallest-magnitude nonzero pivot keeps Bareiss entries from growing.
    std::size_t pivot_row = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (at(r, col) == 0) continue;
      if (pivot_row == rows || abs(at(r, col)) < abs(at(pivot_row, col))) pivot_row = r;
    }
    if (pivot_row == rows) continue;
    if (pivot_row != rank)
      for (std::size_t c = col; c < cols; ++c) std::swap(at(rank, c), at(pivot_row, c));
    const BigInt pivot = at(rank, col);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const BigInt factor = at(r, col);
      for (std::size_t c = col + 1; c < cols; ++c) {
        BigInt quotient, remainder;
        boost::multiprecision::divide_qr(pivot * at(r, c) - factor * at(rank, c), prev_pivot,
                                         quotient, remainder);
        if (remainder != 0)  // Sylvester identity guarantees exactness
          throw std::logic_error("matrix_rank_exact: fraction-free division left a remainder");
        at(r, c) = std::move(quotient);
      }
      at(r, col) = 0;
    }
    prev_pivot = pivot;
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

RankProfile rank_profile(const ExplicitComplex& complex) {
  RankProfile profile;
  const int top = complex.top_dim();
  for (int m = 0; m <= top; ++m) {
    profile.chain_dims.push_back(complex.chain_dim(m));
    profile.boundary_ranks.push_back(matrix_rank_exact(boundary_matrix(complex, m)));
  }
  return profile;
}

BettiVector reduced_betti(const ExplicitComplex& complex) {
  const RankProfile profile = rank_profile(complex);
  const int top = complex.top_dim();
  BettiVector betti;
  for (int m = 0; m <= top; ++m) {
    const std::int64_t rank_next = (m < top) ? profile.boundary_ranks[static_cast<std::size_t>(m + 1)] : 0;
    betti.values.push_back(profile.chain_dims[static_cast<std::size_t>(m)] -
                           profile.boundary_ranks[static_cast<std::size_t>(m)] - rank_next);
  }
  betti.trim();
  return betti;
}

void dump_boundary_matrix_csv(const ExplicitComplex& complex, int m, std::ostream& os) {
  const BoundaryMatrix matrix = boundary_matrix(complex, m);
  for (std::size_t r = 0; r < matrix.rows; ++r) {
    for (std::size_t c = 0; c < matrix.cols; ++c) {
      if (c) os << ',';
      os << matrix.at(r, c);
    }
    os << '\n';
  }
}

}  // namespace quota
