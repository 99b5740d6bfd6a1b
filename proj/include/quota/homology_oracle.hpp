#pragma once
// Brute-force reduced Betti numbers of an explicit simplicial complex from
// boundary-matrix ranks over the rationals (fraction-free elimination, no
// floating point). Intended for small complexes; serves as the independent
// cross-check for the counting theorem.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "quota/quota_core.hpp"

namespace quota {

struct ComplexValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Faces grouped by dimension, lexicographically sorted and unique per
// dimension, downward-closed.
class ExplicitComplex {
 public:
  // Normalizes (sorts, dedups) and validates: indices in range, every facet
  // of every face present. Throws ComplexValidationError.
  static ExplicitComplex from_faces(std::vector<Face> faces, int vertex_count);

  int vertex_count() const noexcept { return vertex_count_; }
  int top_dim() const noexcept { return static_cast<int>(faces_by_dim_.size()) - 1; }
  std::int64_t chain_dim(int m) const noexcept {
    return (m >= 0 && m <= top_dim()) ? static_cast<std::int64_t>(faces_by_dim_[m].size()) : 0;
  }
  const std::vector<Face>& faces(int m) const { return faces_by_dim_.at(static_cast<std::size_t>(m)); }

 private:
  ExplicitComplex(std::vector<std::vector<Face>> faces_by_dim, int vertex_count)
      : faces_by_dim_(std::move(faces_by_dim)), vertex_count_(vertex_count) {}

  std::vector<std::vector<Face>> faces_by_dim_;
  int vertex_count_ = 0;
};

// The full quota complex as an ExplicitComplex.
ExplicitComplex build_complex(const QuotaSystem& system,
                              std::optional<int> max_dim = std::nullopt);

// Dense signed incidence matrix; entries in {-1, 0, +1}.
struct BoundaryMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<int> entries;  // row-major

  int at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  int& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
};

// d_m: columns are m-faces, rows are (m-1)-faces; entry (i, j) = (-1)^k when
// row face i is column face j with its k-th vertex deleted. m = 0 is the
// augmentation row of ones onto the empty face. Throws std::invalid_argument
// for m outside [0, top_dim].
BoundaryMatrix boundary_matrix(const ExplicitComplex& complex, int m);

// Exact rank via Bareiss fraction-free elimination with row pivoting.
std::int64_t matrix_rank_exact(const BoundaryMatrix& matrix);

struct RankProfile {
  std::vector<std::int64_t> chain_dims;      // m-faces per dimension m
  std::vector<std::int64_t> boundary_ranks;  // rank of d_m, including the augmentation d_0
};

RankProfile rank_profile(const ExplicitComplex& complex);

// values[m] = chain_dim(m) - rank d_m - rank d_{m+1}. The augmentation makes
// values[0] = (#components) - 1.
BettiVector reduced_betti(const ExplicitComplex& complex);

// Debug dump, one matrix row per CSV line.
void dump_boundary_matrix_csv(const ExplicitComplex& complex, int m, std::ostream& os);

}  // namespace quota
