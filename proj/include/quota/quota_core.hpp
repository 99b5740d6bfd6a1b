#pragma once
// Scalar-valued quota complexes. A face is present iff the sum of its vertex
// weights is strictly below the quota; weights are exact rationals so the
// strict comparison never flips under rounding.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quota/exact.hpp"

namespace quota {

// Thrown when an operation needs a nonempty complex (no vertex below quota).
struct EmptyComplexError : std::domain_error {
  using std::domain_error::domain_error;
};

// Weights-file parse failure; line numbers are 1-based.
struct WeightsParseError : std::runtime_error {
  WeightsParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_number(line) {}
  int line_number;
};

// Strictly increasing, nonempty list of vertex indices.
class Face {
 public:
  explicit Face(std::vector<int> vertices);

  const std::vector<int>& vertices() const noexcept { return vertices_; }
  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }

  friend bool operator==(const Face& a, const Face& b) noexcept { return a.vertices_ == b.vertices_; }
  friend bool operator<(const Face& a, const Face& b) noexcept { return a.vertices_ < b.vertices_; }

 private:
  std::vector<int> vertices_;
};

class QuotaSystem {
 public:
  // Requires at least one vertex, every weight > 0 and quota > 0.
  QuotaSystem(std::vector<Rational> weights, Rational quota);

  int vertex_count() const noexcept { return static_cast<int>(weights_.size()); }
  const Rational& weight(int v) const;
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const Rational& quota() const noexcept { return quota_; }

  // Lowest-indexed vertex of minimum weight.
  int min_weight_vertex() const noexcept { return min_vertex_; }

 private:
  std::vector<Rational> weights_;
  Rational quota_;
  int min_vertex_;
};

// Reduced Betti numbers indexed by dimension; trailing zeros are trimmed and
// queries beyond the stored length return 0.
struct BettiVector {
  std::vector<std::int64_t> values;

  std::int64_t at(int m) const noexcept {
    return (m >= 0 && m < static_cast<int>(values.size())) ? values[static_cast<std::size_t>(m)] : 0;
  }
  void trim() {
    while (!values.empty() && values.back() == 0) values.pop_back();
  }
  friend bool operator==(const BettiVector& a, const BettiVector& b) noexcept {
    const int n = static_cast<int>(std::max(a.values.size(), b.values.size()));
    for (int m = 0; m < n; ++m)
      if (a.at(m) != b.at(m)) return false;
    return true;
  }
};

std::string to_string(const BettiVector& b);

// Sum of the face's vertex weights. Throws std::invalid_argument on an index
// outside the system.
Rational face_weight(const QuotaSystem& system, const Face& face);

// w(F) < q, strictly.
bool contains_face(const QuotaSystem& system, const Face& face);

// All faces of the complex (weight < quota), lexicographic, restricted to
// dimension <= max_dim when given. Depth-first with pruning: positive weights
// mean no superset of an overweight set can qualify.
std::vector<Face> enumerate_faces(const QuotaSystem& system,
                                  std::optional<int> max_dim = std::nullopt);

// Reduced Betti numbers via the bouquet-of-spheres count: with v0 a vertex of
// minimum weight, values[s] = #{faces F of dimension s, v0 not in F,
// q - w(v0) <= w(F) < q}. Never materializes the face list.
BettiVector betti_by_counting(const QuotaSystem& system);

// Same count rooted at an explicit vertex; root must attain the minimum
// weight (any such choice yields the same result, which tests assert).
BettiVector betti_by_counting_with_root(const QuotaSystem& system, int root);

// Weights file: one positive decimal per line, vertex order = line order,
// '#' lines and blank lines ignored.
std::vector<Rational> parse_weights(std::istream& in);
std::vector<Rational> load_weights_file(const std::string& path);

}  // namespace quota
