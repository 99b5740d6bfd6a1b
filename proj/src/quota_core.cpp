#include "quota/quota_core.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace quota {

Face::Face(std::vector<int> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("Face: must be nonempty");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] < 0) throw std::invalid_argument("Face: negative vertex index");
    if (i > 0 && vertices_[i] <= vertices_[i - 1])
      throw std::invalid_argument("Face: vertices must be strictly increasing");
  }
}

QuotaSystem::QuotaSystem(std::vector<Rational> weights, Rational quota)
    : weights_(std::move(weights)), quota_(std::move(quota)), min_vertex_(0) {
  if (weights_.empty()) throw std::invalid_argument("QuotaSystem: needs at least one vertex");
  if (!(quota_ > 0)) throw std::invalid_argument("QuotaSystem: quota must be positive");
  for (std::size_t v = 0; v < weights_.size(); ++v) {
    if (!(weights_[v] > 0)) throw std::invalid_argument("QuotaSystem: weights must be positive");
    if (weights_[v] < weights_[static_cast<std::size_t>(min_vertex_)]) min_vertex_ = static_cast<int>(v);
  }
}

const Rational& QuotaSystem::weight(int v) const {
  if (v < 0 || v >= vertex_count())
    throw std::invalid_argument("QuotaSystem: vertex index " + std::to_string(v) + " out of range");
  return weights_[static_cast<std::size_t>(v)];
}

std::string to_string(const BettiVector& b) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    if (i) os << ',';
    os << b.values[i];
  }
  os << ']';
  return os.str();
}

Rational face_weight(const QuotaSystem& system, const Face& face) {
  Rational total = 0;
  for (int v : face.vertices()) total += system.weight(v);
  return total;
}

bool contains_face(const QuotaSystem& system, const Face& face) {
  return face_weight(system, face) < system.quota();
}

std::vector<Face> enumerate_faces(const QuotaSystem& system, std::optional<int> max_dim) {
  std::vector<Face> out;
  if (max_dim && *max_dim < 0) return out;
  const int n = system.vertex_count();
  std::vector<int> current;
  Rational weight_sum = 0;

  // Ascending-index DFS emits faces in lexicographic order.
  std::function<void(int)> extend = [&](int first) {
    for (int v = first; v < n; ++v) {
      const Rational& wv = system.weight(v);
      if (!(weight_sum + wv < system.quota())) continue;  // prune: supersets only get heavier
      current.push_back(v);
      weight_sum += wv;
      out.push_back(Face(current));
      if (!max_dim || static_cast<int>(current.size()) <= *max_dim) extend(v + 1);
      weight_sum -= wv;
      current.pop_back();
    }
  };
  extend(0);
  return out;
}

namespace {

BettiVector window_counts(const QuotaSystem& system, int skip_vertex, const Rational& lo) {
  const int n = system.vertex_count();
  BettiVector betti;
  std::vector<int> current;
  Rational weight_sum = 0;

  std::function<void(int)> extend = [&](int first) {
    for (int v = first; v < n; ++v) {
      if (v == skip_vertex) continue;
      const Rational& wv = system.weight(v);
      if (!(weight_sum + wv < system.quota())) continue;
      current.push_back(v);
      weight_sum += wv;
      if (weight_sum >= lo) {
        const auto dim = current.size() - 1;
        if (betti.values.size() <= dim) betti.values.resize(dim + 1, 0);
        ++betti.values[dim];
      }
      extend(v + 1);
      weight_sum -= wv;
      current.pop_back();
    }
  };
  extend(0);
  betti.trim();
  return betti;
}

}  // namespace

BettiVector betti_by_counting(const QuotaSystem& system) {
  return betti_by_counting_with_root(system, system.min_weight_vertex());
}

BettiVector betti_by_counting_with_root(const QuotaSystem& system, int root) {
  const Rational& w0 = system.weight(root);
  if (w0 != system.weight(system.min_weight_vertex()))
    throw std::invalid_argument("betti_by_counting_with_root: root must have minimum weight");
  if (!(w0 < system.quota()))
    throw EmptyComplexError("quota complex is empty: no vertex weight below quota");
  return window_counts(system, root, system.quota() - w0);
}

std::vector<Rational> parse_weights(std::istream& in) {
  std::vector<Rational> weights;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    if (token[0] == '#') continue;
    Rational w;
    try {
      w = parse_decimal(token);
    } catch (const std::invalid_argument& e) {
      throw WeightsParseError(line_number, e.what());
    }
    if (!(w > 0)) throw WeightsParseError(line_number, "weight must be positive");
    weights.push_back(std::move(w));
  }
  if (weights.empty()) throw WeightsParseError(line_number, "no weights in file");
  return weights;
}

std::vector<Rational> load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WeightsParseError(0, "cannot open '" + path + "'");
  return parse_weights(in);
}

}  // namespace quota
