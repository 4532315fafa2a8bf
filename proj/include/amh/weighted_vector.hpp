#pragma once

// Sparse nonnegative-weighted vectors: the input type of weighted minwise
// sampling and the output type of the weighted padding transforms.

#include <cstdint>
#include <utility>
#include <vector>

namespace amh {

// Entries sorted by strictly increasing index; weights are strictly positive
// in storage (zero weights are dropped on construction, negative weights are
// rejected).
class WeightedSparseVector {
 public:
  WeightedSparseVector() = default;

  // Sorts by index; throws ValidationError on duplicate indices or negative
  // weights; drops zero weights.
  static WeightedSparseVector from_pairs(
      std::vector<std::pair<std::uint32_t, double>> entries);

  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  const std::vector<std::uint32_t>& indices() const { return idx_; }
  const std::vector<double>& weights() const { return val_; }

  double sum_weights() const;
  double squared_norm() const;

  bool operator==(const WeightedSparseVector&) const = default;

 private:
  std::vector<std::uint32_t> idx_;
  std::vector<double> val_;
};

// Σ_i min(u_i, v_i) / Σ_i max(u_i, v_i); 1.0 when both vectors are empty.
double weighted_jaccard(const WeightedSparseVector& u, const WeightedSparseVector& v);

}  // namespace amh
