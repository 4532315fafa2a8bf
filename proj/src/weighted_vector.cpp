#include "amh/weighted_vector.hpp"

#include <algorithm>

#include "amh/errors.hpp"

namespace amh {

WeightedSparseVector WeightedSparseVector::from_pairs(
    std::vector<std::pair<std::uint32_t, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  WeightedSparseVector v;
  v.idx_.reserve(entries.size());
  v.val_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].first == entries[i - 1].first) {
      throw ValidationError("duplicate index " + std::to_string(entries[i].first) +
                            " in weighted vector");
    }
    double w = entries[i].second;
    if (w < 0.0) {
      throw ValidationError("negative weight at index " + std::to_string(entries[i].first));
    }
    if (w == 0.0) continue;
    v.idx_.push_back(entries[i].first);
    v.val_.push_back(w);
  }
  return v;
}

double WeightedSparseVector::sum_weights() const {
  double s = 0.0;
  for (double w : val_) s += w;
  return s;
}

double WeightedSparseVector::squared_norm() const {
  double s = 0.0;
  for (double w : val_) s += w * w;
  return s;
}

double weighted_jaccard(const WeightedSparseVector& u, const WeightedSparseVector& v) {
  const auto& ui = u.indices();
  const auto& vi = v.indices();
  double sum_min = 0.0, sum_max = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ui.size() || j < vi.size()) {
    if (j >= vi.size() || (i < ui.size() && ui[i] < vi[j])) {
      sum_max += u.weights()[i];
      ++i;
    } else if (i >= ui.size() || vi[j] < ui[i]) {
      sum_max += v.weights()[j];
      ++j;
    } else {
      sum_min += std::min(u.weights()[i], v.weights()[j]);
      sum_max += std::max(u.weights()[i], v.weights()[j]);
      ++i;
      ++j;
    }
  }
  if (sum_max == 0.0) return 1.0;
  return sum_min / sum_max;
}

}  // namespace amh
