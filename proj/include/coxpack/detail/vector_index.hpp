#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace coxpack::detail {

/// Set of real vectors with tolerant lookup. Vectors are bucketed by rounding
/// each coordinate to a coarse grid, so integers (and zero in particular) sit
/// at bucket centres. Coordinates within the match tolerance of a bucket
/// boundary are also looked up in the neighbouring bucket, so numerically
/// equal vectors always meet regardless of rounding.
class VectorIndex {
 public:
  static constexpr double kQuantum = 1e-4;
  static constexpr double kRelTol = 1e-9;
  static constexpr std::size_t kMaxProbeBits = 12;

  /// Returns the id of a stored vector equal to x within tolerance.
  std::optional<std::size_t> find(const Eigen::VectorXd& x) const {
    const double tol = tolerance(x);
    const auto key = key_of(x);
    std::vector<std::pair<int, int>> ambiguous;  // coordinate, direction of the other bucket
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double offset = x[i] / kQuantum - static_cast<double>(key[i]);  // in [-0.5, 0.5]
      if ((0.5 - std::abs(offset)) * kQuantum < tol) ambiguous.emplace_back(static_cast<int>(i), offset < 0 ? -1 : 1);
    }
    if (ambiguous.size() > kMaxProbeBits) return linear_find(x, tol);
    for (std::size_t mask = 0; mask < (std::size_t{1} << ambiguous.size()); ++mask) {
      auto probe = key;
      for (std::size_t b = 0; b < ambiguous.size(); ++b)
        if (mask & (std::size_t{1} << b)) probe[ambiguous[b].first] += ambiguous[b].second;
      auto it = buckets_.find(probe);
      if (it == buckets_.end()) continue;
      for (std::size_t id : it->second)
        if ((vectors_[id] - x).cwiseAbs().maxCoeff() <= tol) return id;
    }
    return std::nullopt;
  }

  /// Inserts x unless an equal vector is present; returns (id, inserted).
  std::pair<std::size_t, bool> insert(const Eigen::VectorXd& x) {
    if (auto id = find(x)) return {*id, false};
    const std::size_t id = vectors_.size();
    vectors_.push_back(x);
    buckets_[key_of(x)].push_back(id);
    return {id, true};
  }

  std::size_t size() const { return vectors_.size(); }
  const Eigen::VectorXd& operator[](std::size_t id) const { return vectors_[id]; }

 private:
  static double tolerance(const Eigen::VectorXd& x) {
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    return std::min(kRelTol * scale, kQuantum / 10);
  }

  static std::vector<std::int64_t> key_of(const Eigen::VectorXd& x) {
    std::vector<std::int64_t> key(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) key[i] = std::llround(x[i] / kQuantum);
    return key;
  }

  std::optional<std::size_t> linear_find(const Eigen::VectorXd& x, double tol) const {
    for (std::size_t id = 0; id < vectors_.size(); ++id)
      if ((vectors_[id] - x).cwiseAbs().maxCoeff() <= tol) return id;
    return std::nullopt;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const {
      std::uint64_t h = 1469598103934665603ull;
      for (auto v : k) h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  std::vector<Eigen::VectorXd> vectors_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash> buckets_;
};

}  // namespace coxpack::detail
