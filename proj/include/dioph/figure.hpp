#pragma once

#include <sstream>
#include <stdexcept>
#include <vector>

#include "dioph/point.hpp"

namespace dioph {

// A planar Diophantine figure: pairwise-distinct lattice points whose
// pairwise distances are all integral. Construction validates both
// invariants and caches the distance matrix.
class Figure2 {
 public:
  explicit Figure2(std::vector<LatticePoint2> pts) : points_(std::move(pts)) {
    const std::size_t n = points_.size();
    dist_.assign(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (points_[i] == points_[j]) {
          std::ostringstream os;
          os << "figure points " << i << " and " << j << " coincide";
          throw std::invalid_argument(os.str());
        }
        auto d = integral_distance2(points_[i], points_[j]);
        if (!d) {
          std::ostringstream os;
          os << "distance between figure points " << i << " and " << j << " is not integral";
          throw std::invalid_argument(os.str());
        }
        dist_[i][j] = dist_[j][i] = *d;
      }
    }
  }

  const std::vector<LatticePoint2>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const BigInt& dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }

  bool contains(const LatticePoint2& p) const {
    for (const auto& q : points_)
      if (q == p) return true;
    return false;
  }

 private:
  std::vector<LatticePoint2> points_;
  std::vector<std::vector<BigInt>> dist_;
};

}  // namespace dioph
