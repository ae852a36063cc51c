#include "platonic/pins.hpp"

#include <map>
#include <utility>

namespace platonic {

Eigen::MatrixXcd pin_matrix(const SpectralPoint& p, std::span<const Pin> pins,
                            const TruncationPolicy& policy) {
  const auto n = static_cast<Eigen::Index>(pins.size());
  Eigen::MatrixXcd m(n, n);
  // Identical separations recur (every diagonal entry, mirrored pairs); each
  // distinct one is evaluated once.
  std::map<std::pair<double, double>, cplx> cache;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double dx = (pins[r].x - pins[c].x) * p.d;
      const double dy = std::abs(pins[r].y - pins[c].y) * p.d;
      const auto key = std::make_pair(dx, dy);
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, greens(p, dx, dy, policy).value).first;
      }
      m(r, c) = it->second;
    }
  }
  return m;
}

}  // namespace platonic
