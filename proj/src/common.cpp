#include "expscatter/common.hpp"

#include <algorithm>
#include <cmath>

namespace expscatter {

double relative_spread(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return scale > 0.0 ? (*hi - *lo) / scale : 0.0;
}

}  // namespace expscatter
