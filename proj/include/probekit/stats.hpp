#pragma once

#include <span>
#include <vector>

namespace probekit {

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation. Throws DimensionError on length mismatch or when
/// either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Tie-aware Spearman: Pearson correlation of average ranks. Requires at
/// least three paired values.
double spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace probekit
