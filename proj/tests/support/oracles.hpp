#pragma once

// Brute-force reference implementations used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "probekit/tree.hpp"

namespace fixture {

/// Enumerates every root-to-token path and returns the longest, counted in
/// non-leaf nodes.
inline int depth_by_paths(const probekit::ParseTree& root) {
  std::vector<std::vector<const probekit::ParseTree*>> paths;
  std::function<void(const probekit::ParseTree&, std::vector<const probekit::ParseTree*>)> walk =
      [&](const probekit::ParseTree& t, std::vector<const probekit::ParseTree*> path) {
        if (t.is_leaf()) {
          paths.push_back(path);
          return;
        }
        path.push_back(&t);
        for (const auto& c : t.children) walk(c, path);
      };
  walk(root, {});
  std::size_t best = 0;
  for (const auto& p : paths) best = std::max(best, p.size());
  return static_cast<int>(best);
}

/// Ranks by sorting with tie averaging, then the textbook Pearson formula.
inline double spearman_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j < idx.size() && v[idx[j]] == v[idx[i]]) ++j;
      for (std::size_t k = i; k < j; ++k) r[idx[k]] = static_cast<double>(i + j - 1) / 2.0 + 1.0;
      i = j;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace fixture
