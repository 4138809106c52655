#pragma once

#include <string>
#include <vector>

#include "polystab/types.hpp"

namespace polystab {

std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Log-uniform grid; requires 0 < lo < hi.
std::vector<double> logspace(double lo, double hi, std::size_t n);

/// Sorted union of several grids with duplicates removed.
std::vector<double> merge_grids(std::initializer_list<std::vector<double>> grids);

struct GridSpec {
  double lo = 0;
  double hi = 0;
  std::size_t n = 0;
};

/// Parses the CLI grid syntax "lo:hi:n".
GridSpec parse_grid(const std::string& text);

}  // namespace polystab
