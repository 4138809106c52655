#include "polystab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace polystab {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  if (!(lo < hi)) throw InvariantError("linspace requires lo < hi");
  std::vector<double> out(n);
  double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + h * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0) || !(lo < hi)) throw InvariantError("logspace requires 0 < lo < hi");
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  double llo = std::log(lo), lhi = std::log(hi);
  double h = (lhi - llo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(llo + h * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> merge_grids(std::initializer_list<std::vector<double>> grids) {
  std::vector<double> out;
  for (const auto& g : grids) out.insert(out.end(), g.begin(), g.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GridSpec parse_grid(const std::string& text) {
  auto c1 = text.find(':');
  auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw InvariantError("grid spec must be lo:hi:n, got '" + text + "'");
  }
  GridSpec spec;
  try {
    spec.lo = std::stod(text.substr(0, c1));
    spec.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    long n = std::stol(text.substr(c2 + 1));
    if (n < 2) throw InvariantError("grid needs at least 2 points");
    spec.n = static_cast<std::size_t>(n);
  } catch (const InvariantError&) {
    throw;
  } catch (const std::exception&) {
    throw InvariantError("grid spec must be lo:hi:n, got '" + text + "'");
  }
  if (!(spec.lo < spec.hi)) throw InvariantError("grid spec needs lo < hi");
  return spec;
}

}  // namespace polystab
