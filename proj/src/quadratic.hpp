#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace depletion::detail {

// Real roots of a x^2 + b x + c = 0, ascending. Cancellation-free form; a
// vanishing leading coefficient degrades to the linear root.
inline std::vector<double> real_roots(double a, double b, double c) {
  std::vector<double> roots;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    // Treat a slightly negative discriminant as a double root.
    if (disc < -1e-12 * b * b || a == 0.0) return roots;
    roots.push_back(-b / (2.0 * a));
    return roots;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    if (a != 0.0) roots.push_back(0.0);
    return roots;
  }
  for (double x : {q / a, c / q}) {
    if (std::isfinite(x)) roots.push_back(x);
  }
  if (roots.size() == 2 && roots[0] > roots[1]) std::swap(roots[0], roots[1]);
  return roots;
}

}  // namespace depletion::detail
