#pragma once

// Panel-split adaptive Gauss-Kronrod (7/15) for real or complex integrands,
// on top of Boost.Math. The range is cut into equal panels; one non-adaptive
// pass estimates the L1 norms. Each panel may err by rel_tol times the larger of
// its own L1 and the mean panel L1, so negligible tail panels are not refined
// and the total error stays below about 2 rel_tol L1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace psl2lab::quadrature {

template <class V>
struct Result {
  V value{};
  double error = 0.0;
};

template <class V, class F>
Result<V> integrate(const F& f, double a, double b, double rel_tol, std::size_t panels = 1,
                    unsigned max_depth = 6) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  Result<V> out;
  if (a == b) return out;
  panels = std::max<std::size_t>(1, panels);
  const double width = (b - a) / static_cast<double>(panels);
  const auto edge = [&](std::size_t i) { return i == panels ? b : a + width * static_cast<double>(i); };

  struct Panel {
    V value;
    double error;
    double l1;
  };
  std::vector<Panel> coarse(panels);
  double l1 = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    Panel& p = coarse[i];
    p.l1 = 0.0;
    p.error = 0.0;
    p.value = static_cast<V>(GK::integrate(f, edge(i), edge(i + 1), 0, 0.0, &p.error, &p.l1));
    l1 += p.l1;
  }

  const double mean_l1 = l1 / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const Panel& p = coarse[i];
    const double budget = rel_tol * std::max(p.l1, mean_l1);
    if (p.error <= budget || max_depth == 0) {
      out.value += p.value;
      out.error += p.error;
      continue;
    }
    // Boost splits while the error exceeds tol times the panel estimate;
    // scaling by the panel L1 turns that into the absolute budget.
    const double tol = std::max(budget / std::max(std::abs(p.value), p.l1), 4 * std::numeric_limits<double>::epsilon());
    double err = 0.0;
    out.value += static_cast<V>(GK::integrate(f, edge(i), edge(i + 1), max_depth, tol, &err));
    out.error += err;
  }
  return out;
}

}  // namespace psl2lab::quadrature
