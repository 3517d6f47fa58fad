#include "treecount/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "treecount/errors.hpp"

namespace treecount {

namespace {

// Kronrod nodes on [-1, 1] (positive half, descending) and weights; the Gauss
// 7-point rule uses the odd-indexed nodes.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b, value, error;
};

bool by_error(const Panel& x, const Panel& y) { return x.error < y.error; }

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  double error = std::abs(kronrod - gauss);
  if (!std::isfinite(kronrod)) throw QuadratureBudgetExceeded("integrand is not finite on the panel");
  // Roundoff floor: the estimate cannot drop below the precision of the sum.
  error = std::max(error, 10 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
  return Panel{a, b, kronrod, error};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, std::span<const double> breakpoints,
                                    const QuadratureOptions& options) {
  if (breakpoints.size() < 2) throw InvalidInput("quadrature needs at least two breakpoints");
  std::vector<Panel> heap;
  heap.reserve(breakpoints.size() * 4);
  QuadratureResult result;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      if (breakpoints[i] == breakpoints[i + 1]) continue;
      throw InvalidInput("quadrature breakpoints must increase");
    }
    heap.push_back(gauss_kronrod(f, breakpoints[i], breakpoints[i + 1]));
    result.evaluations += 15;
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto totals = [&] {
    double v = 0, e = 0;
    for (const Panel& p : heap) {
      v += p.value;
      e += p.error;
    }
    return std::pair(v, e);
  };

  auto [value, error] = totals();
  std::size_t since_resum = 0;
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
    if (result.evaluations + 30 > options.max_evaluations || heap.empty()) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // Panel cannot be split further in double precision.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    result.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    if (++since_resum == 256) {
      std::tie(value, error) = totals();
      since_resum = 0;
    }
  }
  std::tie(value, error) = totals();
  result.value = value;
  result.error = error;
  result.converged = error <= std::max(options.abs_tol, options.rel_tol * std::abs(value));
  return result;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options) {
  const double points[2] = {a, b};
  return integrate_adaptive(f, points, options);
}

}  // namespace treecount
