#include "csa/density_evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace csa {

DeResult de_recursion(const DegreeDistribution& dist, double load,
                      std::size_t max_iters, double tol) {
  if (!(load > 0.0)) throw std::invalid_argument("de_recursion: load must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("de_recursion: tol must be positive");

  std::vector<std::pair<int, double>> lambda;
  for (const auto& [d, l] : dist.edge_perspective()) lambda.emplace_back(d, l);
  const double gd = load * dist.mean_degree();

  double p = 1.0;
  std::size_t iters = 0;
  while (iters < max_iters) {
    ++iters;
    const double q = 1.0 - std::exp(-gd * p);
    double next = 0.0;
    double power = 1.0;  // q^(d-1), exponents visited in ascending order
    int exponent = 0;
    for (const auto& [d, l] : lambda) {
      while (exponent < d - 1) {
        power *= q;
        ++exponent;
      }
      next += l * power;
    }
    const double step = std::abs(next - p);
    p = next;
    if (p < tol) return {p, iters, true};
    if (step < 1e-15) return {p, iters, false};  // pinned at a positive fixed point
  }
  return {p, iters, false};
}

double threshold(const DegreeDistribution& dist, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("threshold: tol must be positive");
  if (de_recursion(dist, 1.0).converged) return 1.0;
  double lo = 0.0;  // the recursion trivially converges as load -> 0
  double hi = 1.0;
  for (int depth = 0; depth < 40 && hi - lo > tol; ++depth) {
    const double mid = 0.5 * (lo + hi);
    if (de_recursion(dist, mid).converged)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double bound_root(double rate) {
  if (!(rate > 0.0) || !(rate < 1.0))
    throw std::domain_error("bound_root: rate must be in (0,1)");
  // f(G) = G - 1 + exp(-G/rate); f(0+) < 0, f(1) = exp(-1/rate) > 0, and f
  // crosses zero once on (0,1).
  auto f = [rate](double g) { return g - 1.0 + std::exp(-g / rate); };
  double lo = 1e-12;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace csa
