// Asymptotic analysis of the peeling decoder: the density-evolution
// recursion, the decoding threshold it induces, and the load ceiling any
// scheme of a given rate obeys.
#pragma once

#include <cstddef>

#include "csa/degree_distribution.hpp"

namespace csa {

struct DeResult {
  double residual_p = 1.0;        // probability an edge is still unknown
  std::size_t iterations_used = 0;
  bool converged = false;         // residual fell below tol
};

// Evolution of the unresolved-edge probability at logical load `load`:
// starting from p = 1, each iteration applies
//   q = 1 - exp(-load * mean_degree * p),  p' = sum_d lambda_d q^(d-1).
// p is nonincreasing, so the run stops as soon as p < tol (converged), when
// an iteration no longer moves p (stuck at a positive fixed point), or
// after max_iters.
DeResult de_recursion(const DegreeDistribution& dist, double load,
                      std::size_t max_iters = 10000, double tol = 1e-8);

// Largest load at which the recursion converges, located by bisection on
// [0,1] to width `tol`. Returns 1 if the recursion still converges at load 1.
double threshold(const DegreeDistribution& dist, double tol = 1e-3);

// Unique positive root of G = 1 - exp(-G / rate), the asymptotic ceiling on
// the decodable load for schemes of the given rate. Bisection to 1e-10.
// Throws std::domain_error unless 0 < rate < 1.
double bound_root(double rate);

}  // namespace csa
