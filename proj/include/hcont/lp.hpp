#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace hcont::lp {

/// Linear constraint a . v (= or >=) b over free real variables v.
struct Constraint {
    std::vector<double> a;
    double b = 0.0;
};

/// Finds v with  eq_k . v = b_k  and  ineq_k . v >= b_k - tol  for all k,
/// or returns nullopt when no such v exists. Equalities are eliminated by
/// Gaussian elimination; the remaining inequality system is decided by a
/// phase-one simplex with Bland's rule.
std::optional<std::vector<double>> findFeasiblePoint(std::size_t dimension, const std::vector<Constraint>& equalities,
                                                     const std::vector<Constraint>& inequalities, double tol = 1e-9);

} // namespace hcont::lp
