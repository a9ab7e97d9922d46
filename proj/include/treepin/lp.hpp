#pragma once

#include <vector>

namespace treepin {

struct CoveringLpSolution {
    double value = 0.0;
    std::vector<double> x;
};

/// Solves   minimize cost . x   subject to   rows * x >= rhs,  x >= 0
/// for cost >= 0. The dual packing LP (maximize rhs . y, rows^T y <= cost,
/// y >= 0) has the origin as a feasible basis, so a single-phase tableau
/// simplex with Bland's rule applies; x is read off the final reduced costs
/// of the dual slack columns.
///
/// Throws std::invalid_argument on negative costs or shape mismatch and
/// std::domain_error when the covering LP is infeasible.
CoveringLpSolution solve_covering_lp(const std::vector<double>& cost, const std::vector<std::vector<double>>& rows,
                                     const std::vector<double>& rhs);

}  // namespace treepin
