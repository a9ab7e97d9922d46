#include "treepin/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treepin {

namespace {
constexpr double kPivotEps = 1e-12;
}

CoveringLpSolution solve_covering_lp(const std::vector<double>& cost, const std::vector<std::vector<double>>& rows,
                                     const std::vector<double>& rhs) {
    const std::size_t n = cost.size();  // primal variables = dual constraints
    const std::size_t k = rows.size();  // primal constraints = dual variables
    if (rhs.size() != k) throw std::invalid_argument("rhs size does not match the constraint count");
    for (double c : cost)
        if (c < 0.0) throw std::invalid_argument("covering LP requires nonnegative costs");
    for (const auto& r : rows)
        if (r.size() != n) throw std::invalid_argument("constraint row has the wrong width");

    // Dual tableau: n rows, columns [y_0..y_{k-1} | s_0..s_{n-1} | rhs].
    const std::size_t width = k + n + 1;
    std::vector<std::vector<double>> t(n, std::vector<double>(width, 0.0));
    std::vector<std::size_t> basis(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < k; ++c) t[i][c] = rows[c][i];
        t[i][k + i] = 1.0;
        t[i][width - 1] = cost[i];
        basis[i] = k + i;
    }
    std::vector<double> obj(width, 0.0);
    for (std::size_t c = 0; c < k; ++c) obj[c] = rhs[c];

    for (;;) {
        std::size_t enter = width;
        for (std::size_t c = 0; c + 1 < width; ++c)
            if (obj[c] > kPivotEps) {
                enter = c;
                break;
            }
        if (enter == width) break;

        std::size_t leave = n;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i][enter] <= kPivotEps) continue;
            const double ratio = t[i][width - 1] / t[i][enter];
            if (leave == n || ratio < best - kPivotEps ||
                (std::abs(ratio - best) <= kPivotEps && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == n) throw std::domain_error("covering LP is infeasible (dual unbounded)");

        auto& prow = t[leave];
        const double pivot = prow[enter];
        for (double& x : prow) x /= pivot;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == leave || t[i][enter] == 0.0) continue;
            const double f = t[i][enter];
            for (std::size_t c = 0; c < width; ++c) t[i][c] -= f * prow[c];
        }
        const double f = obj[enter];
        for (std::size_t c = 0; c < width; ++c) obj[c] -= f * prow[c];
        basis[leave] = enter;
    }

    CoveringLpSolution sol;
    sol.value = -obj[width - 1];
    sol.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.x[i] = std::max(0.0, -obj[k + i]);
    return sol;
}

}  // namespace treepin
