#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "treepin/lp.hpp"

using namespace treepin;

namespace {

using Matrix = std::vector<std::vector<double>>;

// Solves a square system by Gaussian elimination; false if singular.
bool solve_square(Matrix a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-10) return false;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return true;
}

// Vertex enumeration: every basic solution from n tight constraints.
double brute_covering_lp(const std::vector<double>& cost, const Matrix& rows, const std::vector<double>& rhs) {
    const std::size_t n = cost.size();
    Matrix all = rows;
    std::vector<double> all_rhs = rhs;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> unit(n, 0.0);
        unit[i] = 1.0;
        all.push_back(unit);
        all_rhs.push_back(0.0);
    }
    const std::size_t total = all.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick(n);
    auto feasible = [&](const std::vector<double>& x) {
        for (std::size_t r = 0; r < total; ++r) {
            double lhs = 0.0;
            for (std::size_t i = 0; i < n; ++i) lhs += all[r][i] * x[i];
            if (lhs < all_rhs[r] - 1e-9) return false;
        }
        return true;
    };
    for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
        Matrix a;
        std::vector<double> b;
        for (std::size_t r = 0; r < total; ++r)
            if (mask & (1u << r)) {
                a.push_back(all[r]);
                b.push_back(all_rhs[r]);
            }
        std::vector<double> x;
        if (!solve_square(a, b, x) || !feasible(x)) continue;
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += cost[i] * x[i];
        best = std::min(best, v);
    }
    return best;
}

}  // namespace

TEST_CASE("covering LP: hand-solved instances") {
    // min x + y, x + y >= 1, x >= 0.3 -> 1
    auto s = solve_covering_lp({1, 1}, {{1, 1}, {1, 0}}, {1, 0.3});
    CHECK(s.value == doctest::Approx(1.0));
    CHECK(s.x[0] >= 0.3 - 1e-12);
    CHECK(s.x[0] + s.x[1] >= 1.0 - 1e-12);

    // min 2x + 3y, x + 2y >= 4, 3x + y >= 3 -> vertex (0.4, 1.8), value 6.2
    s = solve_covering_lp({2, 3}, {{1, 2}, {3, 1}}, {4, 3});
    CHECK(s.value == doctest::Approx(6.2));
    CHECK(s.x[0] == doctest::Approx(0.4));
    CHECK(s.x[1] == doctest::Approx(1.8));

    // All right-hand sides nonpositive: optimum at the origin.
    s = solve_covering_lp({1, 1, 1}, {{1, 0, 0}, {0, 1, 1}}, {0, -1});
    CHECK(s.value == doctest::Approx(0.0));
}

TEST_CASE("covering LP: argument checks") {
    CHECK_THROWS_AS(solve_covering_lp({-1}, {{1}}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(solve_covering_lp({1, 1}, {{1}}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(solve_covering_lp({1}, {{1}}, {1, 2}), std::invalid_argument);
    // x >= 0 cannot satisfy -x >= 1.
    CHECK_THROWS_AS(solve_covering_lp({1}, {{-1}}, {1}), std::domain_error);
}

TEST_CASE("covering LP agrees with vertex enumeration on random 0/1 instances") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const std::size_t k = 1 + trial % 5;
        std::vector<double> cost(n);
        for (auto& c : cost) c = 0.1 + u(rng);
        Matrix rows(k, std::vector<double>(n));
        std::vector<double> rhs(k);
        for (std::size_t r = 0; r < k; ++r) {
            bool any = false;
            for (auto& x : rows[r]) any |= (x = static_cast<double>(rng() % 2)) > 0;
            if (!any) rows[r][rng() % n] = 1.0;
            rhs[r] = u(rng);
        }
        const auto s = solve_covering_lp(cost, rows, rhs);
        CHECK(s.value == doctest::Approx(brute_covering_lp(cost, rows, rhs)).epsilon(1e-9));
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(s.x[i] >= -1e-9);
            v += cost[i] * s.x[i];
        }
        CHECK(v == doctest::Approx(s.value).epsilon(1e-9));
        for (std::size_t r = 0; r < k; ++r) {
            double lhs = 0.0;
            for (std::size_t i = 0; i < n; ++i) lhs += rows[r][i] * s.x[i];
            CHECK(lhs >= rhs[r] - 1e-9);
        }
    }
}
