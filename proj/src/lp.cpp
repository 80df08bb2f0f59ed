#include "hcont/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hcont::lp {

namespace {

constexpr double kPivotEps = 1e-12;

struct AffineParametrization {
    std::vector<double> origin;             // particular solution
    std::vector<std::vector<double>> basis; // null-space directions
};

/// Solution set of the equalities as origin + span(basis), or nullopt when
/// the equalities are inconsistent.
std::optional<AffineParametrization> solveEqualities(std::size_t n, const std::vector<Constraint>& eqs, double tol) {
    const std::size_t m = eqs.size();
    std::vector<std::vector<double>> a(m);
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = eqs[i].a;
        rhs[i] = eqs[i].b;
    }
    std::vector<std::size_t> pivotCol;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t best = row;
        for (std::size_t i = row + 1; i < m; ++i)
            if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
        if (std::abs(a[best][col]) <= tol) continue;
        std::swap(a[best], a[row]);
        std::swap(rhs[best], rhs[row]);
        const double p = a[row][col];
        for (std::size_t j = 0; j < n; ++j) a[row][j] /= p;
        rhs[row] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0.0) continue;
            const double f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
            rhs[i] -= f * rhs[row];
        }
        pivotCol.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (std::abs(rhs[i]) > tol) return std::nullopt;

    AffineParametrization out;
    out.origin.assign(n, 0.0);
    for (std::size_t r = 0; r < pivotCol.size(); ++r) out.origin[pivotCol[r]] = rhs[r];
    std::vector<bool> isPivot(n, false);
    for (auto c : pivotCol) isPivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (isPivot[f]) continue;
        std::vector<double> dir(n, 0.0);
        dir[f] = 1.0;
        for (std::size_t r = 0; r < pivotCol.size(); ++r) dir[pivotCol[r]] = -a[r][f];
        out.basis.push_back(std::move(dir));
    }
    return out;
}

/// Phase-one simplex for { z free : M z >= h }. Returns a feasible z or
/// nullopt.
std::optional<std::vector<double>> phaseOne(const std::vector<std::vector<double>>& M, const std::vector<double>& h) {
    const std::size_t m = M.size();
    const std::size_t p = m ? M[0].size() : 0;
    // Columns: z+ (p), z- (p), surplus (m), artificial (m, only some used).
    const std::size_t artBase = 2 * p + m;
    const std::size_t cols = artBase + m;
    const std::size_t width = cols + 1; // last column is the right-hand side
    std::vector<double> tab(m * width, 0.0);
    std::vector<std::size_t> basis(m);
    std::vector<bool> isArtificialRow(m, false);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return tab[i * width + j]; };

    for (std::size_t i = 0; i < m; ++i) {
        const double sign = h[i] > 0.0 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < p; ++j) {
            at(i, j) = sign * M[i][j];
            at(i, p + j) = -sign * M[i][j];
        }
        at(i, 2 * p + i) = -sign;
        at(i, cols) = sign * h[i];
        if (h[i] > 0.0) {
            at(i, artBase + i) = 1.0;
            basis[i] = artBase + i;
            isArtificialRow[i] = true;
        } else {
            basis[i] = 2 * p + i;
        }
    }

    // Reduced costs for minimizing the sum of artificials.
    std::vector<double> cost(width, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (!isArtificialRow[i]) continue;
        for (std::size_t j = 0; j < width; ++j) cost[j] -= at(i, j);
    }
    for (std::size_t i = 0; i < m; ++i)
        if (isArtificialRow[i]) cost[artBase + i] = 0.0;
    std::vector<bool> usable(cols, true);
    for (std::size_t i = 0; i < m; ++i)
        if (!isArtificialRow[i]) usable[artBase + i] = false;

    const int maxPivots = 50 * static_cast<int>(cols + m) + 100;
    for (int iter = 0; iter < maxPivots; ++iter) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (usable[j] && cost[j] < -kPivotEps) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = m;
        double bestRatio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double coef = at(i, enter);
            if (coef <= kPivotEps) continue;
            const double ratio = at(i, cols) / coef;
            if (ratio < bestRatio - 1e-15 || (leave < m && std::abs(ratio - bestRatio) <= 1e-15 && basis[i] < basis[leave])) {
                bestRatio = ratio;
                leave = i;
            }
        }
        if (leave == m) break; // unbounded direction; cannot happen for phase one
        const double pv = at(leave, enter);
        for (std::size_t j = 0; j < width; ++j) at(leave, j) /= pv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            const double f = at(i, enter);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) at(i, j) -= f * at(leave, j);
        }
        const double f = cost[enter];
        for (std::size_t j = 0; j < width; ++j) cost[j] -= f * at(leave, j);
        if (basis[leave] >= artBase) usable[basis[leave]] = false;
        basis[leave] = enter;
    }

    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= artBase) infeasibility += at(i, cols);
    if (infeasibility > 1e-10) return std::nullopt;

    std::vector<double> z(p, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < p) z[basis[i]] += at(i, cols);
        else if (basis[i] < 2 * p) z[basis[i] - p] -= at(i, cols);
    }
    return z;
}

} // namespace

std::optional<std::vector<double>> findFeasiblePoint(std::size_t n, const std::vector<Constraint>& equalities,
                                                     const std::vector<Constraint>& inequalities, double tol) {
    auto param = solveEqualities(n, equalities, tol);
    if (!param) return std::nullopt;
    const std::size_t p = param->basis.size();
    std::vector<std::vector<double>> M(inequalities.size(), std::vector<double>(p, 0.0));
    std::vector<double> h(inequalities.size());
    for (std::size_t i = 0; i < inequalities.size(); ++i) {
        const auto& g = inequalities[i].a;
        h[i] = inequalities[i].b - tol - std::inner_product(g.begin(), g.end(), param->origin.begin(), 0.0);
        for (std::size_t k = 0; k < p; ++k)
            M[i][k] = std::inner_product(g.begin(), g.end(), param->basis[k].begin(), 0.0);
    }
    std::vector<double> v = param->origin;
    if (p == 0) {
        for (double hi : h)
            if (hi > 0.0) return std::nullopt;
        return v;
    }
    if (inequalities.empty()) return v;
    auto z = phaseOne(M, h);
    if (!z) return std::nullopt;
    for (std::size_t k = 0; k < p; ++k)
        for (std::size_t j = 0; j < n; ++j) v[j] += (*z)[k] * param->basis[k][j];
    return v;
}

} // namespace hcont::lp
