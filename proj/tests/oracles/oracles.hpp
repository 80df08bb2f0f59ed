#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library under test except for plain evaluation of polynomials.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = std::vector<std::vector<Complex>>;

// ---------------------------------------------------------------------------
// Finite differences

/// Central differences of a vector function in every complex coordinate
/// direction. For holomorphic f the derivative along the real axis equals
/// the complex derivative.
inline CMatrix centralDifferenceJacobian(const std::function<std::vector<Complex>(const std::vector<Complex>&)>& f,
                                         const std::vector<Complex>& x, double h) {
    const std::size_t n = x.size();
    const std::size_t m = f(x).size();
    CMatrix jac(m, std::vector<Complex>(n));
    for (std::size_t j = 0; j < n; ++j) {
        auto plus = x;
        auto minus = x;
        plus[j] += h;
        minus[j] -= h;
        const auto fp = f(plus);
        const auto fm = f(minus);
        for (std::size_t i = 0; i < m; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    return jac;
}

// ---------------------------------------------------------------------------
// Dense inverse by Gauss-Jordan with full pivoting

inline CMatrix explicitInverse(CMatrix a) {
    const std::size_t n = a.size();
    CMatrix inv(n, std::vector<Complex>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    std::vector<std::size_t> colPerm(n);
    std::iota(colPerm.begin(), colPerm.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::abs(a[i][j]) > std::abs(a[pr][pc])) {
                    pr = i;
                    pc = j;
                }
        std::swap(a[k], a[pr]);
        std::swap(inv[k], inv[pr]);
        if (pc != k) {
            for (auto& row : a) std::swap(row[k], row[pc]);
            std::swap(colPerm[k], colPerm[pc]);
        }
        const Complex p = a[k][k];
        for (std::size_t j = 0; j < n; ++j) {
            a[k][j] /= p;
            inv[k][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const Complex f = a[i][k];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    // Undo the column permutation: row colPerm[k] of the inverse is row k.
    CMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) out[colPerm[k]] = inv[k];
    return out;
}

inline double normInf(const CMatrix& a) {
    double best = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (const auto& v : row) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

/// 1 / (||A||_inf ||A^-1||_inf)
inline double inverseCondition(const CMatrix& a) { return 1.0 / (normInf(a) * normInf(explicitInverse(a))); }

// ---------------------------------------------------------------------------
// Convex hull volumes of integer point sets in dimension 1, 2, 3

using Point = std::vector<long>;

inline std::vector<Point> distinct(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline double hullLength(const std::vector<Point>& pts) {
    long lo = pts.front()[0], hi = lo;
    for (const auto& p : pts) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
    }
    return static_cast<double>(hi - lo);
}

/// Andrew's monotone chain followed by the shoelace formula.
inline double hullArea(std::vector<Point> pts) {
    pts = distinct(std::move(pts));
    if (pts.size() < 3) return 0.0;
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    long twice = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return std::abs(static_cast<double>(twice)) / 2.0;
}

/// Brute force: every plane through three points that has all points on one
/// side carries a facet; each facet polygon is fanned from the centroid of
/// its vertices and coned to the centroid of the whole set.
inline double hullVolume3(std::vector<Point> pts) {
    pts = distinct(std::move(pts));
    const std::size_t m = pts.size();
    if (m < 4) return 0.0;
    using V = std::array<long, 3>;
    auto sub = [](const Point& a, const Point& b) { return V{a[0] - b[0], a[1] - b[1], a[2] - b[2]}; };
    auto crossV = [](const V& a, const V& b) {
        return V{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    };
    auto dot = [](const V& a, const V& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };

    std::array<double, 3> center{0, 0, 0};
    for (const auto& p : pts)
        for (int k = 0; k < 3; ++k) center[k] += static_cast<double>(p[k]) / static_cast<double>(m);

    std::set<std::array<long, 4>> seen;
    double volume = 0.0;
    bool flat = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                V normal = crossV(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if (normal == V{0, 0, 0}) continue;
                bool pos = false, neg = false;
                for (std::size_t q = 0; q < m && !(pos && neg); ++q) {
                    const long s = dot(normal, sub(pts[q], pts[i]));
                    if (s > 0) pos = true;
                    if (s < 0) neg = true;
                }
                if (pos && neg) continue;
                if (!pos && !neg) continue; // all coplanar
                flat = false;
                if (pos) normal = V{-normal[0], -normal[1], -normal[2]}; // outward
                long g = std::gcd(std::gcd(std::abs(normal[0]), std::abs(normal[1])), std::abs(normal[2]));
                V unit{normal[0] / g, normal[1] / g, normal[2] / g};
                const long offset = dot(unit, V{pts[i][0], pts[i][1], pts[i][2]});
                if (!seen.insert({unit[0], unit[1], unit[2], offset}).second) continue;

                std::vector<std::size_t> face;
                for (std::size_t q = 0; q < m; ++q)
                    if (dot(unit, V{pts[q][0], pts[q][1], pts[q][2]}) == offset) face.push_back(q);
                // Face points in integer plane coordinates; keep only the
                // vertices of their 2-D hull, in counterclockwise order.
                const V e1 = sub(pts[face[1]], pts[face[0]]);
                const V e2 = crossV(unit, e1);
                std::vector<std::pair<std::array<long, 2>, std::size_t>> planar;
                for (auto q : face) {
                    const V d = sub(pts[q], pts[face[0]]);
                    planar.push_back({{dot(d, e1), dot(d, e2)}, q});
                }
                std::sort(planar.begin(), planar.end());
                auto turn = [](const auto& o, const auto& a, const auto& b) {
                    return (a.first[0] - o.first[0]) * (b.first[1] - o.first[1]) -
                           (a.first[1] - o.first[1]) * (b.first[0] - o.first[0]);
                };
                std::vector<std::pair<std::array<long, 2>, std::size_t>> ring(2 * planar.size());
                std::size_t h = 0;
                for (std::size_t a = 0; a < planar.size(); ++a) {
                    while (h >= 2 && turn(ring[h - 2], ring[h - 1], planar[a]) <= 0) --h;
                    ring[h++] = planar[a];
                }
                for (std::size_t a = planar.size() - 1, lower = h + 1; a-- > 0;) {
                    while (h >= lower && turn(ring[h - 2], ring[h - 1], planar[a]) <= 0) --h;
                    ring[h++] = planar[a];
                }
                ring.resize(h - 1);
                std::vector<std::pair<double, std::size_t>> order;
                for (const auto& r : ring) order.emplace_back(0.0, r.second);
                std::array<double, 3> fc{0, 0, 0};
                for (const auto& o : order)
                    for (int c = 0; c < 3; ++c) fc[c] += static_cast<double>(pts[o.second][c]) / static_cast<double>(order.size());
                for (std::size_t a = 0; a < order.size(); ++a) {
                    const auto& p = pts[order[a].second];
                    const auto& r = pts[order[(a + 1) % order.size()].second];
                    const double u[3] = {p[0] - center[0], p[1] - center[1], p[2] - center[2]};
                    const double v[3] = {r[0] - center[0], r[1] - center[1], r[2] - center[2]};
                    const double w[3] = {fc[0] - center[0], fc[1] - center[1], fc[2] - center[2]};
                    const double det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                                       u[2] * (v[0] * w[1] - v[1] * w[0]);
                    volume += std::abs(det) / 6.0;
                }
            }
        }
    }
    return flat ? 0.0 : volume;
}

inline double hullVolume(const std::vector<Point>& pts, std::size_t n) {
    if (n == 1) return hullLength(pts);
    if (n == 2) return hullArea(pts);
    return hullVolume3(pts);
}

inline std::vector<Point> minkowskiSum(const std::vector<Point>& a, const std::vector<Point>& b) {
    std::vector<Point> out;
    for (const auto& p : a)
        for (const auto& q : b) {
            Point r(p.size());
            for (std::size_t k = 0; k < p.size(); ++k) r[k] = p[k] + q[k];
            out.push_back(std::move(r));
        }
    return distinct(std::move(out));
}

/// MV = sum over nonempty S of (-1)^(n - |S|) Vol_n(sum_{i in S} conv A_i).
inline long inclusionExclusionMixedVolume(const std::vector<std::vector<Point>>& supports) {
    const std::size_t n = supports.size();
    double total = 0.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Point> sum{Point(n, 0)};
        int size = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            sum = minkowskiSum(sum, supports[i]);
            ++size;
        }
        const double sign = ((n - size) % 2 == 0) ? 1.0 : -1.0;
        total += sign * hullVolume(sum, n);
    }
    return std::lround(total);
}

// ---------------------------------------------------------------------------
// Decimal expansion of the square root of two (first 100 digits after the point)

inline const std::string kSqrt2 =
    "1.4142135623730950488016887242096980785696718753769480731766797379907324784621070388503875343276415727";

} // namespace oracle
