#include "hcont/polyhedral.hpp"

#include "hcont/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hcont {

namespace {

using Int128 = __int128;

Int128 mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw HermiteOverflowError("Hermite normal form overflows 128-bit integers");
    return r;
}

Int128 add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw HermiteOverflowError("Hermite normal form overflows 128-bit integers");
    return r;
}

Int128 floorDiv(Int128 a, Int128 b) {
    Int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// g = s a + t b with g = gcd(a, b) >= 0.
void extendedGcd(Int128 a, Int128 b, Int128& g, Int128& s, Int128& t) {
    Int128 oldR = a, r = b, oldS = 1, sNew = 0, oldT = 0, tNew = 1;
    while (r != 0) {
        const Int128 q = oldR / r;
        Int128 tmp = oldR - q * r;
        oldR = r;
        r = tmp;
        tmp = oldS - mul(q, sNew);
        oldS = sNew;
        sNew = tmp;
        tmp = oldT - mul(q, tNew);
        oldT = tNew;
        tNew = tmp;
    }
    if (oldR < 0) {
        oldR = -oldR;
        oldS = -oldS;
        oldT = -oldT;
    }
    g = oldR;
    s = oldS;
    t = oldT;
}

using Rows = std::vector<std::vector<Int128>>;

/// row_i <- alpha row_i + beta row_j
void combine(std::vector<Int128>& target, Int128 alpha, const std::vector<Int128>& other, Int128 beta) {
    for (std::size_t k = 0; k < target.size(); ++k) target[k] = add(mul(alpha, target[k]), mul(beta, other[k]));
}

std::int64_t narrow(Int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw HermiteOverflowError("Hermite normal form entry exceeds 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

/// H(y, t) = sum_a c_a y^a t^{e_a} for one mixed cell.
class CellHomotopy final : public HomotopyFunction {
public:
    struct CellTerm {
        Complex coefficient;
        std::vector<std::pair<std::size_t, int>> exponents; // sparse
        double power = 0.0;
    };

    explicit CellHomotopy(std::vector<std::vector<CellTerm>> equations) : equations_(std::move(equations)) {}

    std::size_t dimension() const override { return equations_.size(); }

    std::vector<Complex> evaluate(std::span<const Complex> x, double t, ComplexMatrix& hx,
                                  std::vector<Complex>& ht) const override {
        const std::size_t n = equations_.size();
        hx = ComplexMatrix(n, n);
        ht.assign(n, Complex(0.0));
        std::vector<Complex> h(n, Complex(0.0));
        std::vector<Complex> powers;
        for (std::size_t i = 0; i < n; ++i) {
            for (const CellTerm& term : equations_[i]) {
                const double tp = term.power == 0.0 ? 1.0 : std::pow(t, term.power);
                const double dtp = term.power == 0.0 ? 0.0 : term.power * std::pow(t, term.power - 1.0);
                if (tp == 0.0 && dtp == 0.0) continue;
                powers.clear();
                Complex mono = 1.0;
                for (const auto& [k, e] : term.exponents) {
                    powers.push_back(detail::power(x[k], e));
                    mono *= powers.back();
                }
                h[i] += term.coefficient * mono * tp;
                ht[i] += term.coefficient * mono * dtp;
                if (tp == 0.0) continue;
                for (std::size_t a = 0; a < term.exponents.size(); ++a) {
                    const auto [k, e] = term.exponents[a];
                    Complex d = term.coefficient * tp * static_cast<double>(e) * detail::power(x[k], e - 1);
                    for (std::size_t b = 0; b < term.exponents.size(); ++b)
                        if (b != a) d *= powers[b];
                    hx(i, k) += d;
                }
            }
        }
        return h;
    }

private:
    std::vector<std::vector<CellTerm>> equations_;
};

/// A few Newton steps on x^{A_i} - c_i to clean up rounding from the
/// logarithmic back substitution.
void polishBinomialRoot(const BinomialSystem& b, std::vector<Complex>& x) {
    const std::size_t n = x.size();
    for (int iter = 0; iter < 3; ++iter) {
        ComplexMatrix jac(n, n);
        std::vector<Complex> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            Complex mono = 1.0;
            for (std::size_t k = 0; k < n; ++k) mono *= detail::power(x[k], static_cast<int>(b.exponentMatrix[i][k]));
            rhs[i] = b.rightHandSide[i] - mono;
            for (std::size_t k = 0; k < n; ++k)
                jac(i, k) = static_cast<double>(b.exponentMatrix[i][k]) * mono / x[k];
        }
        try {
            const auto dx = LuFactorization<Complex>(std::move(jac)).solve(rhs);
            for (std::size_t k = 0; k < n; ++k) x[k] += dx[k];
            if (normInf(dx) <= 1e-15 * std::max(1.0, normInf(x))) return;
        } catch (const SingularMatrixError&) {
            return;
        }
    }
}

} // namespace

HermiteForm hermiteForm(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t n = a.size();
    Rows h(n, std::vector<Int128>(n));
    Rows u(n, std::vector<Int128>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw Error("exponent matrix must be square");
        for (std::size_t j = 0; j < n; ++j) h[i][j] = a[i][j];
        u[i][i] = 1;
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = j + 1; i < n; ++i) {
            if (h[i][j] == 0) continue;
            Int128 g, s, t;
            extendedGcd(h[j][j], h[i][j], g, s, t);
            const Int128 p = h[j][j] / g;
            const Int128 q = h[i][j] / g;
            // [row_j; row_i] <- [s t; -q p] [row_j; row_i], a unimodular step.
            std::vector<Int128> hj = h[j];
            std::vector<Int128> uj = u[j];
            combine(h[j], s, h[i], t);
            combine(u[j], s, u[i], t);
            combine(h[i], p, hj, -q);
            combine(u[i], p, uj, -q);
        }
        if (h[j][j] == 0) throw Error("exponent matrix is singular");
        if (h[j][j] < 0) {
            for (auto& v : h[j]) v = -v;
            for (auto& v : u[j]) v = -v;
        }
        for (std::size_t i = 0; i < j; ++i) {
            const Int128 f = floorDiv(h[i][j], h[j][j]);
            if (f != 0) {
                combine(h[i], 1, h[j], -f);
                combine(u[i], 1, u[j], -f);
            }
        }
    }
    HermiteForm out;
    out.h.assign(n, std::vector<std::int64_t>(n));
    out.u.assign(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.h[i][j] = narrow(h[i][j]);
            out.u[i][j] = narrow(u[i][j]);
        }
    }
    return out;
}

std::vector<std::vector<Complex>> solveBinomialSystem(const BinomialSystem& b) {
    const std::size_t n = b.exponentMatrix.size();
    if (b.rightHandSide.size() != n) throw Error("binomial system: right-hand side has wrong length");
    for (const auto& c : b.rightHandSide)
        if (c == Complex(0.0)) throw Error("binomial system: zero right-hand side has no toric solution");
    const HermiteForm hf = hermiteForm(b.exponentMatrix);

    std::vector<Complex> logC(n);
    for (std::size_t j = 0; j < n; ++j) logC[j] = std::log(b.rightHandSide[j]);
    std::vector<Complex> rhs(n, Complex(0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rhs[i] += static_cast<double>(hf.u[i][j]) * logC[j];

    std::vector<std::vector<Complex>> out;
    std::vector<Complex> y(n);
    const Complex twoPiI(0.0, 2.0 * std::numbers::pi);
    // Depth-first over the branches k_i = 0 .. H_ii - 1, last row first.
    auto recurse = [&](auto&& self, std::size_t row) -> void {
        if (row == 0) {
            std::vector<Complex> x(n);
            for (std::size_t k = 0; k < n; ++k) x[k] = std::exp(y[k]);
            polishBinomialRoot(b, x);
            out.push_back(std::move(x));
            return;
        }
        const std::size_t i = row - 1;
        Complex base = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) base -= static_cast<double>(hf.h[i][j]) * y[j];
        const auto d = hf.h[i][i];
        for (std::int64_t k = 0; k < d; ++k) {
            y[i] = (base + static_cast<double>(k) * twoPiI) / static_cast<double>(d);
            self(self, row - 1);
        }
    };
    recurse(recurse, n);
    return out;
}

PolyhedralRun polyhedralTrack(const PolySystem& s, const TrackerSettings& cfg, unsigned tasks, std::uint64_t seed) {
    if (!s.isSquare()) throw Error("polyhedral homotopy needs a square system");
    cfg.validate();
    const std::size_t n = s.variableCount();
    Rng rng(seed);
    const std::uint64_t liftSeed = rng.split();
    Rng coefficientRng(rng.split());
    const std::uint64_t gammaSeed = rng.split();

    PolyhedralRun run;
    const auto supports = extractSupports(s);
    run.subdivision = enumerateMixedCells(supports, liftSeed);

    // Random system with the same supports and unit-modulus coefficients.
    std::vector<std::vector<Complex>> coefficients(n);
    std::vector<LaurentPolynomial> polys;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Term> terms;
        for (const auto& p : supports[i].points) {
            coefficients[i].push_back(coefficientRng.unitComplex());
            terms.push_back({Coefficient(coefficients[i].back()), p});
        }
        polys.emplace_back(s.variables(), std::move(terms));
    }
    run.randomSystem = PolySystem(s.variables(), std::move(polys));

    TrackerSettings first = cfg;
    first.initialStep = cfg.minStep;

    for (std::size_t c = 0; c < run.subdivision.cells.size(); ++c) {
        const MixedCell& cell = run.subdivision.cells[c];
        BinomialSystem binomial;
        std::vector<std::vector<CellHomotopy::CellTerm>> equations(n);
        double minExcess = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& pts = supports[i].points;
            const auto& lifts = run.subdivision.supports[i].lifts;
            const auto [ea, eb] = cell.edges[i];
            std::vector<std::int64_t> row(n);
            for (std::size_t k = 0; k < n; ++k) row[k] = pts[eb][k] - pts[ea][k];
            binomial.exponentMatrix.push_back(std::move(row));
            binomial.rightHandSide.push_back(-coefficients[i][ea] / coefficients[i][eb]);

            double beta = lifts[ea];
            for (std::size_t k = 0; k < n; ++k) beta += cell.innerNormal[k] * pts[ea][k];
            for (std::size_t p = 0; p < pts.size(); ++p) {
                CellHomotopy::CellTerm term;
                term.coefficient = coefficients[i][p];
                for (std::size_t k = 0; k < n; ++k)
                    if (pts[p][k] != 0) term.exponents.emplace_back(k, pts[p][k]);
                if (p != ea && p != eb) {
                    double e = lifts[p] - beta;
                    for (std::size_t k = 0; k < n; ++k) e += cell.innerNormal[k] * pts[p][k];
                    term.power = std::max(e, 1e-9);
                    minExcess = std::min(minExcess, term.power);
                }
                equations[i].push_back(std::move(term));
            }
        }
        if (std::isfinite(minExcess)) {
            for (auto& eq : equations)
                for (auto& term : eq) term.power /= minExcess;
        }
        const auto starts = solveBinomialSystem(binomial);
        const CellHomotopy homotopy(std::move(equations));
        auto paths = trackPaths(homotopy, starts, first, tasks);
        for (auto& p : paths) {
            run.cellPaths.push_back(std::move(p));
            run.pathCell.push_back(c);
        }
    }

    std::vector<std::vector<Complex>> secondStarts;
    std::vector<std::size_t> secondIndex;
    for (std::size_t k = 0; k < run.cellPaths.size(); ++k) {
        if (run.cellPaths[k].endpoint.isFinite()) {
            secondStarts.push_back(run.cellPaths[k].endpoint.coordinates);
            secondIndex.push_back(k);
        }
    }
    const Homotopy linear = makeHomotopy(run.randomSystem, s, gammaSeed);
    auto second = trackPaths(linear, secondStarts, cfg, tasks);

    run.paths.resize(run.cellPaths.size());
    for (std::size_t k = 0; k < run.cellPaths.size(); ++k) {
        run.paths[k] = run.cellPaths[k];
        run.paths[k].status = SolutionStatus::Failed;
        run.paths[k].endpoint.status = SolutionStatus::Failed;
        run.paths[k].endpoint.t = 0.0;
    }
    for (std::size_t k = 0; k < secondIndex.size(); ++k) run.paths[secondIndex[k]] = std::move(second[k]);
    return run;
}

std::vector<SolutionPoint> polyhedralSolve(const PolySystem& s, const TrackerSettings& cfg, std::uint64_t seed,
                                           unsigned tasks) {
    auto run = polyhedralTrack(s, cfg, tasks, seed);
    std::vector<SolutionPoint> out;
    out.reserve(run.paths.size());
    for (auto& p : run.paths) out.push_back(std::move(p.endpoint));
    return out;
}

} // namespace hcont
