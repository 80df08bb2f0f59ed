#include "hcont/tracker.hpp"

#include "hcont/parallel.hpp"
#include "hcont/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace hcont {

void TrackerSettings::validate() const {
    if (!(minStep > 0.0 && minStep <= initialStep && initialStep <= maxStep && maxStep < 1.0)) {
        throw Error("tracker settings need 0 < minStep <= initialStep <= maxStep < 1");
    }
    if (!(correctorTol > 0.0)) throw Error("corrector tolerance must be positive");
    if (maxCorrectorIters < 1) throw Error("at least one corrector iteration is required");
    if (!(divergenceCutoff > 0.0)) throw Error("divergence cutoff must be positive");
    if (!(endgameThreshold >= 0.0 && endgameThreshold < 1.0)) throw Error("endgame threshold must lie in [0, 1)");
}

Homotopy::Homotopy(PolySystem start, PolySystem target, Complex gamma)
    : start_(std::move(start)), target_(std::move(target)), gamma_(gamma) {
    if (start_.variableCount() != target_.variableCount() || start_.size() != target_.size()) {
        throw Error("start and target systems have different shapes");
    }
    if (std::abs(std::abs(gamma_) - 1.0) > 1e-12) throw Error("gamma must have unit magnitude");
}

std::vector<Complex> Homotopy::evaluate(std::span<const Complex> x, double t, ComplexMatrix& hx,
                                        std::vector<Complex>& ht) const {
    ComplexMatrix jg;
    ComplexMatrix jf;
    const std::vector<Complex> g = start_.evaluate(x, jg);
    const std::vector<Complex> f = target_.evaluate(x, jf);
    const Complex a = (1.0 - t) * gamma_;
    const std::size_t rows = f.size();
    const std::size_t n = x.size();
    hx = ComplexMatrix(rows, n);
    ht.resize(rows);
    std::vector<Complex> h(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        h[i] = a * g[i] + t * f[i];
        ht[i] = f[i] - gamma_ * g[i];
        for (std::size_t j = 0; j < n; ++j) hx(i, j) = a * jg(i, j) + t * jf(i, j);
    }
    return h;
}

std::vector<Complex> Homotopy::evaluate(std::span<const Complex> x, double t) const {
    const std::vector<Complex> g = start_.evaluate(x);
    const std::vector<Complex> f = target_.evaluate(x);
    std::vector<Complex> h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) h[i] = (1.0 - t) * gamma_ * g[i] + t * f[i];
    return h;
}

Homotopy makeHomotopy(PolySystem g, PolySystem f, std::uint64_t seed) {
    Rng rng(seed);
    return Homotopy(std::move(g), std::move(f), rng.unitComplex());
}

namespace {

double scaleOf(std::span<const Complex> x) { return std::max(1.0, normInf(x)); }

/// Newton direction -Hx^-1 H at (x, t); nullopt when Hx is singular or H
/// cannot be evaluated.
struct NewtonStep {
    std::vector<Complex> dx;
    double rco = 0.0;
};

std::optional<NewtonStep> newtonStep(const HomotopyFunction& h, std::span<const Complex> x, double t,
                                     bool wantCondition = false) {
    try {
        ComplexMatrix hx;
        std::vector<Complex> ht;
        std::vector<Complex> value = h.evaluate(x, t, hx, ht);
        for (auto& v : value) v = -v;
        LuFactorization<Complex> lu(std::move(hx));
        NewtonStep step{lu.solve(value), 0.0};
        if (wantCondition) step.rco = lu.inverseConditionEstimate();
        for (const auto& v : step.dx)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
        return step;
    } catch (const SingularMatrixError&) {
        return std::nullopt;
    } catch (const EvaluationError&) {
        return std::nullopt;
    }
}

/// dx/dt along the path: Hx v = -Ht.
std::optional<std::vector<Complex>> tangent(const HomotopyFunction& h, std::span<const Complex> x, double t) {
    try {
        ComplexMatrix hx;
        std::vector<Complex> ht;
        h.evaluate(x, t, hx, ht);
        for (auto& v : ht) v = -v;
        std::vector<Complex> v = LuFactorization<Complex>(std::move(hx)).solve(ht);
        for (const auto& c : v)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return std::nullopt;
        return v;
    } catch (const SingularMatrixError&) {
        return std::nullopt;
    } catch (const EvaluationError&) {
        return std::nullopt;
    }
}

/// Newton corrector at fixed t. Fails unless the updates contract and the
/// last one drops below tol relative to the coordinate scale.
bool correct(const HomotopyFunction& h, std::vector<Complex>& x, double t, double tol, int maxIters) {
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 0; k < maxIters; ++k) {
        auto step = newtonStep(h, x, t);
        if (!step) return false;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += step->dx[i];
        const double norm = normInf(step->dx);
        if (norm <= tol * scaleOf(x)) return true;
        if (k > 0 && norm > 0.5 * previous) return false;
        previous = norm;
    }
    return false;
}

std::vector<Complex> hermiteExtrapolate(double t0, std::span<const Complex> x0, std::span<const Complex> v0, double t1,
                                        std::span<const Complex> x1, std::span<const Complex> v1, double t) {
    const double len = t1 - t0;
    const double s = (t - t0) / len;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    std::vector<Complex> out(x0.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = h00 * x0[i] + h10 * len * v0[i] + h01 * x1[i] + h11 * len * v1[i];
    }
    return out;
}

void finishEndpoint(const HomotopyFunction& h, PathResult& r, std::vector<Complex> x, double t, double err,
                    SolutionStatus status) {
    SolutionPoint& p = r.endpoint;
    p.t = t;
    p.err = err;
    p.status = status;
    p.res = std::numeric_limits<double>::infinity();
    p.rco = 0.0;
    try {
        ComplexMatrix hx;
        std::vector<Complex> ht;
        p.res = normInf(h.evaluate(x, t, hx, ht));
        try {
            p.rco = LuFactorization<Complex>(std::move(hx)).inverseConditionEstimate();
        } catch (const SingularMatrixError&) {
            p.rco = 0.0;
        }
    } catch (const EvaluationError&) {
        p.status = SolutionStatus::Failed;
    }
    if (p.status == SolutionStatus::Regular && p.rco < kSingularThreshold) p.status = SolutionStatus::Singular;
    p.coordinates = std::move(x);
    r.status = p.status;
}

/// Paths that cannot be finished while already far out, or while still
/// growing over the last stretch (from t = 1 - 1e-3 on), are taken to diverge.
SolutionStatus unfinished(std::span<const Complex> x, const TrackerSettings& cfg, std::optional<double> lateNorm) {
    const double norm = normInf(x);
    if (norm > std::sqrt(cfg.divergenceCutoff)) return SolutionStatus::AtInfinity;
    if (lateNorm && norm > 2.0 * std::max(1.0, *lateNorm)) return SolutionStatus::AtInfinity;
    return SolutionStatus::Failed;
}

} // namespace

PathResult trackPath(const HomotopyFunction& h, std::span<const Complex> x0, const TrackerSettings& cfg) {
    cfg.validate();
    PathResult result;
    std::vector<Complex> x(x0.begin(), x0.end());
    if (x.size() != h.dimension()) throw Error("trackPath: start point has wrong dimension");

    double t = 0.0;
    double step = cfg.initialStep;
    int streak = 0;
    auto v = tangent(h, x, t);
    if (!v) {
        finishEndpoint(h, result, x, t, 0.0, SolutionStatus::Failed);
        return result;
    }
    std::optional<double> tPrev;
    std::vector<Complex> xPrev;
    std::vector<Complex> vPrev;
    std::optional<double> lateNorm;

    while (t < 1.0 - cfg.endgameThreshold || t == 0.0) {
        if (result.steps + result.failures >= cfg.maxSteps) {
            finishEndpoint(h, result, x, t, 0.0, SolutionStatus::Failed);
            return result;
        }
        const double t1 = std::min(1.0, t + step);
        const double dt = t1 - t;
        std::vector<Complex> predicted;
        if (cfg.predictor == Predictor::Hermite && tPrev) {
            predicted = hermiteExtrapolate(*tPrev, xPrev, vPrev, t, x, *v, t1);
        } else {
            predicted.resize(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) predicted[i] = x[i] + dt * (*v)[i];
        }

        bool ok = correct(h, predicted, t1, cfg.correctorTol, cfg.maxCorrectorIters);
        std::optional<std::vector<Complex>> v1;
        if (ok) {
            v1 = tangent(h, predicted, t1);
            ok = v1.has_value();
        }
        if (ok) {
            tPrev = t;
            xPrev = std::move(x);
            vPrev = std::move(*v);
            x = std::move(predicted);
            v = std::move(v1);
            t = t1;
            ++result.steps;
            if (++streak >= 3) {
                step = std::min(2.0 * step, cfg.maxStep);
                streak = 0;
            }
            if (normInf(x) > cfg.divergenceCutoff) {
                finishEndpoint(h, result, x, t, 0.0, SolutionStatus::AtInfinity);
                return result;
            }
            if (!lateNorm && t >= 1.0 - 1e-3) lateNorm = normInf(x);
            if (t >= 1.0) break;
        } else {
            ++result.failures;
            streak = 0;
            step *= 0.5;
            if (step < cfg.minStep) {
                finishEndpoint(h, result, x, t, 0.0, unfinished(x, cfg, lateNorm));
                return result;
            }
        }
    }

    // Endgame: Newton on H(., 1) with the squared tolerance.
    const std::vector<Complex> arrival = x;
    const double tight = cfg.correctorTol * cfg.correctorTol;
    std::vector<Complex> best = x;
    double bestNorm = std::numeric_limits<double>::infinity();
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2 * cfg.maxCorrectorIters + 4; ++k) {
        auto nstep = newtonStep(h, x, 1.0);
        if (!nstep) break;
        const double norm = normInf(nstep->dx);
        if (norm > previous) break;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += nstep->dx[i];
        previous = norm;
        if (norm < bestNorm) {
            bestNorm = norm;
            best = x;
        }
        if (norm <= tight * scaleOf(x)) break;
    }
    const double start = scaleOf(x);
    if (normInf(best) > cfg.divergenceCutoff) {
        finishEndpoint(h, result, best, 1.0, bestNorm, SolutionStatus::AtInfinity);
    } else if (bestNorm <= cfg.correctorTol * std::max(start, scaleOf(best))) {
        finishEndpoint(h, result, best, 1.0, bestNorm, SolutionStatus::Regular);
    } else {
        finishEndpoint(h, result, best, 1.0, bestNorm, unfinished(arrival, cfg, lateNorm));
    }
    return result;
}

std::vector<PathResult> trackPaths(const HomotopyFunction& h, std::span<const std::vector<Complex>> starts,
                                   const TrackerSettings& cfg, unsigned tasks) {
    std::vector<PathResult> results(starts.size());
    parallelFor(starts.size(), tasks, [&](std::size_t i) { results[i] = trackPath(h, starts[i], cfg); });
    return results;
}

StartSystem totalDegreeStart(const PolySystem& s) {
    if (!s.isSquare()) throw Error("total-degree start system needs a square system");
    const PolySystem cleared = clearNegativeExponents(s);
    const std::size_t n = s.variableCount();
    std::vector<int> degrees(n);
    std::vector<LaurentPolynomial> polys;
    for (std::size_t i = 0; i < n; ++i) {
        degrees[i] = cleared[i].degree();
        if (degrees[i] <= 0) throw InconsistentSystemError("equation " + std::to_string(i) + " is constant");
        ExponentVector e(n, 0);
        e[i] = degrees[i];
        std::vector<Term> terms;
        terms.push_back({Coefficient(ExactComplex{Rational(1), Rational(0)}), e});
        terms.push_back({Coefficient(ExactComplex{Rational(-1), Rational(0)}), ExponentVector(n, 0)});
        polys.emplace_back(s.variables(), std::move(terms));
    }
    StartSystem out{PolySystem(s.variables(), std::move(polys)), {}};
    const std::uint64_t count = totalDegreeProduct(cleared);
    out.roots.reserve(count);
    std::vector<int> index(n, 0);
    for (std::uint64_t r = 0; r < count; ++r) {
        std::vector<Complex> root(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = 2.0 * std::numbers::pi * index[i] / degrees[i];
            root[i] = {std::cos(angle), std::sin(angle)};
        }
        out.roots.push_back(std::move(root));
        for (std::size_t i = n; i-- > 0;) {
            if (++index[i] < degrees[i]) break;
            index[i] = 0;
        }
    }
    return out;
}

} // namespace hcont
