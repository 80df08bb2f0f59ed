#pragma once

#include "hcont/linalg.hpp"
#include "hcont/polynomial.hpp"
#include "hcont/solutions.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hcont {

enum class Predictor {
    Euler,   ///< first-order tangent step
    Hermite, ///< cubic Hermite extrapolation through the last two accepted points
};

struct TrackerSettings {
    double initialStep = 0.05;
    double minStep = 1e-12;
    double maxStep = 0.2;
    double correctorTol = 1e-8;
    int maxCorrectorIters = 4;
    double divergenceCutoff = 1e8;
    double endgameThreshold = 1e-6;
    std::uint64_t seed = 0;
    Predictor predictor = Predictor::Euler;
    int maxSteps = 200000;

    /// Throws Error when the step bounds or tolerances are inconsistent.
    void validate() const;
};

/// A path-tracking problem H(x, t) = 0 with known solutions at t = 0.
class HomotopyFunction {
public:
    virtual ~HomotopyFunction() = default;

    virtual std::size_t dimension() const = 0;

    /// H(x, t), with the Jacobian in x and the derivative in t.
    virtual std::vector<Complex> evaluate(std::span<const Complex> x, double t, ComplexMatrix& hx,
                                          std::vector<Complex>& ht) const = 0;
};

/// H(x, t) = (1 - t) * gamma * g(x) + t * f(x).
class Homotopy final : public HomotopyFunction {
public:
    Homotopy(PolySystem start, PolySystem target, Complex gamma);

    const PolySystem& start() const noexcept { return start_; }
    const PolySystem& target() const noexcept { return target_; }
    Complex gamma() const noexcept { return gamma_; }

    std::size_t dimension() const override { return target_.variableCount(); }
    std::vector<Complex> evaluate(std::span<const Complex> x, double t, ComplexMatrix& hx,
                                  std::vector<Complex>& ht) const override;
    std::vector<Complex> evaluate(std::span<const Complex> x, double t) const;

private:
    PolySystem start_;
    PolySystem target_;
    Complex gamma_;
};

/// Homotopy from g to f with gamma = exp(i theta), theta drawn from a
/// generator seeded with `seed`.
Homotopy makeHomotopy(PolySystem g, PolySystem f, std::uint64_t seed);

struct PathResult {
    SolutionPoint endpoint;
    int steps = 0;
    int failures = 0;
    SolutionStatus status = SolutionStatus::Failed;
};

/// Adaptive predictor-corrector tracking from t = 0 to t = 1.
///
/// Steps double after three consecutive successful corrections (up to
/// maxStep) and halve after a failed one; a step below minStep fails the
/// path, and ||x|| above divergenceCutoff marks it at infinity. Within
/// endgameThreshold of t = 1 the path is finished by Newton's method on
/// H(., 1) with tolerance correctorTol^2.
PathResult trackPath(const HomotopyFunction& h, std::span<const Complex> x0, const TrackerSettings& cfg);

/// Tracks every start point, in parallel on `tasks` threads. Results are
/// returned in start-point order.
std::vector<PathResult> trackPaths(const HomotopyFunction& h, std::span<const std::vector<Complex>> starts,
                                   const TrackerSettings& cfg, unsigned tasks);

struct StartSystem {
    PolySystem system;
    std::vector<std::vector<Complex>> roots;
};

/// g_i = x_i^{d_i} - 1 with d_i the total degree of f_i, and all prod d_i
/// tuples of roots of unity. Negative exponents are cleared first.
StartSystem totalDegreeStart(const PolySystem& s);

} // namespace hcont
