#include "hcont/solver.hpp"

#include "hcont/polyhedral.hpp"

#include <algorithm>

namespace hcont {

namespace {

void checkSolvable(const PolySystem& s) {
    if (!s.isSquare()) {
        throw NeedsDecompositionError("system has " + std::to_string(s.size()) + " equations in " +
                                      std::to_string(s.variableCount()) +
                                      " unknowns; use the numerical irreducible decomposition");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].isZero()) throw InconsistentSystemError("equation " + std::to_string(i + 1) + " is identically zero");
        if (s[i].isConstant()) throw InconsistentSystemError("equation " + std::to_string(i + 1) + " is a nonzero constant");
    }
}

} // namespace

SolveReport solveSystemDetailed(const PolySystem& s, const SolveSettings& cfg) {
    checkSolvable(s);
    cfg.tracker.validate();
    SolveReport report;
    StartKind kind = cfg.start;
    if (kind == StartKind::Automatic) {
        const bool allBinomialOrMore =
            std::all_of(s.polynomials().begin(), s.polynomials().end(), [](const auto& p) { return p.termCount() >= 2; });
        kind = allBinomialOrMore ? StartKind::Polyhedral : StartKind::TotalDegree;
    }
    report.startUsed = kind;

    if (kind == StartKind::Polyhedral) {
        report.endpoints = polyhedralSolve(s, cfg.tracker, cfg.tracker.seed, cfg.tasks);
    } else {
        // Roots of the cleared system are the toric roots of s; nontoric
        // endpoints are kept since s itself may be a polynomial system.
        const PolySystem cleared = clearNegativeExponents(s);
        const StartSystem start = totalDegreeStart(cleared);
        const Homotopy h = makeHomotopy(start.system, cleared, cfg.tracker.seed);
        for (auto& r : trackPaths(h, start.roots, cfg.tracker, cfg.tasks)) report.endpoints.push_back(std::move(r.endpoint));
    }

    std::vector<SolutionPoint> finite;
    for (const auto& p : report.endpoints) {
        switch (p.status) {
        case SolutionStatus::Regular:
        case SolutionStatus::Singular: ++report.finite; finite.push_back(p); break;
        case SolutionStatus::AtInfinity: ++report.atInfinity; break;
        case SolutionStatus::Failed: ++report.failed; break;
        }
    }
    report.paths = report.endpoints.size();

    // Residuals against s itself (the endpoint residual refers to the homotopy).
    for (auto& p : finite) {
        try {
            p.res = normInf(s.evaluate<Complex>(p.coordinates));
        } catch (const EvaluationError&) {
            p.status = SolutionStatus::Failed;
        }
    }
    std::erase_if(finite, [](const SolutionPoint& p) { return !p.isFinite(); });
    report.solutions = deduplicate(finite, cfg.clusterTol);
    std::stable_sort(report.solutions.begin(), report.solutions.end(),
                     [](const SolutionPoint& a, const SolutionPoint& b) { return a.res < b.res; });
    return report;
}

std::vector<SolutionPoint> solveSystem(const PolySystem& s, const SolveSettings& cfg) {
    return solveSystemDetailed(s, cfg).solutions;
}

} // namespace hcont
