#pragma once

#include "hcont/polynomial.hpp"
#include "hcont/solutions.hpp"
#include "hcont/tracker.hpp"

#include <cstdint>
#include <vector>

namespace hcont {

enum class StartKind {
    Automatic,   ///< polyhedral when every polynomial has at least two terms
    Polyhedral,
    TotalDegree,
};

struct SolveSettings {
    TrackerSettings tracker;
    StartKind start = StartKind::Automatic;
    double clusterTol = kDefaultClusterTol;
    unsigned tasks = 1;
};

struct SolveReport {
    std::vector<SolutionPoint> solutions; ///< finite, deduplicated, by increasing residual
    std::vector<SolutionPoint> endpoints; ///< every tracked endpoint, in path order
    StartKind startUsed = StartKind::Automatic;
    std::uint64_t paths = 0;
    std::uint64_t finite = 0;
    std::uint64_t atInfinity = 0;
    std::uint64_t failed = 0;
};

/// Blackbox solver for square systems. Throws NeedsDecompositionError when
/// s is not square and InconsistentSystemError when an equation is a
/// nonzero constant.
SolveReport solveSystemDetailed(const PolySystem& s, const SolveSettings& cfg);

std::vector<SolutionPoint> solveSystem(const PolySystem& s, const SolveSettings& cfg);

} // namespace hcont
