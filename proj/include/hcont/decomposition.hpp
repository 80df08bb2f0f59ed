#pragma once

#include "hcont/linalg.hpp"
#include "hcont/polynomial.hpp"
#include "hcont/solutions.hpp"
#include "hcont/tracker.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcont {

enum class Irreducibility { True, False, Unknown };

std::string_view toString(Irreducibility v);
Irreducibility irreducibilityFromString(std::string_view s);

/// Affine hyperplanes a_j . x + a_{j,n} = 0, one coefficient row each.
struct SliceSet {
    ComplexMatrix coefficients; ///< dimension x (n + 1)

    std::size_t dimension() const noexcept { return coefficients.rows(); }
    std::vector<LaurentPolynomial> polynomials(const std::vector<std::string>& variables) const;

    /// Random unit-modulus coefficients.
    static SliceSet random(std::size_t count, std::size_t variables, std::uint64_t seed);

    /// Same normal directions, constants adjusted so every hyperplane passes
    /// through x.
    SliceSet through(std::span<const Complex> x) const;
};

struct WitnessSet {
    PolySystem equations;        ///< the original k equations
    ComplexMatrix randomization; ///< (n - d) x k weights squaring up the equations
    SliceSet slices;
    std::vector<SolutionPoint> points;
    std::size_t dimension = 0;
    Irreducibility isIrreducible = Irreducibility::Unknown;

    std::size_t degree() const noexcept { return points.size(); }

    /// n - d random combinations of the equations.
    std::vector<LaurentPolynomial> squaredUp() const;

    /// Squared-up equations followed by the given slices.
    PolySystem slicedSystem(const SliceSet& s) const;
    PolySystem slicedSystem() const { return slicedSystem(slices); }

    /// Copy of this set restricted to the points with the given indices.
    WitnessSet restrictedTo(std::span<const std::size_t> indices) const;
};

struct DecompositionSettings {
    TrackerSettings tracker;
    int stableLoops = 5;
    int maxLoops = 50;
    double traceTol = 1e-6;
    double traceStep = 0.1;
    double clusterTol = kDefaultClusterTol;
    double junkResidual = 1e-6; ///< superset points must satisfy the original equations to this level
    unsigned tasks = 1;
};

struct NumericalVariety {
    std::map<std::size_t, std::vector<WitnessSet>> components; ///< by dimension

    /// (dimension, degree) pairs, highest dimension first, degrees descending.
    std::vector<std::pair<std::size_t, std::size_t>> signature() const;
};

/// Witness superset for the d-dimensional part of V(s): squares s up to n - d
/// random combinations, adds d random slices and solves with a total-degree
/// homotopy. Points not satisfying s itself are discarded. Empty when s has
/// fewer than n - d equations.
WitnessSet witnessSuperset(const PolySystem& s, std::size_t d, const DecompositionSettings& cfg, std::uint64_t seed);

/// Tracks the witness points of w from its slices to `target`.
std::vector<PathResult> moveSlices(const WitnessSet& w, const SliceSet& target, std::span<const std::vector<Complex>> starts,
                                   const DecompositionSettings& cfg, std::uint64_t seed);

/// True when x lies on the component carried by w: the slices are moved in
/// parallel through x and some witness point lands on x. Throws
/// InconclusiveError when every path fails.
bool membershipTest(std::span<const Complex> x, const WitnessSet& w, const DecompositionSettings& cfg,
                    std::uint64_t seed = 0);

/// Linear trace test on the points of w with the given indices. Throws
/// InconclusiveError when a path fails.
bool traceTest(std::span<const std::size_t> block, const WitnessSet& w, const DecompositionSettings& cfg,
               std::uint64_t seed = 0);

/// Splits a pure-dimensional witness set into irreducible pieces by
/// monodromy loops, certified by the trace test.
std::vector<WitnessSet> monodromyBreakup(const WitnessSet& w, const DecompositionSettings& cfg, std::uint64_t seed);

/// Top-down sweep over dimensions n - 1, ..., 0.
NumericalVariety numericalIrreducibleDecomposition(const PolySystem& s, const DecompositionSettings& cfg,
                                                   std::uint64_t seed);

std::string witnessSetToJson(const WitnessSet& w);
WitnessSet witnessSetFromJson(std::string_view json);
std::string numericalVarietyToJson(const NumericalVariety& v);

} // namespace hcont
